"""Small exact-matrix helpers over the rationals and over Weil algebras.

Matrices are immutable tuples of row tuples.  The generic arithmetic works
for any entries supporting ``+``/``*`` (Fractions or WeilElements); the
inverse over a Weil algebra uses the finite geometric series of the
nilpotent part around the rational scalar matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .weil import InfinitesimalDomain, Rational, WeilElement

Matrix = tuple[tuple, ...]


class SingularMatrixError(ValueError):
    """The scalar part of a matrix is not invertible."""


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    k = len(rows)
    out = tuple(tuple(row) for row in rows)
    if any(len(row) != k for row in out):
        raise ValueError("matrix must be square")
    return out


def identity(k: int, domain: InfinitesimalDomain) -> Matrix:
    one, zero = WeilElement.one(domain), WeilElement.zero(domain)
    return tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))


def q_identity(k: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


def lift(m: Matrix, domain: InfinitesimalDomain) -> Matrix:
    return tuple(tuple(WeilElement.scalar(domain, c) for c in row) for row in m)


def scalar_part(m: Matrix) -> Matrix:
    return tuple(tuple(c.scalar_part for c in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    k = len(a)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def q_inverse(m: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse of a rational matrix."""
    k = len(m)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if work[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular over the rationals")
        work[col], work[pivot] = work[pivot], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(k):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[k:]) for row in work)


def q_is_invertible(m: Matrix) -> bool:
    try:
        q_inverse(m)
        return True
    except SingularMatrixError:
        return False


def w_inverse(a: Matrix, domain: InfinitesimalDomain) -> Matrix:
    """Inverse of a Weil-algebra matrix with invertible scalar part.

    With a = m0 + nilpotent, a^-1 = (sum_k (-m0^-1 n)^k) m0^-1, and the sum
    is finite because the domain is nilpotent.
    """
    m0_inv = lift(q_inverse(scalar_part(a)), domain)
    nil = sub(a, lift(scalar_part(a), domain))
    k = len(a)
    acc = identity(k, domain)
    c = neg(mul(m0_inv, nil))
    power = c
    while not is_zero(power):
        acc = add(acc, power)
        power = mul(c, power)
    return mul(acc, m0_inv)


def rational_rows(m: Matrix) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def q_from_ints(rows: Sequence[Sequence[Rational]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)
