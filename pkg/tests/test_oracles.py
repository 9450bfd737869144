import random
from fractions import Fraction

import pytest

from microlie import matrices
from microlie.oracles import PolyVectorField, classical_vf_bracket, matrix_table_bracket
from microlie.poly import rational_poly
from microlie.vfexpr import parse_vector_field
from microlie.weil import InfinitesimalDomain, generators


def vf(text, dim):
    return PolyVectorField(parse_vector_field(text, dim))


class TestClassicalBracket:
    def test_constant_and_shear(self):
        assert classical_vf_bracket(vf("1; 0", 2), vf("0; x0", 2)) == vf("0; 1", 2)

    def test_self_bracket(self):
        xi = vf("x0^2*x1; x1 - x0", 2)
        assert classical_vf_bracket(xi, xi) == PolyVectorField.zero(2)

    def test_one_dimensional(self):
        # [x0, x0^2] = x0 * 2 x0 - x0^2 * 1 = x0^2
        assert classical_vf_bracket(vf("x0", 1), vf("x0^2", 1)) == vf("x0^2", 1)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            classical_vf_bracket(vf("x0", 1), vf("x0; x1", 2))


class TestMatrixTableBracket:
    def test_elementary_matrices(self):
        a = (((0, 1), (0, 0)),)
        b = (((0, 0), (1, 0)),)
        expected = (((Fraction(-1), Fraction(0)), (Fraction(0), Fraction(1))),)
        assert matrix_table_bracket(a, b) == expected

    def test_equal_tables(self):
        a = (((1, 2), (3, 4)), ((0, 1), (1, 0)))
        result = matrix_table_bracket(a, a)
        assert all(matrices.is_zero(t) for t in result)

    def test_commuting_diagonals(self):
        a = (((2, 0), (0, 3)),)
        b = (((5, 0), (0, 7)),)
        assert all(matrices.is_zero(t) for t in matrix_table_bracket(a, b))


def random_fields(rng, dim, degree=2):
    exps = [e for e in _exponents(dim, degree)]
    comps = []
    for _ in range(dim):
        comps.append(rational_poly(dim, {e: rng.randint(-3, 3) for e in exps}))
    return PolyVectorField(comps)


def _exponents(nvars, degree):
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(degree + 1)]
    return [e for e in out if sum(e) <= degree]


def test_classical_oracle_self_consistency():
    rng = random.Random(2)
    for _ in range(5):
        x, y, z = (random_fields(rng, 2) for _ in range(3))
        br = classical_vf_bracket
        assert br(x, y).components == tuple(-c for c in br(y, x).components)
        total = tuple(
            a + b + c
            for a, b, c in zip(
                br(x, br(y, z)).components,
                br(y, br(z, x)).components,
                br(z, br(x, y)).components,
            )
        )
        assert all(not t for t in total)


def test_matrix_oracle_self_consistency():
    rng = random.Random(3)
    for _ in range(5):
        tabs = [
            tuple(
                tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2))
                for _ in range(2)
            )
            for _ in range(3)
        ]
        x, y, z = tabs
        br = matrix_table_bracket
        assert br(x, y) == tuple(matrices.neg(t) for t in br(y, x))
        total = tuple(
            matrices.add(matrices.add(a, b), c)
            for a, b, c in zip(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y)))
        )
        assert all(matrices.is_zero(t) for t in total)


def test_table_sign_matches_commutator_word():
    """Re-derive the table bracket's sign from the four-flow word over D^2."""
    D2 = InfinitesimalDomain.power(2)
    d1, d2 = generators(D2)
    rng = random.Random(5)
    for _ in range(5):
        a = matrices.lift(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)), D2)
        b = matrices.lift(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)), D2)
        ident = matrices.identity(2, D2)
        word = matrices.mul(
            matrices.mul(
                matrices.sub(ident, matrices.scale(d2, b)),
                matrices.sub(ident, matrices.scale(d1, a)),
            ),
            matrices.mul(
                matrices.add(ident, matrices.scale(d2, b)),
                matrices.add(ident, matrices.scale(d1, a)),
            ),
        )
        top = tuple(tuple(w.coefficient({1, 2}) for w in row) for row in word)
        a0 = matrices.scalar_part(a)
        b0 = matrices.scalar_part(b)
        assert top == matrices.sub(matrices.mul(b0, a0), matrices.mul(a0, b0))
