"""The Lie algebra on sections of the Lie algebroid of a groupoid.

The bracket of two sections X, Y is carried by the commutator microsquare

    lambda(d1, d2) = Y_{-d2} * X_{-d1} * Y_{d2} * X_{d1}

which restricts to the identity on both axes, so its whole content is the
``d1*d2`` coefficient; extracting that coefficient and re-reading it as
section data realizes [X, Y].  The same extraction pattern yields the Lie
derivative and the pushforward.  A second, independent route to the
bracket goes through microcubes built from flow products and the
strong-difference calculus of :mod:`microlie.spaces`.

Sign conventions follow the commutator word above: on the pair groupoid
the bracket agrees with the classical vector-field bracket
``(D eta) xi - (D xi) eta``; on the gauge groupoid it is the reversed
matrix commutator ``x -> Y(x) X(x) - X(x) Y(x)``.  Both are pinned by the
degeneration oracles, not chosen here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .groupoids import (
    AGSection,
    GroupoidMismatchError,
    PairGroupoid,
    SectionChart,
    WBisection,
    WSection,
    invert_bisection,
    section_at,
    ag_from_flow,
    star,
    star_word,
)
from .poly import Poly, RATIONALS
from .spaces import (
    InternalInvariantError,
    Tangent,
    strong_difference,
)
from .weil import InfinitesimalDomain, Rational, WeilElement

LINE = InfinitesimalDomain.line()
D2 = InfinitesimalDomain.power(2)
D3 = InfinitesimalDomain.power(3)
WITNESS_DOMAIN = InfinitesimalDomain(3, [(1, 3), (2, 3)])


class AxisCheckError(InternalInvariantError):
    """A microsquare that must restrict to the identity on the axes does not."""


# -- module structure ---------------------------------------------------------------


def add_sections(x: AGSection, y: AGSection) -> AGSection:
    """Data-level sum; flows multiply: (X+Y)_d = X_d * Y_d."""
    return x + y


def scale_section(a: Rational, x: AGSection) -> AGSection:
    """Data-level scaling; flows reparametrize: (aX)_d = X_{a d}."""
    return x.scaled(a)


# -- the commutator microsquare and the bracket ----------------------------------------


@dataclass(frozen=True)
class CommutatorSquare:
    """The microsquare Y_{-d2} * X_{-d1} * Y_{d2} * X_{d1} with its generators."""

    square: WBisection
    x: AGSection
    y: AGSection


def _check_axes(section: WSection, label: str) -> None:
    """Verify a D^2-parametrized section restricts to the identity on both axes."""
    d = WeilElement.generator(LINE, 1)
    zero = WeilElement.zero(LINE)
    ident = WSection.identity(section.groupoid, LINE)
    if section.substitute(LINE, [d, zero]) != ident:
        raise AxisCheckError(f"{label}(d, 0) is not the identity section")
    if section.substitute(LINE, [zero, d]) != ident:
        raise AxisCheckError(f"{label}(0, d) is not the identity section")


def commutator_square(x: AGSection, y: AGSection) -> CommutatorSquare:
    if x.groupoid != y.groupoid:
        raise GroupoidMismatchError("sections of different groupoids")
    d1 = WeilElement.generator(D2, 1)
    d2 = WeilElement.generator(D2, 2)
    word = star_word(
        section_at(y, -d2),
        section_at(x, -d1),
        section_at(y, d2),
        section_at(x, d1),
    )
    _check_axes(word, "commutator square")
    return CommutatorSquare(word, x, y)


def _extract_top_coefficient(section: WSection) -> AGSection:
    """Read the d1*d2 coefficient of a D^2 section as Lie algebroid data."""
    groupoid = section.groupoid
    top = frozenset({1, 2})
    if isinstance(groupoid, PairGroupoid):
        fields = tuple(
            Poly(groupoid.dim, RATIONALS, {e: c.coefficient(top) for e, c in comp.terms.items()})
            for comp in section.data
        )
        return AGSection(groupoid, fields)
    tables = tuple(
        tuple(tuple(w.coefficient(top) for w in row) for row in t) for t in section.data[1]
    )
    return AGSection(groupoid, tables)


def bracket(x: AGSection, y: AGSection) -> AGSection:
    """The Lie bracket, read off the commutator microsquare."""
    return _extract_top_coefficient(commutator_square(x, y).square)


# -- pushforward and Lie derivative ------------------------------------------------------


def pushforward(sigma: WSection, x: AGSection) -> AGSection:
    """Conjugate the flow: d -> sigma * X_d * sigma^-1, re-read as section data."""
    if sigma.groupoid != x.groupoid:
        raise GroupoidMismatchError("bisection and section of different groupoids")
    if not sigma.is_scalar_exact:
        raise ValueError("pushforward needs a scalar-exact bisection (no infinitesimal part)")
    lifted = sigma.map_coefficients(lambda w: WeilElement.scalar(LINE, w.scalar_part), LINE)
    sigma_line = lifted if isinstance(lifted, WBisection) else WBisection(lifted.groupoid, LINE, lifted.data)
    flow = section_at(x, WeilElement.generator(LINE, 1))
    conjugated = star_word(sigma_line, flow, invert_bisection(sigma_line))
    return ag_from_flow(conjugated)


def lie_derivative(x: AGSection, y: AGSection) -> AGSection:
    """L_X Y via the flow difference ((X_{-d})* Y - Y)_{d'} over D^2.

    Tangent difference is realized as (A - B)_d = A_d * B_{-d}; both axes
    of the resulting microsquare vanish and the d*d' coefficient is the
    derivative.
    """
    if x.groupoid != y.groupoid:
        raise GroupoidMismatchError("sections of different groupoids")
    d = WeilElement.generator(D2, 1)
    dp = WeilElement.generator(D2, 2)
    word = star_word(
        section_at(x, -d),
        section_at(y, dp),
        section_at(x, d),
        section_at(y, -dp),
    )
    _check_axes(word, "Lie derivative square")
    return _extract_top_coefficient(word)


# -- flow microcubes -----------------------------------------------------------------------


def circledast(sections: Sequence[AGSection]) -> WBisection:
    """The flow cube (d1..dn) -> (Xn)_{dn} * ... * (X1)_{d1}.

    ``sections[i]`` couples to generator ``i+1``; the last section is the
    outermost factor.  Up to four factors are supported.
    """
    n = len(sections)
    if not 1 <= n <= 4:
        raise ValueError("flow cubes support 1 to 4 sections")
    groupoid = sections[0].groupoid
    if any(s.groupoid != groupoid for s in sections):
        raise GroupoidMismatchError("sections of different groupoids")
    domain = InfinitesimalDomain.power(n)
    factors = [section_at(s, WeilElement.generator(domain, i + 1)) for i, s in enumerate(sections)]
    return star_word(*reversed(factors))


class SixMicrocubes(NamedTuple):
    """The six permuted flow cubes of three sections, indexed as g_abc."""

    g123: WBisection
    g132: WBisection
    g213: WBisection
    g231: WBisection
    g312: WBisection
    g321: WBisection


def six_microcubes(x: AGSection, y: AGSection, z: AGSection) -> SixMicrocubes:
    """Build the six cubes by permuting flow cubes of X, Y, Z.

    Equivalently g_abc(d1,d2,d3) = V_c * V_b * V_a with V1 = X_{d1},
    V2 = Y_{d2}, V3 = Z_{d3}.
    """
    return SixMicrocubes(
        g123=circledast([x, y, z]),
        g132=circledast([x, z, y]).permute_generators((1, 3, 2)),
        g213=circledast([y, x, z]).permute_generators((2, 1, 3)),
        g231=circledast([y, z, x]).permute_generators((2, 3, 1)),
        g312=circledast([z, x, y]).permute_generators((3, 1, 2)),
        g321=circledast([z, y, x]).permute_generators((3, 2, 1)),
    )


def section_as_tangent(x: AGSection, chart: SectionChart) -> Tangent:
    """The tangent at the identity represented by a section's flow, in chart coordinates."""
    return Tangent(chart.to_point(section_at(x, WeilElement.generator(LINE, 1))))


# -- the strong-difference route to the bracket ----------------------------------------------


def bracket_via_strong_difference(x: AGSection, y: AGSection) -> AGSection:
    """[X, Y] as the strong difference of Y (*) X and the swapped X (*) Y cube."""
    if x.groupoid != y.groupoid:
        raise GroupoidMismatchError("sections of different groupoids")
    plus = circledast([x, y])  # (d1, d2) -> Y_{d2} * X_{d1}
    minus = circledast([y, x]).permute_generators((2, 1))  # (d1, d2) -> X_{d1} * Y_{d2}
    chart = SectionChart.for_sections(plus, minus)
    t = strong_difference(chart.to_point(plus), chart.to_point(minus))
    direction_point = t.point
    return ag_from_flow(chart.to_section(direction_point))


def lambda_witness(x: AGSection, y: AGSection) -> WBisection:
    """The witness X_{d1} * [X,Y]_{d3} * Y_{d2} on the cube domain with d1*d3 = d2*d3 = 0.

    Verifies by generator substitution that setting d3 = 0 gives
    X_{d1} * Y_{d2}, that setting d3 = d1*d2 gives Y_{d2} * X_{d1}, and
    that freezing d1 = d2 = 0 recovers the bracket flow.
    """
    if x.groupoid != y.groupoid:
        raise GroupoidMismatchError("sections of different groupoids")
    b = bracket(x, y)
    d1 = WeilElement.generator(WITNESS_DOMAIN, 1)
    d2 = WeilElement.generator(WITNESS_DOMAIN, 2)
    d3 = WeilElement.generator(WITNESS_DOMAIN, 3)
    witness = star_word(section_at(x, d1), section_at(b, d3), section_at(y, d2))

    e1 = WeilElement.generator(D2, 1)
    e2 = WeilElement.generator(D2, 2)
    zero2 = WeilElement.zero(D2)
    swapped = witness.substitute(D2, [e1, e2, zero2])
    if swapped != star(section_at(x, e1), section_at(y, e2)):
        raise InternalInvariantError("witness at d3 = 0 is not X_{d1} * Y_{d2}")
    closed = witness.substitute(D2, [e1, e2, e1 * e2])
    if closed != star(section_at(y, e2), section_at(x, e1)):
        raise InternalInvariantError("witness at d3 = d1*d2 is not Y_{d2} * X_{d1}")
    d = WeilElement.generator(LINE, 1)
    zero1 = WeilElement.zero(LINE)
    if witness.substitute(LINE, [zero1, zero1, d]) != section_at(b, d):
        raise InternalInvariantError("witness at (0, 0, d) is not the bracket flow")
    return witness
