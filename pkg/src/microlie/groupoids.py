"""Concrete groupoids, Weil-parametrized sections and bisections.

Two instances are built: the pair groupoid of an affine space (arrows are
ordered pairs of base points, sections are polynomial self-maps recorded
through their target map), and the gauge groupoid of a trivial bundle over
a finite base (arrows are ``(target, matrix, source)`` triples, sections
are per-point tables).

A section sigma assigns to each base point an arrow sourced there, so it
is determined by its target map ``beta . sigma`` together with (for the
gauge case) the fiber matrices.  The product is
``(sigma * rho)(x) = sigma(beta(rho(x))) . rho(x)``; on the stored data
this is exact polynomial/table composition.  A bisection additionally has
an invertible target map; invertibility is witnessed by the scalar part
(an invertible affine map, or a base permutation) and inverses are
computed exactly through nilpotent Newton iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import matrices
from .matrices import Matrix, SingularMatrixError
from .poly import Poly, compose_map, identity_map
from .spaces import AffineSpace, FiniteBase, MatrixGroup, WPoint
from .weil import (
    DomainMismatchError,
    InfinitesimalDomain,
    Rational,
    WeilElement,
    check_permutation,
)


class GroupoidMismatchError(ValueError):
    """Operands belong to different groupoids."""


class InvertibilityError(ValueError):
    """The invertibility witness of a would-be bisection fails."""


class NotDPointError(ValueError):
    """A flow was requested at an element that is not square-zero."""


@dataclass(frozen=True)
class PairGroupoid:
    """Arrows are pairs (target point, source point) of an affine base."""

    dim: int

    @property
    def base(self) -> AffineSpace:
        return AffineSpace(self.dim)


@dataclass(frozen=True)
class TrivialGaugeGroupoid:
    """Arrows are triples (target index, fiber matrix, source index)."""

    base_size: int
    matrix_size: int

    @property
    def base(self) -> FiniteBase:
        return FiniteBase(self.base_size)

    @property
    def fiber(self) -> MatrixGroup:
        return MatrixGroup(self.matrix_size)


GroupoidInstance = PairGroupoid | TrivialGaugeGroupoid


# -- arrows ---------------------------------------------------------------------


@dataclass(frozen=True)
class Arrow:
    groupoid: GroupoidInstance
    target: tuple
    source: tuple
    fiber: Matrix | None = None


def identity_arrow(groupoid: GroupoidInstance, x, domain: InfinitesimalDomain) -> Arrow:
    if isinstance(groupoid, PairGroupoid):
        pt = tuple(x)
        return Arrow(groupoid, pt, pt)
    return Arrow(groupoid, (x,), (x,), matrices.identity(groupoid.matrix_size, domain))


def compose_arrows(g2: Arrow, g1: Arrow) -> Arrow:
    if g2.groupoid != g1.groupoid:
        raise GroupoidMismatchError("arrows from different groupoids")
    if g2.source != g1.target:
        raise ValueError(f"arrows do not match: {g2.source} vs {g1.target}")
    if isinstance(g2.groupoid, PairGroupoid):
        return Arrow(g2.groupoid, g2.target, g1.source)
    return Arrow(g2.groupoid, g2.target, g1.source, matrices.mul(g2.fiber, g1.fiber))


def invert_arrow(g: Arrow, domain: InfinitesimalDomain | None = None) -> Arrow:
    if isinstance(g.groupoid, PairGroupoid):
        return Arrow(g.groupoid, g.source, g.target)
    dom = domain if domain is not None else g.fiber[0][0].domain
    return Arrow(g.groupoid, g.source, g.target, matrices.w_inverse(g.fiber, dom))


# -- sections ---------------------------------------------------------------------


class WSection:
    """A Weil-parametrized section of the source projection.

    Pair groupoid: ``data`` is the tuple of polynomial components of the
    target map.  Gauge groupoid: ``data`` is ``(base_map, tables)`` with
    ``base_map`` a tuple of target indices and ``tables`` the fiber
    matrices per source point.
    """

    __slots__ = ("groupoid", "domain", "data")

    def __init__(self, groupoid: GroupoidInstance, domain: InfinitesimalDomain, data) -> None:
        object.__setattr__(self, "groupoid", groupoid)
        object.__setattr__(self, "domain", domain)
        if isinstance(groupoid, PairGroupoid):
            comps = tuple(data)
            if len(comps) != groupoid.dim:
                raise ValueError(f"expected {groupoid.dim} map components")
            for c in comps:
                if not isinstance(c, Poly) or c.nvars != groupoid.dim or c.domain != domain:
                    raise ValueError("components must be polynomials over the section's domain")
            object.__setattr__(self, "data", comps)
        elif isinstance(groupoid, TrivialGaugeGroupoid):
            base_map, tables = data
            base_map = tuple(base_map)
            tables = tuple(matrices.from_rows(t) for t in tables)
            m, k = groupoid.base_size, groupoid.matrix_size
            if len(base_map) != m or len(tables) != m:
                raise ValueError(f"expected tables over {m} base points")
            if any(not 0 <= i < m for i in base_map):
                raise ValueError("base map leaves the base")
            for t in tables:
                if len(t) != k or any(w.domain != domain for row in t for w in row):
                    raise ValueError("fiber tables must be k x k over the section's domain")
                if not matrices.q_is_invertible(matrices.scalar_part(t)):
                    raise InvertibilityError("fiber matrix has singular scalar part")
            object.__setattr__(self, "data", (base_map, tables))
        else:
            raise TypeError(f"unknown groupoid {groupoid!r}")

    def __setattr__(self, name, value) -> None:
        raise AttributeError("WSection is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, groupoid: GroupoidInstance, domain: InfinitesimalDomain) -> "WBisection":
        if isinstance(groupoid, PairGroupoid):
            return WBisection(groupoid, domain, identity_map(groupoid.dim, domain))
        m, k = groupoid.base_size, groupoid.matrix_size
        return WBisection(
            groupoid, domain, (tuple(range(m)), tuple(matrices.identity(k, domain) for _ in range(m)))
        )

    # -- accessors ----------------------------------------------------------------

    @property
    def target_map(self):
        """beta . sigma: the polynomial map (pair) or index table (gauge)."""
        if isinstance(self.groupoid, PairGroupoid):
            return self.data
        return self.data[0]

    @property
    def tables(self) -> tuple[Matrix, ...]:
        return self.data[1]

    def arrow_at(self, x) -> Arrow:
        """Evaluate the section at a base point."""
        if isinstance(self.groupoid, PairGroupoid):
            point = tuple(
                v if isinstance(v, WeilElement) else WeilElement.scalar(self.domain, v) for v in x
            )
            target = tuple(c.evaluate(point) for c in self.data)
            return Arrow(self.groupoid, target, point)
        base_map, tables = self.data
        return Arrow(self.groupoid, (base_map[x],), (x,), tables[x])

    # -- coefficientwise transforms --------------------------------------------------

    def map_coefficients(self, fn, domain: InfinitesimalDomain) -> "WSection":
        cls = type(self)
        if isinstance(self.groupoid, PairGroupoid):
            return cls(self.groupoid, domain, tuple(c.map_coefficients(fn, domain) for c in self.data))
        base_map, tables = self.data
        new_tables = tuple(tuple(tuple(fn(w) for w in row) for row in t) for t in tables)
        return cls(self.groupoid, domain, (base_map, new_tables))

    def restrict(self, sub: InfinitesimalDomain) -> "WSection":
        return self.map_coefficients(lambda w: w.restrict(sub), sub)

    def extend(self, sup: InfinitesimalDomain) -> "WSection":
        return self.map_coefficients(lambda w: w.extend(sup), sup)

    def substitute(self, target: InfinitesimalDomain, images: Sequence[WeilElement]) -> "WSection":
        """Substitute Weil generators in every coefficient (reparametrize the family)."""
        out = self.map_coefficients(lambda w: w.substitute(target, images), target)
        return out

    def permute_generators(self, perm: Sequence[int]) -> "WSection":
        p = check_permutation(perm, self.domain.generator_count)
        new_domain = self.domain.permuted(p)
        return self.map_coefficients(lambda w: w.permute_generators(p), new_domain)

    @property
    def is_scalar_exact(self) -> bool:
        if isinstance(self.groupoid, PairGroupoid):
            return all(c.is_scalar for comp in self.data for c in comp.terms.values())
        return all(w.is_scalar for t in self.tables for row in t for w in row)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WSection)
            and self.groupoid == other.groupoid
            and self.domain == other.domain
            and self.data == other.data
        )

    def __repr__(self) -> str:
        if isinstance(self.groupoid, PairGroupoid):
            body = "; ".join(str(c) for c in self.data)
            return f"WSection({self.groupoid}, {self.domain!r}; x -> ({body}))"
        base_map, tables = self.data
        return f"WSection({self.groupoid}, {self.domain!r}; base {base_map})"


class WBisection(WSection):
    """A section whose target map is invertible (witnessed by its scalar part)."""

    __slots__ = ()

    def __init__(self, groupoid, domain, data) -> None:
        super().__init__(groupoid, domain, data)
        if isinstance(groupoid, PairGroupoid):
            _affine_witness(self.data)
        else:
            base_map = self.data[0]
            if sorted(base_map) != list(range(groupoid.base_size)):
                raise InvertibilityError(f"base map {base_map} is not a permutation")


def _affine_witness(components: Sequence[Poly]) -> tuple[Matrix, tuple[Fraction, ...]]:
    """Check the scalar part is an invertible affine map; return (matrix, shift)."""
    n = len(components)
    rows = []
    shift = []
    for comp in components:
        scalar = comp.scalar_poly()
        if scalar.degree > 1:
            raise InvertibilityError(
                f"scalar part {scalar} is not affine; no invertibility witness"
            )
        row = []
        for j in range(n):
            alpha = tuple(1 if t == j else 0 for t in range(n))
            row.append(scalar.coefficient(alpha).scalar_part)
        rows.append(tuple(row))
        shift.append(scalar.coefficient((0,) * n).scalar_part)
    matrix = tuple(rows)
    try:
        matrices.q_inverse(matrix)
    except SingularMatrixError as exc:
        raise InvertibilityError("scalar part has a singular linear term") from exc
    return matrix, tuple(shift)


# -- the section product -------------------------------------------------------------


def star(sigma: WSection, rho: WSection) -> WSection:
    """(sigma * rho)(x) = sigma(beta(rho(x))) . rho(x), computed on the data."""
    if sigma.groupoid != rho.groupoid:
        raise GroupoidMismatchError("sections of different groupoids")
    if sigma.domain != rho.domain:
        raise DomainMismatchError("sections over different Weil domains")
    cls = WBisection if isinstance(sigma, WBisection) and isinstance(rho, WBisection) else WSection
    if isinstance(sigma.groupoid, PairGroupoid):
        return cls(sigma.groupoid, sigma.domain, compose_map(sigma.data, rho.data))
    f_s, h_s = sigma.data
    f_r, h_r = rho.data
    base_map = tuple(f_s[f_r[x]] for x in range(len(f_r)))
    tables = tuple(matrices.mul(h_s[f_r[x]], h_r[x]) for x in range(len(f_r)))
    return cls(sigma.groupoid, sigma.domain, (base_map, tables))


def star_word(*sections: WSection) -> WSection:
    """Product of several sections, leftmost outermost."""
    acc = sections[-1]
    for s in reversed(sections[:-1]):
        acc = star(s, acc)
    return acc


# -- formal inversion -------------------------------------------------------------------


def formal_inverse(components: Sequence[Poly]) -> tuple[Poly, ...]:
    """Two-sided compositional inverse of a polynomial self-map.

    Requires the scalar part to be an invertible affine map.  Newton
    iteration preconditioned by the scalar linear part,
    ``g <- g - A^-1 (f . g - id)``, gains one nilpotency degree per step
    and therefore terminates exactly.  (The unpreconditioned step only
    converges when the scalar part is the identity.)
    """
    f = tuple(components)
    n = len(f)
    domain = f[0].domain
    matrix, shift = _affine_witness(f)
    inv = matrices.q_inverse(matrix)
    ident = identity_map(n, domain)
    # seed: the exact inverse A^-1 (x - b) of the scalar affine part
    g = []
    for i in range(n):
        acc = Poly.scalar(n, domain, sum((-inv[i][j]) * shift[j] for j in range(n)))
        for j in range(n):
            acc = acc + Poly.variable(n, domain, j) * inv[i][j]
        g.append(acc)
    g = tuple(g)
    for _ in range(domain.nilpotency_order + 1):
        err = tuple(e - x for e, x in zip(compose_map(f, g), ident))
        if not any(err):
            back = tuple(e - x for e, x in zip(compose_map(g, f), ident))
            if any(back):
                raise InvertibilityError("one-sided inverse only; map is not a bisection datum")
            return g
        g = tuple(
            gi - sum((err[j] * inv[i][j] for j in range(n)), Poly.zero(n, domain))
            for i, gi in enumerate(g)
        )
    raise AssertionError("nilpotent Newton iteration failed to terminate")


def invert_bisection(sigma: WSection) -> WBisection:
    """The group inverse: x -> sigma(inverse-target(x)) inverted arrowwise."""
    if not isinstance(sigma, WBisection):
        sigma = WBisection(sigma.groupoid, sigma.domain, sigma.data)  # witness check
    if isinstance(sigma.groupoid, PairGroupoid):
        return WBisection(sigma.groupoid, sigma.domain, formal_inverse(sigma.data))
    base_map, tables = sigma.data
    inverse_map = tuple(base_map.index(x) for x in range(len(base_map)))
    new_tables = tuple(
        matrices.w_inverse(tables[inverse_map[x]], sigma.domain) for x in range(len(base_map))
    )
    return WBisection(sigma.groupoid, sigma.domain, (inverse_map, new_tables))


# -- sections of the Lie algebroid ------------------------------------------------------


class AGSection:
    """Exact data for a tangent vector to the bisection group at the identity.

    Pair groupoid: a polynomial vector field (rational coefficients).
    Gauge groupoid: a table of rational matrices, one per base point.
    Evaluating the flow at 0 always yields the identity section.
    """

    __slots__ = ("groupoid", "data")

    def __init__(self, groupoid: GroupoidInstance, data) -> None:
        object.__setattr__(self, "groupoid", groupoid)
        if isinstance(groupoid, PairGroupoid):
            comps = tuple(data)
            if len(comps) != groupoid.dim:
                raise ValueError(f"expected {groupoid.dim} field components")
            for c in comps:
                if not isinstance(c, Poly) or c.nvars != groupoid.dim:
                    raise ValueError("field components must be polynomials in the base variables")
                if c.domain.generator_count != 0:
                    raise ValueError("field coefficients must be plain rationals")
            object.__setattr__(self, "data", comps)
        elif isinstance(groupoid, TrivialGaugeGroupoid):
            tables = tuple(matrices.rational_rows(t) for t in data)
            if len(tables) != groupoid.base_size:
                raise ValueError(f"expected {groupoid.base_size} tables")
            if any(len(t) != groupoid.matrix_size for t in tables):
                raise ValueError("tables must be k x k")
            object.__setattr__(self, "data", tables)
        else:
            raise TypeError(f"unknown groupoid {groupoid!r}")

    def __setattr__(self, name, value) -> None:
        raise AttributeError("AGSection is immutable")

    @classmethod
    def zero(cls, groupoid: GroupoidInstance) -> "AGSection":
        if isinstance(groupoid, PairGroupoid):
            from .poly import RATIONALS

            return cls(groupoid, tuple(Poly.zero(groupoid.dim, RATIONALS) for _ in range(groupoid.dim)))
        k = groupoid.matrix_size
        zero = tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))
        return cls(groupoid, tuple(zero for _ in range(groupoid.base_size)))

    def __add__(self, other: "AGSection") -> "AGSection":
        if not isinstance(other, AGSection):
            return NotImplemented
        if self.groupoid != other.groupoid:
            raise GroupoidMismatchError("sections of different groupoids")
        if isinstance(self.groupoid, PairGroupoid):
            return AGSection(self.groupoid, tuple(a + b for a, b in zip(self.data, other.data)))
        return AGSection(self.groupoid, tuple(matrices.add(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "AGSection":
        return self.scaled(-1)

    def __sub__(self, other: "AGSection") -> "AGSection":
        return self + (-other)

    def scaled(self, a: Rational) -> "AGSection":
        c = Fraction(a)
        if isinstance(self.groupoid, PairGroupoid):
            return AGSection(self.groupoid, tuple(comp * c for comp in self.data))
        return AGSection(self.groupoid, tuple(matrices.scale(c, t) for t in self.data))

    def __rmul__(self, a: Rational) -> "AGSection":
        return self.scaled(a)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AGSection)
            and self.groupoid == other.groupoid
            and self.data == other.data
        )

    def __repr__(self) -> str:
        if isinstance(self.groupoid, PairGroupoid):
            return f"AGSection({self.groupoid}; {'; '.join(str(c) for c in self.data)})"
        return f"AGSection({self.groupoid}; {self.data})"


def section_at(x_section: AGSection, e: WeilElement) -> WBisection:
    """The flow of a Lie algebroid section at a square-zero element.

    ``e`` must have zero scalar part and ``e*e = 0``; the same recipe then
    yields flows at generators, sums, negatives, and products such as
    ``d1*d2``.
    """
    if e.scalar_part:
        raise NotDPointError(f"not a D-point: scalar part {e.scalar_part} is nonzero")
    if (e * e).coeffs:
        raise NotDPointError(f"not a D-point: square is {e * e}, not 0")
    domain = e.domain
    groupoid = x_section.groupoid
    if isinstance(groupoid, PairGroupoid):
        comps = tuple(
            Poly.variable(groupoid.dim, domain, i) + field.with_domain(domain) * e
            for i, field in enumerate(x_section.data)
        )
        return WBisection(groupoid, domain, comps)
    k, m = groupoid.matrix_size, groupoid.base_size
    tables = tuple(
        matrices.add(matrices.identity(k, domain), matrices.scale(e, matrices.lift(t, domain)))
        for t in x_section.data
    )
    return WBisection(groupoid, domain, (tuple(range(m)), tables))


def ag_from_flow(section: WSection) -> AGSection:
    """Read a first-order flow (a section over the one-generator domain) back.

    The scalar part must be the identity section; the generator
    coefficient is the section data.
    """
    domain = section.domain
    if domain.generator_count != 1:
        raise ValueError("expected a section over the one-generator domain")
    groupoid = section.groupoid
    if isinstance(groupoid, PairGroupoid):
        from .poly import RATIONALS

        ident = identity_map(groupoid.dim, domain)
        fields = []
        for comp, ident_comp in zip(section.data, ident):
            if comp.map_coefficients(lambda w: WeilElement.scalar(domain, w.scalar_part), domain) != ident_comp:
                raise ValueError("flow's scalar part is not the identity section")
            fields.append(
                Poly(groupoid.dim, RATIONALS, {e: c.coefficient({1}) for e, c in comp.terms.items()})
            )
        return AGSection(groupoid, tuple(fields))
    base_map, tables = section.data
    if base_map != tuple(range(groupoid.base_size)):
        raise ValueError("flow's base map is not the identity")
    out = []
    for t in tables:
        if matrices.scalar_part(t) != matrices.scalar_part(matrices.identity(groupoid.matrix_size, domain)):
            raise ValueError("flow's scalar part is not the identity section")
        out.append(tuple(tuple(w.coefficient({1}) for w in row) for row in t))
    return AGSection(groupoid, tuple(out))


# -- flattening sections into ambient points ----------------------------------------------


@dataclass(frozen=True)
class SectionChart:
    """A common coordinate system for a family of sections.

    Pair groupoid: one slot per (component, exponent tuple) occurring in
    any of the charted sections.  Gauge groupoid: one slot per (base
    point, row, column); the base map must be shared, and is stored so
    points can be turned back into sections.
    """

    groupoid: GroupoidInstance
    slots: tuple
    base_map: tuple[int, ...] | None = None

    @classmethod
    def for_sections(cls, *sections: WSection) -> "SectionChart":
        if not sections:
            raise ValueError("chart needs at least one section")
        groupoid = sections[0].groupoid
        if any(s.groupoid != groupoid for s in sections):
            raise GroupoidMismatchError("sections of different groupoids")
        if isinstance(groupoid, PairGroupoid):
            slots = set()
            for s in sections:
                for i, comp in enumerate(s.data):
                    slots.update((i, e) for e in comp.terms)
            # always include the identity-map slots so the identity section is chartable
            for i in range(groupoid.dim):
                slots.add((i, tuple(1 if t == i else 0 for t in range(groupoid.dim))))
            return cls(groupoid, tuple(sorted(slots)))
        base_map = sections[0].data[0]
        if any(s.data[0] != base_map for s in sections):
            raise ValueError("charted gauge sections must share a base map")
        m, k = groupoid.base_size, groupoid.matrix_size
        slots = tuple((x, i, j) for x in range(m) for i in range(k) for j in range(k))
        return cls(groupoid, slots, base_map)

    @property
    def space(self) -> AffineSpace:
        return AffineSpace(len(self.slots))

    def to_point(self, section: WSection) -> WPoint:
        if section.groupoid != self.groupoid:
            raise GroupoidMismatchError("section not over the chart's groupoid")
        if isinstance(self.groupoid, PairGroupoid):
            slot_set = set(self.slots)
            for i, comp in enumerate(section.data):
                missing = [(i, e) for e in comp.terms if (i, e) not in slot_set]
                if missing:
                    raise ValueError(f"section uses slots outside the chart: {missing}")
            coords = tuple(section.data[i].coefficient(e) for i, e in self.slots)
            return WPoint(self.space, section.domain, coords)
        if section.data[0] != self.base_map:
            raise ValueError("gauge section has a different base map than the chart")
        tables = section.data[1]
        coords = tuple(tables[x][i][j] for x, i, j in self.slots)
        return WPoint(self.space, section.domain, coords)

    def to_section(self, point: WPoint) -> WSection:
        if point.space != self.space:
            raise ValueError("point does not live in the chart's space")
        if isinstance(self.groupoid, PairGroupoid):
            comps = []
            for i in range(self.groupoid.dim):
                terms = {e: c for (j, e), c in zip(self.slots, point.coords) if j == i}
                comps.append(Poly(self.groupoid.dim, point.domain, terms))
            return WSection(self.groupoid, point.domain, tuple(comps))
        m, k = self.groupoid.base_size, self.groupoid.matrix_size
        grid = [[[None] * k for _ in range(k)] for _ in range(m)]
        for (x, i, j), c in zip(self.slots, point.coords):
            grid[x][i][j] = c
        tables = tuple(tuple(tuple(row) for row in t) for t in grid)
        return WSection(self.groupoid, point.domain, (self.base_map, tables))


def as_ambient_point(section: WSection, chart: SectionChart | None = None) -> WPoint:
    """Flatten a section into a point of an affine chart space."""
    if chart is None:
        chart = SectionChart.for_sections(section)
    return chart.to_point(section)
