"""Deterministic randomized verification suites with machine-readable reports.

Each suite is a list of laws; each law runs a configured number of trials
generated from a pinned PRNG (CPython's Mersenne Twister seeded with the
string ``"{seed}|{suite}|{law}|{trial}"``), so a given build reproduces
its own runs bit for bit.  Every comparison is exact rational equality;
a precondition failure inside a law counts as a suite failure and is
reported with a serialized counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import liealg, matrices, oracles
from .groupoids import (
    AGSection,
    GroupoidInstance,
    PairGroupoid,
    SectionChart,
    TrivialGaugeGroupoid,
    WBisection,
    WSection,
    compose_arrows,
    invert_bisection,
    section_at,
    star,
)
from .poly import Poly, RATIONALS
from .spaces import (
    AffineSpace,
    MatrixGroup,
    Tangent,
    WPoint,
    extend_point,
    relative_strong_difference,
    relative_strong_difference_curried,
    restrict_point,
    strong_difference,
    tangent_combine,
)
from .weil import InfinitesimalDomain, WeilElement

LINE = InfinitesimalDomain.line()
D2 = InfinitesimalDomain.power(2)
D3 = InfinitesimalDomain.power(3)
AXES2 = InfinitesimalDomain.first_order(2)

SUITE_IDS = ("flows", "module", "bracket", "liederiv", "strongdiff", "jacobi2", "oracle")
MUTATIONS = ("none", "flip-bracket-sign")


class ConfigError(ValueError):
    """A suite configuration violates the documented bounds."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    groupoid: GroupoidInstance
    degree: int = 2
    trials: int = 25
    seed: int = 0
    coeff_bound: int = 3

    def __post_init__(self) -> None:
        if self.suite not in SUITE_IDS and self.suite != "all":
            raise ConfigError(f"unknown suite {self.suite!r}; expected one of {('all',) + SUITE_IDS}")
        if self.trials < 0:
            raise ConfigError("trials must be nonnegative")
        g = self.groupoid
        if isinstance(g, PairGroupoid):
            if not 1 <= g.dim <= 3:
                raise ConfigError("pair groupoid dimension must be between 1 and 3")
            if not 0 <= self.degree <= 3:
                raise ConfigError("field degree must be between 0 and 3")
        elif isinstance(g, TrivialGaugeGroupoid):
            if not 1 <= g.base_size <= 4:
                raise ConfigError("gauge base size must be between 1 and 4")
            if not 1 <= g.matrix_size <= 3:
                raise ConfigError("gauge matrix size must be between 1 and 3")
        else:
            raise ConfigError(f"unknown groupoid {g!r}")

    @property
    def groupoid_spec(self) -> str:
        g = self.groupoid
        if isinstance(g, PairGroupoid):
            return f"pair:dim={g.dim}:deg={self.degree}"
        return f"gauge:base={g.base_size}:k={g.matrix_size}"


def parse_groupoid_spec(text: str) -> tuple[GroupoidInstance, int]:
    """Parse 'pair:dim=N:deg=D' or 'gauge:base=M:k=K' into an instance + degree."""
    parts = text.split(":")
    kind = parts[0]
    options: dict[str, int] = {}
    for piece in parts[1:]:
        if "=" not in piece:
            raise ConfigError(f"malformed groupoid option {piece!r} in {text!r}")
        key, _, value = piece.partition("=")
        try:
            options[key] = int(value)
        except ValueError:
            raise ConfigError(f"non-integer value in groupoid option {piece!r}") from None
    if kind == "pair":
        dim = options.pop("dim", 2)
        degree = options.pop("deg", 2)
        if options:
            raise ConfigError(f"unknown pair-groupoid options {sorted(options)}")
        return PairGroupoid(dim), degree
    if kind == "gauge":
        base = options.pop("base", 2)
        k = options.pop("k", 2)
        if options:
            raise ConfigError(f"unknown gauge-groupoid options {sorted(options)}")
        return TrivialGaugeGroupoid(base, k), 0
    raise ConfigError(f"unknown groupoid kind {kind!r}; expected 'pair' or 'gauge'")


# -- reporting -----------------------------------------------------------------------


@dataclass
class CaseRecord:
    law: str
    anchor: str
    status: str  # "pass" | "fail"
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        out = {"law": self.law, "anchor": self.anchor, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    suite: str
    groupoid: str
    seed: int
    trials: int
    cases: list[CaseRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "groupoid": self.groupoid,
            "seed": self.seed,
            "trials": self.trials,
            "cases": [c.to_dict() for c in self.cases],
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} on {self.groupoid} (seed {self.seed}, {self.trials} trials/law)"]
        for c in self.cases:
            mark = "PASS" if c.status == "pass" else "FAIL"
            lines.append(f"  {mark}  {c.law}  [{c.anchor}]")
            if c.counterexample:
                for key, value in c.counterexample.items():
                    lines.append(f"        {key}: {value}")
        lines.append("ok" if self.ok else "FAILED")
        return "\n".join(lines)


class LawViolation(Exception):
    def __init__(self, details: dict) -> None:
        super().__init__(str(details))
        self.details = details


# -- deterministic generation ------------------------------------------------------------


def _rng(seed: int, suite: str, law: str, trial: int) -> random.Random:
    return random.Random(f"{seed}|{suite}|{law}|{trial}")


def _rand_int(rng: random.Random, bound: int) -> int:
    return rng.randint(-bound, bound)


def _exponents(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(degree + 1)]
    return sorted(e for e in out if sum(e) <= degree)


def _rand_poly(rng: random.Random, nvars: int, degree: int, bound: int) -> Poly:
    terms = {}
    for e in _exponents(nvars, degree):
        if rng.random() < 0.6:
            terms[e] = _rand_int(rng, bound)
    return Poly(nvars, RATIONALS, terms)


def _rand_matrix(rng: random.Random, k: int, bound: int) -> tuple:
    return tuple(tuple(Fraction(_rand_int(rng, bound)) for _ in range(k)) for _ in range(k))


def _rand_invertible(rng: random.Random, k: int, bound: int) -> tuple:
    while True:
        m = _rand_matrix(rng, k, bound)
        if matrices.q_is_invertible(m):
            return m


def _rand_ag(rng: random.Random, config: SuiteConfig) -> AGSection:
    g = config.groupoid
    if isinstance(g, PairGroupoid):
        return AGSection(
            g, tuple(_rand_poly(rng, g.dim, config.degree, config.coeff_bound) for _ in range(g.dim))
        )
    return AGSection(
        g, tuple(_rand_matrix(rng, g.matrix_size, config.coeff_bound) for _ in range(g.base_size))
    )


def generate(config: SuiteConfig, trial: int, law: str = "generate") -> tuple[AGSection, AGSection, AGSection]:
    """Deterministic trial data: three Lie algebroid sections.

    Trials 0 and 1 are pinned degenerate strata (all zero; all equal); the
    rest are independent samples.
    """
    rng = _rng(config.seed, config.suite, law, trial)
    if trial == 0:
        z = AGSection.zero(config.groupoid)
        return z, z, z
    if trial == 1:
        s = _rand_ag(rng, config)
        return s, s, s
    return _rand_ag(rng, config), _rand_ag(rng, config), _rand_ag(rng, config)


def _rand_element(
    rng: random.Random, domain: InfinitesimalDomain, bound: int, nilpotent_only: bool = False
) -> WeilElement:
    coeffs = {}
    for m in domain.monomials():
        if nilpotent_only and not m:
            continue
        if rng.random() < 0.6:
            coeffs[m] = _rand_int(rng, bound)
    return WeilElement(domain, coeffs)


def _rand_section(rng: random.Random, config: SuiteConfig, domain: InfinitesimalDomain) -> WSection:
    """An arbitrary section (not necessarily a bisection)."""
    g = config.groupoid
    if isinstance(g, PairGroupoid):
        comps = []
        for _ in range(g.dim):
            terms = {}
            for e in _exponents(g.dim, config.degree):
                if rng.random() < 0.5:
                    terms[e] = _rand_element(rng, domain, config.coeff_bound)
            comps.append(Poly(g.dim, domain, terms))
        return WSection(g, domain, tuple(comps))
    m, k = g.base_size, g.matrix_size
    base_map = tuple(rng.randrange(m) for _ in range(m))
    tables = []
    for _ in range(m):
        scalar = matrices.lift(_rand_invertible(rng, k, config.coeff_bound), domain)
        nil = tuple(
            tuple(_rand_element(rng, domain, config.coeff_bound, nilpotent_only=True) for _ in range(k))
            for _ in range(k)
        )
        tables.append(matrices.add(scalar, nil))
    return WSection(g, domain, (base_map, tuple(tables)))


def _rand_bisection(
    rng: random.Random,
    config: SuiteConfig,
    domain: InfinitesimalDomain,
    scalar_exact: bool = False,
) -> WBisection:
    g = config.groupoid
    if isinstance(g, PairGroupoid):
        n = g.dim
        a = _rand_invertible(rng, n, config.coeff_bound)
        b = [_rand_int(rng, config.coeff_bound) for _ in range(n)]
        comps = []
        for i in range(n):
            terms: dict = {tuple(0 for _ in range(n)): WeilElement.scalar(domain, b[i])}
            for j in range(n):
                e = tuple(1 if t == j else 0 for t in range(n))
                terms[e] = terms.get(e, WeilElement.zero(domain)) + WeilElement.scalar(domain, a[i][j])
            poly = Poly(n, domain, terms)
            if not scalar_exact:
                for e in _exponents(n, config.degree):
                    if rng.random() < 0.4:
                        poly = poly + Poly(
                            n, domain, {e: _rand_element(rng, domain, config.coeff_bound, nilpotent_only=True)}
                        )
            comps.append(poly)
        return WBisection(g, domain, tuple(comps))
    m, k = g.base_size, g.matrix_size
    perm = list(range(m))
    rng.shuffle(perm)
    tables = []
    for _ in range(m):
        t = matrices.lift(_rand_invertible(rng, k, config.coeff_bound), domain)
        if not scalar_exact:
            nil = tuple(
                tuple(_rand_element(rng, domain, config.coeff_bound, nilpotent_only=True) for _ in range(k))
                for _ in range(k)
            )
            t = matrices.add(t, nil)
        tables.append(t)
    return WBisection(g, domain, (tuple(perm), tuple(tables)))


def _rand_base_point(rng: random.Random, config: SuiteConfig, domain: InfinitesimalDomain):
    g = config.groupoid
    if isinstance(g, PairGroupoid):
        return tuple(WeilElement.scalar(domain, _rand_int(rng, config.coeff_bound)) for _ in range(g.dim))
    return rng.randrange(g.base_size)


# -- law environment ------------------------------------------------------------------------


BracketFn = Callable[[AGSection, AGSection], AGSection]


@dataclass
class LawEnv:
    config: SuiteConfig
    suite: str
    bracket_fn: BracketFn

    def rng(self, law: str, trial: int) -> random.Random:
        return _rng(self.config.seed, self.suite, law, trial)

    def triple(self, law: str, trial: int) -> tuple[AGSection, AGSection, AGSection]:
        rng = self.rng(law, trial)
        if trial == 0:
            z = AGSection.zero(self.config.groupoid)
            return z, z, z
        if trial == 1:
            s = _rand_ag(rng, self.config)
            return s, s, s
        return (
            _rand_ag(rng, self.config),
            _rand_ag(rng, self.config),
            _rand_ag(rng, self.config),
        )


def _fail(trial: int, **data) -> LawViolation:
    details = {"trial": trial}
    details.update({k: str(v) for k, v in data.items()})
    return LawViolation(details)


# -- flow laws -------------------------------------------------------------------------------


def _law_flow_zero(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("flow-zero", trial)
    flow = section_at(x, WeilElement.zero(LINE))
    if flow != WSection.identity(x.groupoid, LINE):
        raise _fail(trial, X=x, flow=flow)


def _law_flow_additivity(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("flow-additivity", trial)
    d1 = WeilElement.generator(AXES2, 1)
    d2 = WeilElement.generator(AXES2, 2)
    combined = section_at(x, d1 + d2)
    split = star(section_at(x, d1), section_at(x, d2))
    if combined != split:
        raise _fail(trial, X=x, combined=combined, split=split)


def _law_flow_inverse(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("flow-inverse", trial)
    d = WeilElement.generator(LINE, 1)
    ident = WSection.identity(x.groupoid, LINE)
    if star(section_at(x, d), section_at(x, -d)) != ident:
        raise _fail(trial, X=x, side="right")
    if star(section_at(x, -d), section_at(x, d)) != ident:
        raise _fail(trial, X=x, side="left")


def _law_bisection_inverse(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("bisection-inverse", trial)
    d = WeilElement.generator(LINE, 1)
    if invert_bisection(section_at(x, d)) != section_at(x, -d):
        raise _fail(trial, X=x)


# -- module laws -----------------------------------------------------------------------------


def _law_addition_flow(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("addition-flow", trial)
    d = WeilElement.generator(LINE, 1)
    combined = section_at(liealg.add_sections(x, y), d)
    xy = star(section_at(x, d), section_at(y, d))
    yx = star(section_at(y, d), section_at(x, d))
    if combined != xy or combined != yx:
        raise _fail(trial, X=x, Y=y, combined=combined, xy=xy, yx=yx)


def _law_infinitesimal_commutation(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("infinitesimal-commutation", trial)
    d1 = WeilElement.generator(AXES2, 1)
    d2 = WeilElement.generator(AXES2, 2)
    if star(section_at(x, d1), section_at(y, d2)) != star(section_at(y, d2), section_at(x, d1)):
        raise _fail(trial, X=x, Y=y)


def _law_scaling_flow(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("scaling-flow", trial)
    a = _rand_int(env.rng("scaling-flow-coeff", trial), env.config.coeff_bound)
    d = WeilElement.generator(LINE, 1)
    if section_at(liealg.scale_section(a, x), d) != section_at(x, a * d):
        raise _fail(trial, X=x, a=a)


def _law_two_sided_inverse(env: LawEnv, trial: int) -> None:
    rng = env.rng("two-sided-inverse", trial)
    sigma = _rand_bisection(rng, env.config, D2)
    tau = invert_bisection(sigma)
    ident = WSection.identity(sigma.groupoid, D2)
    if star(sigma, tau) != ident or star(tau, sigma) != ident:
        raise _fail(trial, sigma=sigma)


def _law_star_defining_formula(env: LawEnv, trial: int) -> None:
    rng = env.rng("star-defining-formula", trial)
    sigma = _rand_section(rng, env.config, D2)
    rho = _rand_section(rng, env.config, D2)
    product = star(sigma, rho)
    for _ in range(3):
        x = _rand_base_point(rng, env.config, D2)
        rho_arrow = rho.arrow_at(x)
        lhs = product.arrow_at(x)
        if isinstance(env.config.groupoid, PairGroupoid):
            rhs = compose_arrows(sigma.arrow_at(rho_arrow.target), rho_arrow)
        else:
            rhs = compose_arrows(sigma.arrow_at(rho_arrow.target[0]), rho_arrow)
        if lhs != rhs:
            raise _fail(trial, sigma=sigma, rho=rho, at=x)


def _law_star_associativity(env: LawEnv, trial: int) -> None:
    rng = env.rng("star-associativity", trial)
    a = _rand_section(rng, env.config, D2)
    b = _rand_section(rng, env.config, D2)
    c = _rand_section(rng, env.config, D2)
    if star(star(a, b), c) != star(a, star(b, c)):
        raise _fail(trial, a=a, b=b, c=c)
    ident = WSection.identity(env.config.groupoid, D2)
    if star(ident, a) != a or star(a, ident) != a:
        raise _fail(trial, a=a, detail="identity law")


def _law_beta_functoriality(env: LawEnv, trial: int) -> None:
    rng = env.rng("beta-functoriality", trial)
    sigma = _rand_section(rng, env.config, D2)
    rho = _rand_section(rng, env.config, D2)
    product = star(sigma, rho)
    if isinstance(env.config.groupoid, PairGroupoid):
        for _ in range(3):
            x = _rand_base_point(rng, env.config, D2)
            via_product = product.arrow_at(x).target
            via_compose = sigma.arrow_at(rho.arrow_at(x).target).target
            if via_product != via_compose:
                raise _fail(trial, sigma=sigma, rho=rho, at=x)
    else:
        f_s, f_r = sigma.data[0], rho.data[0]
        if product.data[0] != tuple(f_s[f_r[x]] for x in range(len(f_r))):
            raise _fail(trial, sigma=sigma, rho=rho)


_RING_DOMAINS = (
    LINE,
    D2,
    AXES2,
    D3,
    InfinitesimalDomain(3, [(1, 3), (2, 3)]),
)


def _law_ring_laws(env: LawEnv, trial: int) -> None:
    rng = env.rng("ring-laws", trial)
    domain = _RING_DOMAINS[trial % len(_RING_DOMAINS)]
    bound = env.config.coeff_bound
    a = _rand_element(rng, domain, bound)
    b = _rand_element(rng, domain, bound)
    c = _rand_element(rng, domain, bound)
    checks = {
        "add-assoc": (a + b) + c == a + (b + c),
        "add-comm": a + b == b + a,
        "mul-assoc": (a * b) * c == a * (b * c),
        "mul-comm": a * b == b * a,
        "distrib": a * (b + c) == a * b + a * c,
        "zero": a + WeilElement.zero(domain) == a,
        "one": a * WeilElement.one(domain) == a,
    }
    for i in range(1, domain.generator_count + 1):
        g = WeilElement.generator(domain, i)
        checks[f"square d{i}"] = not (g * g).coeffs
    for z in domain.zero_monomials:
        prod = WeilElement.one(domain)
        for i in sorted(z):
            prod = prod * WeilElement.generator(domain, i)
        checks[f"zero monomial {sorted(z)}"] = not prod.coeffs
    bad = [name for name, holds in checks.items() if not holds]
    if bad:
        raise _fail(trial, domain=domain, a=a, b=b, c=c, failed=bad)


def _substitution_maps(rng: random.Random, bound: int):
    """A few relation-respecting generator substitutions with random weights."""
    r = lambda: Fraction(_rand_int(rng, bound))
    d = WeilElement.generator(LINE, 1)
    d1, d2 = WeilElement.generator(D2, 1), WeilElement.generator(D2, 2)
    e1, e2 = WeilElement.generator(AXES2, 1), WeilElement.generator(AXES2, 2)
    yield LINE, D2, [d1 * r() + d1 * d2 * r()]
    yield LINE, AXES2, [e1 * r() + e2 * r()]
    yield AXES2, LINE, [d * r(), d * r()]
    yield D2, D2, [d1 * r(), d2 * r() + d1 * d2 * r()]


def _law_substitution_homomorphism(env: LawEnv, trial: int) -> None:
    rng = env.rng("substitution-homomorphism", trial)
    bound = env.config.coeff_bound
    for source, target, images in _substitution_maps(rng, bound):
        a = _rand_element(rng, source, bound)
        b = _rand_element(rng, source, bound)
        mul_ok = (a * b).substitute(target, images) == a.substitute(target, images) * b.substitute(
            target, images
        )
        add_ok = (a + b).substitute(target, images) == a.substitute(target, images) + b.substitute(
            target, images
        )
        if not (mul_ok and add_ok):
            raise _fail(trial, source=source, target=target, a=a, b=b)


def _law_restriction_composition(env: LawEnv, trial: int) -> None:
    rng = env.rng("restriction-composition", trial)
    mid = InfinitesimalDomain(3, [(1, 2)])
    coarse = InfinitesimalDomain.first_order(3)
    a = _rand_element(rng, D3, env.config.coeff_bound)
    if a.restrict(mid).restrict(coarse) != a.restrict(coarse):
        raise _fail(trial, a=a)
    if a.restrict(D3) != a:
        raise _fail(trial, a=a, detail="restrict to same domain is not the identity")


# -- bracket laws ------------------------------------------------------------------------------


def _law_commutator_axes(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("commutator-axes", trial)
    liealg.commutator_square(x, y)  # raises AxisCheckError on failure


def _law_bracket_definition(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("bracket-definition", trial)
    b = env.bracket_fn(x, y)
    d1d2 = WeilElement.generator(D2, 1) * WeilElement.generator(D2, 2)
    if section_at(b, d1d2) != liealg.commutator_square(x, y).square:
        raise _fail(trial, X=x, Y=y, bracket=b)


def _law_bracket_scaling(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("bracket-scaling", trial)
    a = _rand_int(env.rng("bracket-scaling-coeff", trial), env.config.coeff_bound)
    if env.bracket_fn(liealg.scale_section(a, x), y) != liealg.scale_section(a, env.bracket_fn(x, y)):
        raise _fail(trial, X=x, Y=y, a=a)


def _law_bracket_additivity(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("bracket-additivity", trial)
    lhs = env.bracket_fn(liealg.add_sections(x, y), z)
    rhs = liealg.add_sections(env.bracket_fn(x, z), env.bracket_fn(y, z))
    if lhs != rhs:
        raise _fail(trial, X=x, Y=y, Z=z, lhs=lhs, rhs=rhs)


def _law_bracket_antisymmetry(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("bracket-antisymmetry", trial)
    if env.bracket_fn(x, y) != liealg.scale_section(-1, env.bracket_fn(y, x)):
        raise _fail(trial, X=x, Y=y)


def _law_jacobi_identity(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("jacobi-identity", trial)
    b = env.bracket_fn
    total = liealg.add_sections(
        liealg.add_sections(b(x, b(y, z)), b(y, b(z, x))), b(z, b(x, y))
    )
    if total != AGSection.zero(env.config.groupoid):
        raise _fail(trial, X=x, Y=y, Z=z, total=total)


# -- Lie derivative laws --------------------------------------------------------------------------


def _law_lie_derivative_equals_bracket(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("lie-derivative-equals-bracket", trial)
    lhs = liealg.lie_derivative(x, y)
    rhs = env.bracket_fn(x, y)
    if lhs != rhs:
        raise _fail(trial, X=x, Y=y, lie_derivative=lhs, bracket=rhs)


def _law_leibniz_rule(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("leibniz-rule", trial)
    lhs = liealg.lie_derivative(x, liealg.bracket(y, z))
    rhs = liealg.add_sections(
        liealg.bracket(liealg.lie_derivative(x, y), z),
        liealg.bracket(y, liealg.lie_derivative(x, z)),
    )
    if lhs != rhs:
        raise _fail(trial, X=x, Y=y, Z=z, lhs=lhs, rhs=rhs)


def _law_pushforward_identity(env: LawEnv, trial: int) -> None:
    x, _, _ = env.triple("pushforward-identity", trial)
    ident = WSection.identity(env.config.groupoid, LINE)
    if liealg.pushforward(ident, x) != x:
        raise _fail(trial, X=x)


def _law_pushforward_bracket(env: LawEnv, trial: int) -> None:
    _, y, z = env.triple("pushforward-bracket", trial)
    rng = env.rng("pushforward-bracket-bisection", trial)
    sigma = _rand_bisection(rng, env.config, LINE, scalar_exact=True)
    lhs = liealg.pushforward(sigma, env.bracket_fn(y, z))
    rhs = env.bracket_fn(liealg.pushforward(sigma, y), liealg.pushforward(sigma, z))
    if lhs != rhs:
        raise _fail(trial, sigma=sigma, Y=y, Z=z, lhs=lhs, rhs=rhs)


def _law_derived_jacobi(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("derived-jacobi", trial)
    b = env.bracket_fn
    lhs = b(x, b(y, z))
    rhs = liealg.add_sections(b(b(x, y), z), b(y, b(x, z)))
    if lhs != rhs:
        raise _fail(trial, X=x, Y=y, Z=z, lhs=lhs, rhs=rhs)


# -- strong difference laws --------------------------------------------------------------------------


def _spaces_for(config: SuiteConfig) -> tuple:
    if isinstance(config.groupoid, PairGroupoid):
        return (AffineSpace(config.groupoid.dim), MatrixGroup(2))
    return (AffineSpace(3), MatrixGroup(config.groupoid.matrix_size))


def _rand_square_family(rng: random.Random, space, bound: int, count: int) -> list[WPoint]:
    """Microsquares over D^2 sharing everything except the top coefficient."""

    def rand_vec():
        return [Fraction(_rand_int(rng, bound)) for _ in range(_flat_dim(space))]

    base, a1, a2 = rand_vec(), rand_vec(), rand_vec()
    if isinstance(space, MatrixGroup):
        k = space.size
        while not matrices.q_is_invertible(tuple(tuple(base[i * k + j] for j in range(k)) for i in range(k))):
            base = rand_vec()
    out = []
    for _ in range(count):
        top = rand_vec()
        flats = tuple(
            WeilElement(D2, {frozenset(): b, frozenset({1}): u, frozenset({2}): v, frozenset({1, 2}): t})
            for b, u, v, t in zip(base, a1, a2, top)
        )
        out.append(_point_from_flat(space, D2, flats))
    return out


def _flat_dim(space) -> int:
    if isinstance(space, AffineSpace):
        return space.dim
    return space.size * space.size


def _point_from_flat(space, domain, flats) -> WPoint:
    if isinstance(space, MatrixGroup):
        k = space.size
        rows = tuple(tuple(flats[i * k + j] for j in range(k)) for i in range(k))
        return WPoint(space, domain, rows)
    return WPoint(space, domain, tuple(flats))


def _law_cocycle_identity(env: LawEnv, trial: int) -> None:
    rng = env.rng("cocycle-identity", trial)
    for space in _spaces_for(env.config):
        g1, g2, g3 = _rand_square_family(rng, space, env.config.coeff_bound, 3)
        total = tangent_combine(
            tangent_combine(strong_difference(g1, g2), strong_difference(g2, g3)),
            strong_difference(g3, g1),
        )
        if not total.is_zero:
            raise _fail(trial, space=space, total=total)


def _law_axis_recovery(env: LawEnv, trial: int) -> None:
    rng = env.rng("axis-recovery", trial)
    for space in _spaces_for(env.config):
        gamma = _rand_square_family(rng, space, env.config.coeff_bound, 1)[0]
        flattened = extend_point(restrict_point(gamma, AXES2), D2)
        t = strong_difference(gamma, flattened)
        if t.direction != gamma.coefficient({1, 2}):
            raise _fail(trial, space=space, gamma=gamma, tangent=t)


def _rand_cube_pair(rng: random.Random, space, bound: int, axis: int) -> tuple[WPoint, WPoint]:
    """Microcubes over D^3 agreeing away from the two non-axis generators."""
    j, k = sorted({1, 2, 3} - {axis})
    side, top = frozenset({j, k}), frozenset({1, 2, 3})
    dim = _flat_dim(space)

    def rand_vec():
        return [Fraction(_rand_int(rng, bound)) for _ in range(dim)]

    shared = {m: rand_vec() for m in D3.monomials()}
    if isinstance(space, MatrixGroup):
        kk = space.size
        while not matrices.q_is_invertible(
            tuple(tuple(shared[frozenset()][i * kk + j2] for j2 in range(kk)) for i in range(kk))
        ):
            shared[frozenset()] = rand_vec()
    deltas = {side: rand_vec(), top: rand_vec()}
    plus_flat, minus_flat = [], []
    for i in range(dim):
        coeffs_plus = {m: shared[m][i] for m in shared}
        coeffs_minus = dict(coeffs_plus)
        for m, delta in deltas.items():
            coeffs_minus[m] = coeffs_minus[m] - delta[i]
        plus_flat.append(WeilElement(D3, coeffs_plus))
        minus_flat.append(WeilElement(D3, coeffs_minus))
    return _point_from_flat(space, D3, plus_flat), _point_from_flat(space, D3, minus_flat)


def _law_relative_difference_equivalence(env: LawEnv, trial: int) -> None:
    rng = env.rng("relative-difference-equivalence", trial)
    for space in _spaces_for(env.config):
        for axis in (1, 2, 3):
            plus, minus = _rand_cube_pair(rng, space, env.config.coeff_bound, axis)
            fast = relative_strong_difference(axis, plus, minus)
            slow = relative_strong_difference_curried(axis, plus, minus)
            if fast != slow:
                raise _fail(trial, space=space, axis=axis, plus=plus, minus=minus)


_SIX_KEYS = ("123", "132", "213", "231", "312", "321")
_C12_CLASS = {"123": 0, "132": 0, "312": 0, "321": 1, "231": 1, "213": 1}
_C23_CLASS = {"123": 0, "213": 0, "231": 0, "132": 1, "312": 1, "321": 1}
_C13_CLASS = {"123": 0, "132": 0, "213": 0, "312": 1, "321": 1, "231": 1}


def _rand_compatible_six(rng: random.Random, bound: int) -> dict[str, WPoint]:
    """Six microcubes in 3-space satisfying all well-definedness preconditions.

    The agreement constraints leave free: the shared low coefficients, one
    pair of values for each two-generator monomial (split along the pinned
    classes), and six independent top coefficients.
    """
    space = AffineSpace(3)

    def rand_vec():
        return [Fraction(_rand_int(rng, bound)) for _ in range(3)]

    shared = {m: rand_vec() for m in (frozenset(), frozenset({1}), frozenset({2}), frozenset({3}))}
    c12 = (rand_vec(), rand_vec())
    c23 = (rand_vec(), rand_vec())
    c13 = (rand_vec(), rand_vec())
    tops = {key: rand_vec() for key in _SIX_KEYS}
    cubes = {}
    for key in _SIX_KEYS:
        flats = []
        for i in range(3):
            coeffs = {m: shared[m][i] for m in shared}
            coeffs[frozenset({1, 2})] = c12[_C12_CLASS[key]][i]
            coeffs[frozenset({2, 3})] = c23[_C23_CLASS[key]][i]
            coeffs[frozenset({1, 3})] = c13[_C13_CLASS[key]][i]
            coeffs[frozenset({1, 2, 3})] = tops[key][i]
            flats.append(WeilElement(D3, coeffs))
        cubes[key] = WPoint(space, D3, tuple(flats))
    return cubes


def _general_jacobi_expressions(cubes: dict[str, WPoint]) -> tuple[Tangent, Tangent, Tangent]:
    e1 = strong_difference(
        relative_strong_difference(1, cubes["123"], cubes["132"]),
        relative_strong_difference(1, cubes["231"], cubes["321"]),
    )
    e2 = strong_difference(
        relative_strong_difference(2, cubes["231"], cubes["213"]),
        relative_strong_difference(2, cubes["312"], cubes["132"]),
    )
    e3 = strong_difference(
        relative_strong_difference(3, cubes["312"], cubes["321"]),
        relative_strong_difference(3, cubes["123"], cubes["213"]),
    )
    return e1, e2, e3


def _law_general_jacobi_random(env: LawEnv, trial: int) -> None:
    rng = env.rng("general-jacobi-random", trial)
    cubes = _rand_compatible_six(rng, env.config.coeff_bound)
    e1, e2, e3 = _general_jacobi_expressions(cubes)
    total = tangent_combine(tangent_combine(e1, e2), e3)
    if not total.is_zero:
        raise _fail(trial, total=total, **{k: cubes[k] for k in _SIX_KEYS})


# -- second Jacobi route ------------------------------------------------------------------------------


def _law_sigma_convention(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("sigma-convention", trial)
    cubes = liealg.six_microcubes(x, y, z)
    d1 = WeilElement.generator(D3, 1)
    d2 = WeilElement.generator(D3, 2)
    d3 = WeilElement.generator(D3, 3)
    flows = {1: section_at(x, d1), 2: section_at(y, d2), 3: section_at(z, d3)}
    for key, cube in zip(_SIX_KEYS, cubes):
        a, b, c = (int(ch) for ch in key)
        word = star(flows[c], star(flows[b], flows[a]))
        if cube != word:
            raise _fail(trial, X=x, Y=y, Z=z, cube=key)


def _law_lambda_witness(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("lambda-witness", trial)
    liealg.lambda_witness(x, y)  # substitution checks run inside


def _law_bracket_strong_difference(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("bracket-strong-difference", trial)
    via_difference = liealg.bracket_via_strong_difference(x, y)
    via_commutator = env.bracket_fn(x, y)
    if via_difference != via_commutator:
        raise _fail(trial, X=x, Y=y, difference_route=via_difference, commutator_route=via_commutator)


def _six_cube_tangents(env: LawEnv, x, y, z):
    cubes = liealg.six_microcubes(x, y, z)
    nested = (
        liealg.bracket(x, liealg.bracket(y, z)),
        liealg.bracket(y, liealg.bracket(z, x)),
        liealg.bracket(z, liealg.bracket(x, y)),
    )
    d = WeilElement.generator(LINE, 1)
    chart = SectionChart.for_sections(*cubes, *(section_at(b, d) for b in nested))
    points = {key: chart.to_point(cube) for key, cube in zip(_SIX_KEYS, cubes)}
    expressions = _general_jacobi_expressions(points)
    targets = tuple(liealg.section_as_tangent(b, chart) for b in nested)
    return expressions, targets


def _law_six_cube_identities(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("six-cube-identities", trial)
    expressions, targets = _six_cube_tangents(env, x, y, z)
    labels = ("[X,[Y,Z]]", "[Y,[Z,X]]", "[Z,[X,Y]]")
    for label, expr, target in zip(labels, expressions, targets):
        if expr != target:
            raise _fail(trial, X=x, Y=y, Z=z, identity=label, expression=expr, bracket=target)


def _law_six_cube_jacobi(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("six-cube-jacobi", trial)
    expressions, _ = _six_cube_tangents(env, x, y, z)
    total = tangent_combine(tangent_combine(expressions[0], expressions[1]), expressions[2])
    if not total.is_zero:
        raise _fail(trial, X=x, Y=y, Z=z, total=total)


# -- degeneration oracles ------------------------------------------------------------------------------


def _law_oracle_self_consistency(env: LawEnv, trial: int) -> None:
    x, y, z = env.triple("oracle-self-consistency", trial)
    g = env.config.groupoid
    if isinstance(g, PairGroupoid):
        fx = oracles.PolyVectorField(x.data)
        fy = oracles.PolyVectorField(y.data)
        fz = oracles.PolyVectorField(z.data)
        br = oracles.classical_vf_bracket
        anti = br(fx, fy).components == tuple(-c for c in br(fy, fx).components)
        jac = all(
            not (a + b + c)
            for a, b, c in zip(
                br(fx, br(fy, fz)).components,
                br(fy, br(fz, fx)).components,
                br(fz, br(fx, fy)).components,
            )
        )
    else:
        br = oracles.matrix_table_bracket
        anti = br(x.data, y.data) == tuple(matrices.neg(t) for t in br(y.data, x.data))
        jacobi_sum = tuple(
            matrices.add(matrices.add(a, b), c)
            for a, b, c in zip(
                br(x.data, br(y.data, z.data)),
                br(y.data, br(z.data, x.data)),
                br(z.data, br(x.data, y.data)),
            )
        )
        jac = all(matrices.is_zero(t) for t in jacobi_sum)
    if not (anti and jac):
        raise _fail(trial, X=x, Y=y, Z=z, antisymmetry=anti, jacobi=jac)


def _law_bracket_degeneration(env: LawEnv, trial: int) -> None:
    x, y, _ = env.triple("bracket-degeneration", trial)
    ours = env.bracket_fn(x, y)
    g = env.config.groupoid
    if isinstance(g, PairGroupoid):
        expected = oracles.classical_vf_bracket(
            oracles.PolyVectorField(x.data), oracles.PolyVectorField(y.data)
        ).components
    else:
        expected = oracles.matrix_table_bracket(x.data, y.data)
    if ours.data != expected:
        raise _fail(trial, X=x, Y=y, groupoid_bracket=ours, classical=expected)


# -- registry and runner ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Law:
    name: str
    anchor: str
    run: Callable[[LawEnv, int], None]


SUITES: dict[str, tuple[Law, ...]] = {
    "flows": (
        Law("flow-zero", "flow law: the flow at 0 is the identity section", _law_flow_zero),
        Law("flow-additivity", "flow law: additivity over the commuting square", _law_flow_additivity),
        Law("flow-inverse", "inverse law: X_d * X_{-d} = id", _law_flow_inverse),
        Law("bisection-inverse", "inverse law: invert(X_d) = X_{-d}", _law_bisection_inverse),
    ),
    "module": (
        Law("addition-flow", "module law: (X+Y)_d = X_d * Y_d = Y_d * X_d", _law_addition_flow),
        Law(
            "infinitesimal-commutation",
            "module law: X_{d1} and Y_{d2} commute on the commuting square",
            _law_infinitesimal_commutation,
        ),
        Law("scaling-flow", "module law: (aX)_d = X_{ad}", _law_scaling_flow),
        Law(
            "two-sided-inverse",
            "bisection group law: sigma and its inverse compose to id both ways",
            _law_two_sided_inverse,
        ),
        Law(
            "star-defining-formula",
            "section product: (sigma*rho)(x) = sigma(beta(rho(x))) . rho(x)",
            _law_star_defining_formula,
        ),
        Law("star-associativity", "section monoid: associativity and identity", _law_star_associativity),
        Law(
            "beta-functoriality",
            "target maps compose: beta(sigma*rho) = beta(sigma) o beta(rho)",
            _law_beta_functoriality,
        ),
        Law("ring-laws", "engine: exact ring laws of the nilpotent algebra", _law_ring_laws),
        Law(
            "substitution-homomorphism",
            "engine: generator substitution is an algebra homomorphism",
            _law_substitution_homomorphism,
        ),
        Law(
            "restriction-composition",
            "engine: coarsening twice equals coarsening once",
            _law_restriction_composition,
        ),
    ),
    "bracket": (
        Law("commutator-axes", "commutator square restricts to id on both axes", _law_commutator_axes),
        Law(
            "bracket-definition",
            "bracket flow at d1*d2 equals the commutator square",
            _law_bracket_definition,
        ),
        Law("bracket-scaling", "Lie algebra law: [aX,Y] = a[X,Y]", _law_bracket_scaling),
        Law("bracket-additivity", "Lie algebra law: [X+Y,Z] = [X,Z] + [Y,Z]", _law_bracket_additivity),
        Law("bracket-antisymmetry", "Lie algebra law: [X,Y] = -[Y,X]", _law_bracket_antisymmetry),
        Law("jacobi-identity", "Lie algebra law: the Jacobi identity", _law_jacobi_identity),
    ),
    "liederiv": (
        Law(
            "lie-derivative-equals-bracket",
            "Lie derivative theorem: L_X Y = [X,Y]",
            _law_lie_derivative_equals_bracket,
        ),
        Law("leibniz-rule", "Leibniz rule: L_X[Y,Z] = [L_X Y, Z] + [Y, L_X Z]", _law_leibniz_rule),
        Law("pushforward-identity", "pushforward along the identity bisection", _law_pushforward_identity),
        Law(
            "pushforward-bracket",
            "pushforward distributes over the bracket",
            _law_pushforward_bracket,
        ),
        Law("derived-jacobi", "Jacobi identity, Leibniz form", _law_derived_jacobi),
    ),
    "strongdiff": (
        Law("cocycle-identity", "cocycle law for microsquare differences", _law_cocycle_identity),
        Law("axis-recovery", "strong difference recovers the top coefficient", _law_axis_recovery),
        Law(
            "relative-difference-equivalence",
            "relativized difference: coefficient rule vs curried definition",
            _law_relative_difference_equivalence,
        ),
        Law(
            "general-jacobi-random",
            "general Jacobi law on compatible six-tuples of microcubes",
            _law_general_jacobi_random,
        ),
    ),
    "jacobi2": (
        Law(
            "sigma-convention",
            "permutation action: the pinned argument convention on flow cubes",
            _law_sigma_convention,
        ),
        Law(
            "lambda-witness",
            "second Jacobi route: witness on the restricted cube domain",
            _law_lambda_witness,
        ),
        Law(
            "bracket-strong-difference",
            "second Jacobi route: [X,Y] as a strong difference of flow squares",
            _law_bracket_strong_difference,
        ),
        Law(
            "six-cube-identities",
            "second Jacobi route: the three nested-bracket identities",
            _law_six_cube_identities,
        ),
        Law("six-cube-jacobi", "general Jacobi law on the six flow cubes", _law_six_cube_jacobi),
    ),
    "oracle": (
        Law(
            "oracle-self-consistency",
            "classical oracle: antisymmetry and Jacobi hold",
            _law_oracle_self_consistency,
        ),
        Law(
            "bracket-degeneration",
            "degeneration: groupoid bracket equals the classical bracket",
            _law_bracket_degeneration,
        ),
    ),
}


def _default_bracket(x: AGSection, y: AGSection) -> AGSection:
    return liealg.bracket(x, y)


def _mutated_bracket(x: AGSection, y: AGSection) -> AGSection:
    return liealg.scale_section(-1, liealg.bracket(x, y))


def run_suite(config: SuiteConfig, mutation: str = "none") -> Report:
    """Execute every law of the configured suite; exact equality throughout."""
    if mutation not in MUTATIONS:
        raise ConfigError(f"unknown mutation {mutation!r}; expected one of {MUTATIONS}")
    bracket_fn = _mutated_bracket if mutation == "flip-bracket-sign" else _default_bracket
    suite_ids = SUITE_IDS if config.suite == "all" else (config.suite,)
    report = Report(config.suite, config.groupoid_spec, config.seed, config.trials)
    for suite_id in suite_ids:
        env = LawEnv(config, suite_id, bracket_fn)
        for law in SUITES[suite_id]:
            if config.trials == 0:
                continue
            record = CaseRecord(law.name, law.anchor, "pass")
            for trial in range(config.trials):
                try:
                    law.run(env, trial)
                except LawViolation as violation:
                    record.status = "fail"
                    record.counterexample = violation.details
                    break
                except Exception as exc:  # precondition failures are suite failures
                    record.status = "fail"
                    record.counterexample = {"trial": trial, "error": f"{type(exc).__name__}: {exc}"}
                    break
            report.cases.append(record)
    return report
