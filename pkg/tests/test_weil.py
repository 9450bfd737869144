from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from microlie.weil import (
    DomainMismatchError,
    InfinitesimalDomain,
    RestrictionError,
    SubstitutionError,
    WeilElement,
    ZeroMonomialError,
    generators,
)

D = InfinitesimalDomain.line()
D2 = InfinitesimalDomain.power(2)
D3 = InfinitesimalDomain.power(3)
A2 = InfinitesimalDomain.first_order(2)
W3 = InfinitesimalDomain(3, [(1, 3), (2, 3)])


def w(domain, coeffs):
    return WeilElement(domain, coeffs)


class TestDomain:
    def test_named_constructors(self):
        assert D.generator_count == 1 and not D.zero_monomials
        assert D2.generator_count == 2 and not D2.zero_monomials
        assert A2.zero_monomials == frozenset({frozenset({1, 2})})
        assert W3.zero_monomials == frozenset({frozenset({1, 3}), frozenset({2, 3})})

    def test_product_of_domains(self):
        prod = InfinitesimalDomain.product(A2, D)
        assert prod.generator_count == 3
        assert prod.zero_monomials == frozenset({frozenset({1, 2})})

    def test_minimal_antichain(self):
        dom = InfinitesimalDomain(3, [(1, 3), (1, 2, 3)])
        assert dom.zero_monomials == frozenset({frozenset({1, 3})})
        # upward closure via membership, not storage
        assert dom.is_zero_monomial(frozenset({1, 2, 3}))

    def test_singletons_rejected(self):
        with pytest.raises(ValueError):
            InfinitesimalDomain(2, [(1,)])

    def test_monomials_enumeration(self):
        assert set(W3.monomials()) == {
            frozenset(),
            frozenset({1}),
            frozenset({2}),
            frozenset({3}),
            frozenset({1, 2}),
        }
        assert W3.nilpotency_order == 3


class TestArithmetic:
    def test_add(self):
        d = WeilElement.generator(D, 1)
        assert w(D, {(): 2}) + 3 * d + (w(D, {(): 1}) - d) == w(D, {(): 3, (1,): 2})

    def test_add_identity(self):
        x = w(D2, {(): 1, (1, 2): -4})
        assert x + WeilElement.zero(D2) == x

    def test_add_over_first_order(self):
        d1, d2 = generators(A2)
        assert d1 + d2 == w(A2, {(1,): 1, (2,): 1})

    def test_mul_square_zero(self):
        d = WeilElement.generator(D, 1)
        a = w(D, {(): 2}) + 3 * d
        b = w(D, {(): 5}) + 7 * d
        assert a * b == w(D, {(): 10, (1,): 29})

    def test_mul_distributes_across_generators(self):
        d1, d2 = generators(D2)
        a = WeilElement.one(D2) + 2 * d1
        b = w(D2, {(): 3}) + d2
        assert a * b == w(D2, {(): 3, (1,): 6, (2,): 1, (1, 2): 2})

    def test_mul_kills_zero_monomial(self):
        d1, d2 = generators(A2)
        assert (WeilElement.one(A2) + d1) * (WeilElement.one(A2) + d2) == w(
            A2, {(): 1, (1,): 1, (2,): 1}
        )

    def test_scale(self):
        d = WeilElement.generator(D, 1)
        assert 3 * (WeilElement.one(D) + d) == w(D, {(): 3, (1,): 3})
        assert 0 * w(D2, {(1,): 5}) == WeilElement.zero(D2)
        assert -1 * w(D2, {(1,): 1, (1, 2): 1}) == w(D2, {(1,): -1, (1, 2): -1})

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatchError):
            WeilElement.one(D) + WeilElement.one(D2)
        with pytest.raises(DomainMismatchError):
            WeilElement.one(D) * WeilElement.one(A2)

    def test_inverse(self):
        a = w(W3, {(): 2, (1,): 3, (1, 2): -1})
        assert a * a.inverse() == WeilElement.one(W3)
        with pytest.raises(ZeroDivisionError):
            w(D, {(1,): 1}).inverse()


class TestRestrict:
    def test_kills_new_zeros(self):
        x = w(D2, {(): 1, (1,): 1, (1, 2): 5})
        assert x.restrict(A2) == w(A2, {(): 1, (1,): 1})

    def test_same_domain_identity(self):
        x = w(D2, {(1, 2): 7})
        assert x.restrict(D2) == x

    def test_to_restricted_cube(self):
        x = w(D3, {(1, 3): 1})
        assert x.restrict(W3) == WeilElement.zero(W3)

    def test_illegal_coarsening(self):
        with pytest.raises(RestrictionError):
            w(A2, {(1,): 1}).restrict(D2)  # D^2 does not coarsen D(2)

    def test_extend_round_trip(self):
        x = w(A2, {(): 2, (2,): -3})
        assert x.extend(D2).restrict(A2) == x


class TestSubstitute:
    def test_linear_into_first_order(self):
        a = w(D, {(): 4, (1,): 5})
        d1, d2 = generators(A2)
        assert a.substitute(A2, [d1 + d2]) == w(A2, {(): 4, (1,): 5, (2,): 5})

    def test_cube_generator_to_product(self):
        c = Fraction(3, 2)
        a = w(W3, {(3,): c})
        d1, d2 = generators(D2)
        assert a.substitute(D2, [d1, d2, d1 * d2]) == w(D2, {(1, 2): c})

    def test_invalid_map_names_relation(self):
        a = w(D, {(): 2, (1,): 3})
        d1, d2 = generators(D2)
        with pytest.raises(SubstitutionError, match="d1\\^2"):
            a.substitute(D2, [d1 + d2])

    def test_nonzero_scalar_part_rejected(self):
        a = w(D, {(1,): 1})
        with pytest.raises(SubstitutionError, match="scalar part"):
            a.substitute(D2, [WeilElement.one(D2)])

    def test_zero_monomial_relation_checked(self):
        a = w(W3, {(1,): 1})
        d1, d2, d3 = generators(D3)
        with pytest.raises(SubstitutionError, match="d1\\*d3"):
            a.substitute(D3, [d1, d2, d3])


class TestCoefficient:
    def test_lookup(self):
        x = w(D2, {(): 3, (1,): 6, (1, 2): 2})
        assert x.coefficient({1, 2}) == 2
        assert x.coefficient(()) == 3
        assert WeilElement.zero(D2).coefficient({1}) == 0

    def test_zero_monomial_errors(self):
        with pytest.raises(ZeroMonomialError):
            WeilElement.one(A2).coefficient({1, 2})
        with pytest.raises(ZeroMonomialError):
            WeilElement(A2, {(1, 2): 1})

    def test_permute_generators(self):
        x = w(D3, {(1,): 1, (2, 3): 5})
        y = x.permute_generators((2, 3, 1))
        assert y == w(D3, {(2,): 1, (1, 3): 5})


DOMAINS = (D, D2, A2, D3, W3)


def elements(domain):
    monos = domain.monomials()
    coeff = st.integers(min_value=-4, max_value=4)
    return st.fixed_dictionaries({m: coeff for m in monos}).map(lambda c: WeilElement(domain, c))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(DOMAINS).flatmap(lambda d: st.tuples(elements(d), elements(d), elements(d))))
def test_ring_laws(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(elements(A2), elements(A2), st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_is_homomorphism(a, b, r1, r2):
    d = WeilElement.generator(D, 1)
    images = [r1 * d, r2 * d]  # valid: the product of the images vanishes since d^2 = 0
    assert (a * b).substitute(D, images) == a.substitute(D, images) * b.substitute(D, images)
    assert (a + b).substitute(D, images) == a.substitute(D, images) + b.substitute(D, images)


@settings(max_examples=40, deadline=None)
@given(elements(D3))
def test_restrict_composes(a):
    mid = InfinitesimalDomain(3, [(1, 2)])
    coarse = InfinitesimalDomain.first_order(3)
    assert a.restrict(mid).restrict(coarse) == a.restrict(coarse)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(DOMAINS).flatmap(elements))
def test_generator_squares_vanish(a):
    domain = a.domain
    for g in generators(domain):
        assert not (g * g)
    for z in domain.zero_monomials:
        prod = WeilElement.one(domain)
        for i in sorted(z):
            prod = prod * WeilElement.generator(domain, i)
        assert not prod
