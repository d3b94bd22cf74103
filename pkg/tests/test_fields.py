from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from veronese_lab.errors import DivisionByZero
from veronese_lab.fields import (
    QQ,
    ExtensionField,
    PrimeField,
    UniPoly,
    extension_field,
    factor_univariate,
    is_irreducible,
    minimal_polynomial,
    random_irreducible,
    roots_in_extension,
)

F7 = PrimeField(7)
F5 = PrimeField(5)
F25 = ExtensionField(F5, [2, 0, 1])  # t^2 + 2
P = PrimeField(32003)
L4 = extension_field(32003, 4, seed=1)
F49 = extension_field(7, 2, seed=3)
F8 = extension_field(2, 3, seed=0)

FIELDS = [F7, P, F25, L4, QQ]


def test_inverse_in_f7():
    assert F7.inv(3) == 5


def test_rational_sum():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_extension_square_of_t():
    t = (0, 1)
    assert F25.mul(t, t) == (3, 0)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F7.inv(0)
    with pytest.raises(DivisionByZero):
        QQ.div(1, 0)
    with pytest.raises(DivisionByZero):
        F25.inv(F25.zero)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(32001)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        ExtensionField(F5, [4, 0, 1])  # x^2 - 1


def test_field_descriptor_strings():
    assert str(P) == "F(32003)"
    assert str(QQ) == "QQ"
    assert str(F25) == "F(5^2; t^2+2)"


def test_element_operators():
    a = F7(3)
    assert a * 5 == 1
    assert (a / a) == 1
    assert a**6 == 1  # Fermat
    assert -a == 4


def _elements(draw, K):
    if K is QQ:
        return Fraction(draw(st.integers(-50, 50)), draw(st.integers(1, 50)))
    if isinstance(K, ExtensionField):
        return tuple(draw(st.integers(0, K.p - 1)) for _ in range(K.k))
    return draw(st.integers(0, K.p - 1))


@st.composite
def field_triples(draw):
    K = draw(st.sampled_from(FIELDS))
    return K, _elements(draw, K), _elements(draw, K), _elements(draw, K)


@settings(max_examples=1000, deadline=None)
@given(field_triples())
def test_field_axioms(data):
    K, a, b, c = data
    a, b, c = K.convert(a), K.convert(b), K.convert(c)
    assert K.add(a, b) == K.add(b, a)
    assert K.mul(a, b) == K.mul(b, a)
    assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
    assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.sub(K.add(a, b), b) == a
    if not K.is_zero(a):
        assert K.mul(a, K.inv(a)) == K.one
        assert K.mul(K.div(b, a), a) == b


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([F25, L4, F49, F8]), st.data())
def test_frobenius_is_a_field_morphism(L, data):
    a = L.convert(_elements(data.draw, L))
    b = L.convert(_elements(data.draw, L))
    F = L.frobenius
    assert F(L.add(a, b)) == L.add(F(a), F(b))
    assert F(L.mul(a, b)) == L.mul(F(a), F(b))
    assert F(a) == L.pow(a, L.p)
    assert F(a, L.k) == a


# -- factorization ----------------------------------------------------------


def _expand(K, factors, f):
    out = UniPoly(K, [f.lc])
    for g, e in factors:
        out = out * g**e
    return out


def _monic_polys(K, degree):
    for coeffs in product(range(K.p), repeat=degree):
        yield UniPoly(K, list(coeffs) + [1])


def test_x2_plus_1_over_f5():
    f = UniPoly(F5, [1, 0, 1])
    facs = factor_univariate(f, rng=0)
    assert sorted(g.coeffs for g, _ in facs) == [(2, 1), (3, 1)]


def test_x2_plus_1_over_f7_irreducible():
    f = UniPoly(F7, [1, 0, 1])
    assert factor_univariate(f, rng=0) == [(f, 1)]


def test_mixed_multiplicities_against_trial_division():
    x = UniPoly.x(F5)
    f = (x - 1) ** 3 * (x * x + x + 1)
    facs = factor_univariate(f, rng=0)
    assert sorted((g.coeffs, e) for g, e in facs) == [((1, 1, 1), 1), ((4, 1), 3)]
    # oracle: divide out every monic polynomial of degree <= 2 as often as it goes
    found = []
    rest = f
    for deg in (1, 2):
        for g in _monic_polys(F5, deg):
            e = 0
            while (rest % g).is_zero():
                rest = rest // g
                e += 1
            if e:
                found.append((g.coeffs, e))
    assert sorted(found) == [((1, 1, 1), 1), ((4, 1), 3)]
    assert rest.degree == 0


def test_constant_has_no_factors():
    assert factor_univariate(UniPoly(F7, [3]), rng=0) == []


@st.composite
def small_polys(draw):
    K = draw(st.sampled_from([PrimeField(2), F5, F7, PrimeField(101), F25, F49]))
    n = draw(st.integers(1, 7))
    coeffs = [K.convert(_elements(draw, K)) for _ in range(n)]
    lead = _elements(draw, K)
    lead = K.convert(lead)
    if K.is_zero(lead):
        lead = K.one
    return UniPoly(K, coeffs + [lead])


def _all_elements(K):
    if isinstance(K, ExtensionField):
        return [tuple(c) for c in product(range(K.p), repeat=K.k)]
    return list(range(K.p))


@settings(max_examples=1000, deadline=None)
@given(small_polys(), st.integers(0, 2**32))
def test_factorization_round_trip(f, seed):
    K = f.field
    facs = factor_univariate(f, rng=seed)
    assert _expand(K, facs, f) == f
    elements = _all_elements(K)
    for g, e in facs:
        assert e >= 1
        assert g.lc == K.one
        if g.degree > 1:
            assert all(not K.is_zero(g(a)) for a in elements)


def test_random_irreducible_examples():
    f = random_irreducible(5, 1, seed=0)
    assert f.degree == 1 and f.lc == 1
    g = random_irreducible(5, 2, seed=0)
    assert g.degree == 2 and g.lc == 1
    assert all(g(a) != 0 for a in range(5))
    h = random_irreducible(2, 3, seed=4)
    assert h.coeffs in {(1, 1, 0, 1), (1, 0, 1, 1)}


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_random_irreducible_is_irreducible(k):
    f = random_irreducible(32003, k, seed=k)
    assert f.degree == k
    assert is_irreducible(f)
    assert factor_univariate(f, rng=0) == [(f, 1)]
    assert random_irreducible(32003, k, seed=k) == f  # determinism


def test_roots_and_minimal_polynomial():
    f = random_irreducible(32003, 4, seed=9)
    L = ExtensionField(P, f)
    roots = roots_in_extension(f, L, rng=0)
    assert len(set(roots)) == 4
    for r in roots:
        assert L.is_zero(UniPoly(L, [L.convert(c) for c in f.coeffs])(r))
        assert minimal_polynomial(L, r) == f


def test_sqrt_in_prime_field():
    r = P.sqrt(4)
    assert P.mul(r, r) == 4
