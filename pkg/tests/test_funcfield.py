import random

import pytest
from hypothesis import given, settings, strategies as st

from gquadforms.funcfield import (
    Place,
    Poly,
    RatFunc,
    SquareClass,
    hilbert_symbol,
    is_local_square,
    quadratic_character,
    smallest_nonsquare,
    sqrt_of_square,
    square_class,
    support,
    valuation,
)

P = 3


def poly(s):
    return Poly.from_string(P, s)


def rf(s):
    return RatFunc.from_string(P, s)


# ---------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------


def test_parse_and_format_round_trip():
    for s in ("t^2+2*t+1", "2", "t", "t^3+t", "2*t^2+1"):
        assert str(poly(s)) == s
    assert poly("1 + 2*t + t^2") == poly("t^2+2*t+1")
    assert poly("t^2 - 1") == poly("t^2+2")


def test_zero_polynomial_degree_sentinel():
    assert Poly.zero(P).degree == -1
    assert Poly.one(P).degree == 0


def test_divmod_and_gcd():
    f = poly("t^3+2*t+1")
    g = poly("t+1")
    q, r = divmod(f, g)
    assert q * g + r == f
    assert poly("t^2+2*t").gcd(poly("t^2+t")) == poly("t")


def test_factor_spec_examples():
    lead, fac = poly("t").factor()
    assert lead == 1 and fac == [(poly("t"), 1)]
    # t^2+1 irreducible over F_3: exhaustive root search finds none
    f = poly("t^2+1")
    assert all(f.evaluate(x) != 0 for x in range(3))
    assert f.is_irreducible()
    assert f.factor() == (1, [(f, 1)])
    # (t-1)(t-2)
    lead, fac = poly("t^2-3*t+2").factor()
    assert lead == 1
    assert [g for g, _ in fac] == [poly("t+1"), poly("t+2")]


def test_factor_zero_errors():
    with pytest.raises(ValueError, match="zero"):
        Poly.zero(P).factor()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=7))
def test_factor_reconstructs_product(coeffs):
    f = Poly(P, coeffs)
    if f.is_zero():
        return
    lead, fac = f.factor()
    prod = Poly.const(P, lead)
    for g, e in fac:
        assert g.is_monic() and g.is_irreducible()
        prod = prod * g**e
    assert prod == f


def test_factor_deterministic_order():
    f = poly("t^6+2*t^4+t^2+2")  # multiple factors
    assert f.factor() == f.factor()


def test_pth_power_factorization():
    f = poly("t^2+1") ** 3
    assert f.factor() == (1, [(poly("t^2+1"), 3)])


# ---------------------------------------------------------------------
# rational functions and valuations
# ---------------------------------------------------------------------


def test_ratfunc_canonical_form():
    a = RatFunc(poly("2*t^2+2*t"), poly("2*t"))
    assert str(a) == "t+1"
    assert rf("t/t").is_one()


def test_valuation_spec_examples():
    vt = Place.finite(poly("t"))
    vinf = Place.infinity(P)
    assert valuation(rf("t"), vt) == 1
    assert valuation(rf("t"), vinf) == -1
    c = rf("t-1") / (rf("t-2") ** 2)
    assert valuation(c, Place.from_string(P, "t-2")) == -2
    assert valuation(RatFunc.zero(P), vt) == float("inf")


def test_is_local_square_spec_examples():
    vt = Place.finite(poly("t"))
    assert not is_local_square(rf("t"), vt)  # odd valuation
    assert not is_local_square(rf("-1"), vt)  # squares of F_3 are {0, 1}
    v2 = Place.from_string(P, "t^2+1")
    assert is_local_square(rf("-1"), v2)  # t^2 = -1 in F_9
    with pytest.raises(ValueError):
        is_local_square(RatFunc.zero(P), vt)


def test_quadratic_character_spec_examples():
    vt = Place.finite(poly("t"))
    v2 = Place.from_string(P, "t^2+1")
    assert quadratic_character(Poly.one(P), vt) == 1
    assert quadratic_character(Poly.const(P, -1), vt) == -1
    assert quadratic_character(Poly.const(P, -1), v2) == 1
    assert quadratic_character(Poly.zero(P), vt) == 0


# ---------------------------------------------------------------------
# Hilbert symbols
# ---------------------------------------------------------------------


def test_symbol_spec_examples():
    vt = Place.finite(poly("t"))
    vinf = Place.infinity(P)
    a, b = rf("-1"), rf("t")
    assert hilbert_symbol(RatFunc.one(P), b, vt) == 1
    assert hilbert_symbol(a, b, vt) == -1
    assert hilbert_symbol(a, b, vinf) == -1
    with pytest.raises(ValueError):
        hilbert_symbol(RatFunc.zero(P), b, vt)


def test_support_spec_examples():
    assert [str(v) for v in support(rf("-1"), rf("t"))] == ["t", "inf"]
    b = rf("t-1") * rf("t-2")
    assert [str(v) for v in support(rf("-1"), b)] == ["t+1", "t+2", "inf"]
    assert [str(v) for v in support(RatFunc.one(P), RatFunc.one(P))] == ["inf"]


def _random_rf(rng, maxdeg=3):
    while True:
        num = Poly(P, [rng.randrange(P) for _ in range(rng.randrange(1, maxdeg + 2))])
        den = Poly(P, [rng.randrange(P) for _ in range(rng.randrange(1, maxdeg + 2))])
        if not num.is_zero() and not den.is_zero():
            return RatFunc(num, den)


def test_product_formula_random():
    rng = random.Random(20240817)
    for _ in range(60):
        a, b = _random_rf(rng), _random_rf(rng)
        prod = 1
        for v in support(a, b):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1


def test_symbol_bilinear_symmetric():
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = _random_rf(rng, 2), _random_rf(rng, 2), _random_rf(rng, 2)
        places = set(support(a, b * c)) | set(support(a, b)) | set(support(a, c))
        for v in places:
            assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        for v in support(a, -a):
            assert hilbert_symbol(a, -a, v) == 1


def test_local_square_forces_trivial_symbol():
    rng = random.Random(9)
    for _ in range(20):
        a, b = _random_rf(rng, 2), _random_rf(rng, 2)
        for v in support(a, b):
            if is_local_square(a, v):
                assert hilbert_symbol(a, b, v) == 1


# ---------------------------------------------------------------------
# square classes
# ---------------------------------------------------------------------


def test_square_class_canonicalization():
    assert smallest_nonsquare(P) == 2
    sc = square_class(rf("2*t^2"))
    assert sc.nonsquare_unit and sc.squarefree.is_one()
    assert square_class(rf("t") * rf("t")).is_trivial()
    sc2 = square_class(rf("t") * rf("t-1"))
    assert str(sc2.squarefree) == "t^2+2*t"


def test_square_class_multiplicative_idempotent():
    rng = random.Random(3)
    for _ in range(25):
        a, b = _random_rf(rng, 2), _random_rf(rng, 2)
        ca, cb = square_class(a), square_class(b)
        assert ca * cb == square_class(a * b)
        assert square_class(ca.representative()) == ca


def test_sqrt_of_square():
    rng = random.Random(4)
    for _ in range(15):
        a = _random_rf(rng, 2)
        r = sqrt_of_square(a * a)
        assert r * r == a * a
    with pytest.raises(ValueError):
        sqrt_of_square(rf("t"))
