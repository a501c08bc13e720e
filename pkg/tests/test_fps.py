import pytest
from hypothesis import given, strategies as st

from wpverify.errors import NonUnitError, ValuationError
from wpverify.exact import ONE, ZERO, rational as R
from wpverify.fps import (LaurentSeries as S, count_terms, product_terms, series_add, series_inv,
                          series_mul, series_subst_monomial, sum_terms)


def ser(d, N):
    return S.from_dict({e: R(c) for e, c in d.items()}, N)


def coeffs(s, upto=None):
    hi = s.order if upto is None else upto
    return {e: s[e] for e in range(min(s.lower, 0), hi + 1) if s[e]}


def test_add_examples():
    N = 5
    assert series_add(ser({0: 1, 1: 1}, N), ser({0: 1, 1: -1}, N)) == ser({0: 2}, N)
    x = ser({0: 1, 2: 3}, N)
    assert series_add(x, S.zero(N)) == x
    y = series_add(ser({-1: 1, 0: 1}, N), ser({0: 1, 1: 1}, N))
    assert coeffs(y) == {-1: 1, 0: 2, 1: 1}


def test_mul_examples():
    N = 8
    geo = S([ONE] * (N + 1), 0, N)
    assert series_mul(ser({0: 1, 1: -1}, N), geo) == ser({0: 1}, N)
    assert coeffs(series_mul(ser({0: 1, 1: -1}, N), ser({0: 1, 2: -1}, N))) == {0: 1, 1: -1, 2: -1, 3: 1}
    assert coeffs(series_mul(ser({-1: 1}, N), ser({1: 1, 2: 1}, N))) == {0: 1, 1: 1}


def test_inverse_examples():
    N = 6
    inv = series_inv(ser({0: 1, 1: -1}, N))
    assert all(inv[e] == 1 for e in range(N + 1))
    assert coeffs(series_inv(ser({1: 1}, N))) == {-1: 1}
    inv3 = series_inv(ser({0: 1, 1: -3}, N))
    assert [inv3[e] for e in range(4)] == [1, 3, 9, 27]
    assert series_mul(inv3, ser({0: 1, 1: -3}, N)) == S.constant(ONE, N)


def test_inverse_of_zero_raises():
    with pytest.raises(NonUnitError):
        series_inv(S.zero(5))


def test_subst_examples():
    assert coeffs(series_subst_monomial(ser({0: 1, 1: 1}, 3), 1, 2)) == {0: 1, 2: 1}
    assert coeffs(series_subst_monomial(ser({0: 1, 1: 1, 2: 1}, 4), -1, 1)) == {0: 1, 1: -1, 2: 1}
    assert coeffs(series_subst_monomial(ser({-1: 1}, 3), 2, 1)) == {-1: R(1, 2)}


def test_subst_order():
    x = series_subst_monomial(ser({0: 1, 1: 1}, 5), 1, 2)
    # q^12 is the first unknown power after q -> q^2
    assert x.order == 11


def test_sum_terms_examples():
    out = sum_terms(lambda n: S.monomial(ONE, n, 3), lambda n: n, 3)
    assert coeffs(out) == {1: 1, 2: 1, 3: 1}

    def term(n):
        den = S.constant(ONE, 2) - S.monomial(R(4), 2 * n, 2)
        return S.monomial(R(2), n, 2) * series_inv(den)

    assert coeffs(sum_terms(term, lambda n: n, 2)) == {1: 2, 2: 2}
    assert sum_terms(lambda n: S.zero(7), lambda n: n, 7).is_zero()


def test_sum_terms_rejects_bad_bound():
    with pytest.raises(ValuationError):
        sum_terms(lambda n: S.monomial(ONE, 0, 5), lambda n: n, 5)
    with pytest.raises(ValuationError):
        sum_terms(lambda n: S.zero(5), lambda n: 3 - n, 5)


def test_sum_terms_tally():
    with count_terms() as box:
        sum_terms(lambda n: S.monomial(ONE, n, 4), lambda n: n, 4)
    assert box == [1, 4]


def test_product_terms_examples():
    euler = product_terms(lambda j: ser({0: 1, j: -1}, 5), lambda j: j, 5, start=1)
    assert coeffs(euler) == {0: 1, 1: -1, 2: -1, 5: 1}
    assert product_terms(lambda j: S.constant(ONE, 5), lambda j: j + 1, 5) == S.constant(ONE, 5)
    # (3q; q)_inf: (1 - 3q)(1 - 3q^2) decides everything up to q^2
    f = product_terms(lambda j: ser({0: 1, j + 1: -3}, 2), lambda j: j + 1, 2)
    assert coeffs(f) == {0: 1, 1: -3, 2: -3}


def test_product_terms_needs_units():
    with pytest.raises(NonUnitError):
        product_terms(lambda j: ser({0: 2, 1: 1}, 4), lambda j: j + 1, 4)


def test_truncation_tracking():
    x = ser({-2: 1, 0: 1}, 10)
    y = ser({0: 1, 1: 5}, 10)
    assert (x * y).order == 8
    assert series_inv(x).order == 14
    z = S.constant(ONE, 6) + S.constant(ONE, 9)
    assert z.order == 6


def test_pow():
    x = ser({0: 1, 1: 1}, 6)
    assert coeffs(x ** 3) == {0: 1, 1: 3, 2: 3, 3: 1}
    assert (x ** -1) * x == S.constant(ONE, 6)
    assert x ** 0 == S.constant(ONE, 6)


def test_comparison_uses_known_range():
    a = ser({0: 1, 1: 2}, 3)
    b = ser({0: 1, 1: 2, 5: 7}, 9)
    assert a == b
    assert a.first_mismatch(ser({0: 1, 1: 3}, 9)) == 1


def test_repr():
    assert repr(ser({-1: 1, 0: R(1, 2), 2: -1}, 3)) == "q^-1 + 1/2 + -q^2 + O(q^4)"


rat = st.fractions(min_value=-9, max_value=9, max_denominator=9).map(lambda f: R(f.numerator, f.denominator))
polys = st.builds(lambda lo, cs: S(list(cs), lo, 20),
                  st.integers(-2, 2), st.lists(rat, min_size=1, max_size=8))
units = st.builds(lambda c0, cs: S([c0] + list(cs), 0, 20),
                  rat.filter(bool), st.lists(rat, max_size=8))


@given(polys, polys, polys)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(units)
def test_mul_inverse(u):
    assert u * series_inv(u) == S.constant(ONE, 20)


@given(polys)
def test_subst_composition(x):
    two = series_subst_monomial(series_subst_monomial(x, 1, 2), 1, 3)
    assert two == series_subst_monomial(x, 1, 6)
    assert two.order == series_subst_monomial(x, 1, 6).order


@given(st.integers(3, 15), st.integers(0, 6))
def test_cutoff_independence(N, extra):
    # terms past the bound cutoff have valuation > N and cannot change the sum
    term = lambda n: S.monomial(R(n), 2 * n, N)
    base = sum_terms(term, lambda n: 2 * n, N)
    more = base
    n = N // 2 + 1
    for m in range(n, n + extra):
        more = more + term(m)
    assert base == more
