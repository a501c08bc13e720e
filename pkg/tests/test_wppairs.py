import dataclasses

import pytest
from hypothesis import given, strategies as st

from wpverify.errors import ConstraintError
from wpverify.exact import rational as R
from wpverify.fps import LaurentSeries as S, series_inv
from wpverify.qkit import Monomial, binom
from wpverify.wppairs import PAIRS, PairParams, get_pair, poch_vanishes, relation_term, wp_check

N = 12


def ser(term, n=N):
    return term.to_series(n)


def rat_series(num, den, n=N):
    """num/den for lists of (coef, exp) monomials."""
    def poly(ms):
        return S.from_dict({e: R(c) for c, e in ms}, n) if ms else S.constant(R(1), n)
    return poly(num) * series_inv(poly(den))


def params(pair, a, k, **extras):
    return PairParams(Monomial(R(a)), Monomial(R(k)), extras=extras)


GENERIC = {
    "trivial": dict(a=R(2), k=R(3)),
    "unit": dict(a=R(4), k=R(2)),
    "pr4": dict(a=R(3), k=R(2)),
    "mz01": dict(a=R(5), k=R(2)),
    "singh": dict(a=R(3), k=R(2), rho1=Monomial(R(5)), rho2=Monomial(R(7))),
    "singh-limit": dict(a=R(1), k=R(-1)),
}


def generic(pid):
    d = dict(GENERIC[pid])
    return PairParams(Monomial(d.pop("a")), Monomial(d.pop("k")), extras=d)


@pytest.mark.parametrize("pid", sorted(PAIRS))
def test_initial_terms_are_one(pid):
    pair, p = get_pair(pid), generic(pid)
    assert ser(pair.alpha(p, 0)) == S.constant(R(1), N)
    assert ser(pair.beta(p, 0)) == S.constant(R(1), N)


@pytest.mark.parametrize("pid", sorted(PAIRS))
def test_defining_relation(pid):
    res = wp_check(get_pair(pid), generic(pid), 4, 10)
    assert all(r.is_zero() for r in res)


def test_trivial_pair_examples():
    pair, p = get_pair("trivial"), generic("trivial")
    assert pair.alpha(p, 3).is_zero()
    # (1-3)(1-3/2) / ((1-2q)(1-q))
    want = rat_series([(1, 0)], [(1, 0), (-3, 1), (2, 2)]).scale(R(-2) * R(-1, 2))
    assert ser(pair.beta(p, 1)) == want


def test_unit_pair_examples():
    pair, p = get_pair("unit"), generic("unit")
    assert pair.beta(p, 2).is_zero()
    # (1 - 4q^2)(1 - 2) / ((1 - q)(1 - 2q)) * (1/2)
    want = rat_series([(1, 0), (-4, 2)], [(1, 0), (-3, 1), (2, 2)]).scale(R(-1, 2))
    assert ser(pair.alpha(p, 1)) == want


def test_unit_pair_wider_range():
    res = wp_check(get_pair("unit"), PairParams(Monomial(R(2)), Monomial(R(5))), 6, 12)
    assert all(r.is_zero() for r in res)


def test_pr4_pair_examples():
    pair, p = get_pair("pr4"), generic("pr4")
    assert pair.alpha(p, 1).is_zero()
    assert all(pair.alpha(p, m).is_zero() for m in range(1, 11, 2))
    assert wp_check(pair, PairParams(Monomial(R(3)), Monomial(R(2))), 2, 12)[1].is_zero()


def test_mz01_pair_examples():
    pair = get_pair("mz01")
    p = PairParams(Monomial(R(2)), Monomial(R(3)))
    # (1 - 4q/9) / (1 - q) * 3/2
    want = rat_series([(1, 0), (R(-4, 9), 1)], [(1, 0), (-1, 1)]).scale(R(3, 2))
    assert ser(pair.alpha(p, 1)) == want
    assert all(r.is_zero() for r in wp_check(pair, generic("mz01"), 4, 10))


def test_singh_limit_examples():
    pair, p = get_pair("singh-limit"), generic("singh-limit")
    assert ser(pair.alpha(p, 1)) == rat_series([(-1, 0), (-1, 1)], [])
    b1 = ser(pair.beta(p, 1))
    assert [b1[e] for e in range(4)] == [2, 2, 2, 2]


def test_wp_check_detects_corruption():
    pair = get_pair("unit")
    orig = pair.beta

    class Bumped:
        def __init__(self, t):
            self.t = t

        def to_series(self, n):
            return self.t.to_series(n) + S.monomial(R(1), 1, n)

    def beta(p, n):
        t = orig(p, n)
        return Bumped(t) if n == 2 else t

    bad = dataclasses.replace(pair, beta=beta)
    res = wp_check(bad, PairParams(Monomial(R(2)), Monomial(R(5))), 3, 8)
    assert res[0].is_zero() and res[2].is_zero()
    assert res[1] == S.monomial(R(1), 1, 8)


def test_constraints():
    with pytest.raises(ConstraintError):
        wp_check(get_pair("trivial"), PairParams(Monomial(R(2)), Monomial(R(2))), 2, 5)
    # (aq; q)_n vanishes at a = 1/q^2
    assert get_pair("trivial").violated(PairParams(Monomial(1, -2), Monomial(R(3))))
    assert get_pair("unit").violated(PairParams(Monomial(R(2)), Monomial(1, -1)))
    assert get_pair("singh").violated(PairParams(Monomial(R(2)), Monomial(R(3))))
    assert get_pair("singh-limit").violated(PairParams(Monomial(R(2)), Monomial(R(-1))))
    with pytest.raises(ConstraintError):
        PairParams(Monomial(R(0)), Monomial(R(1)))


def test_poch_vanishes():
    q = Monomial(1, 1)
    assert poch_vanishes(Monomial(1, -3), q)
    assert poch_vanishes(Monomial(1, 0), q)
    assert not poch_vanishes(Monomial(2, -3), q)
    assert not poch_vanishes(Monomial(1, 2), q)
    assert not poch_vanishes(Monomial(1, -3), Monomial(1, 2))


def test_relation_term_diagonal():
    # j = n: (k;q)_2n / (aq;q)_2n
    p = PairParams(Monomial(R(2)), Monomial(R(3)))
    t = relation_term(p, 1, 1)
    want = ser(binom(Monomial(R(3))) * binom(Monomial(R(3), 1)) / (binom(Monomial(R(2), 1)) * binom(Monomial(R(2), 2))))
    assert ser(t) == want


nz = st.integers(-9, 9).filter(bool)


@given(st.sampled_from(["trivial", "unit", "pr4", "mz01", "singh"]), nz, nz, nz, nz, nz, nz)
def test_relation_property(pid, an, ad, kn, kd, r1, r2):
    p = PairParams(Monomial(R(an, ad)), Monomial(R(kn, kd)),
                   extras={"rho1": Monomial(R(r1)), "rho2": Monomial(R(r2, 3))})
    pair = get_pair(pid)
    if pair.violated(p):
        return
    assert all(r.is_zero() for r in wp_check(pair, p, 3, 6))
