import pytest

from wpverify import formulas as fm
from wpverify.bank import IdentityCase, Param, Specialization, bank, get_case
from wpverify.exact import ONE, rational as R
from wpverify.fps import LaurentSeries as S
from wpverify.qkit import Monomial, Q1
from wpverify.verify import FAIL, PASS, SKIPPED, corrupt_rhs, random_spec, verify


def test_bank_registry():
    ids = [c.id for c in bank()]
    assert len(ids) >= 28
    assert len(ids) == len(set(ids))
    assert "THM1" in ids
    assert get_case("THM1").id == "THM1"
    with pytest.raises(KeyError):
        get_case("NOPE")


def test_every_pair_slot_is_registered():
    from wpverify.wppairs import PAIRS
    for c in bank():
        assert set(c.pairSlots) <= set(PAIRS)


def test_thm1_passes():
    spec = Specialization.of(a=R(2, 3), k=R(5, 7), pair="trivial")
    rep = verify(get_case("THM1"), spec, 20)
    assert rep.status == PASS, rep
    assert rep.termCounts["sums"] > 0


def test_corrupted_rhs_fails_at_exponent():
    case = get_case("THM1")
    spec = Specialization.of(a=R(2, 3), k=R(5, 7), pair="trivial")
    # the right side starts at q^1, so the factor (1 + q^20) first shows at q^21
    rhs = case.rhs(spec, 25)
    assert rhs.lower == 1
    rep = verify(corrupt_rhs(case, 20), spec, 25)
    assert rep.status == FAIL
    assert rep.firstMismatchExp == 20 + rhs.lower
    assert rep.lhsCoeff != rep.rhsCoeff


def test_corruption_beyond_order_is_invisible():
    case = get_case("THM1")
    spec = Specialization.of(a=R(2, 3), k=R(5, 7), pair="trivial")
    assert verify(corrupt_rhs(case, 21), spec, 20).status == PASS


def test_constraint_violation_is_skipped():
    rep = verify(get_case("COR-RS"), Specialization.of(k=1, pair="trivial"), 10)
    assert rep.status == SKIPPED
    assert rep.reason == "k != 1"


def test_wrong_pair_slot_is_skipped():
    rep = verify(get_case("G-LAMBERT"), Specialization.of(k=R(2), pair="mz01"), 10)
    assert rep.status == SKIPPED
    assert rep.reason.startswith("pair in")


def test_random_spec_deterministic_and_admissible():
    for case in bank():
        for seed in (1, 2, 3):
            s1, s2 = random_spec(case, seed), random_spec(case, seed)
            assert s1 == s2
            assert not case.violations(s1)


def test_random_spec_rotates_pairs():
    case = get_case("THM1")
    pairs = {random_spec(case, s).pair for s in range(1, 6)}
    assert pairs == set(case.pairSlots)


def test_cor_c1_never_draws_a_equal_k():
    case = get_case("COR-C1")
    for seed in range(1, 200):
        s = random_spec(case, seed)
        assert s["a"] != s["k"]


def test_specialization_render():
    s = Specialization.of(a=R(2, 3), k=Monomial(R(5, 7), -1), pair="trivial")
    assert s.render() == "a=2/3, k=5/7*q^-1, pair=trivial"
    assert Specialization.of().render() == "-"


@pytest.mark.parametrize("c", [R(3), R(-5, 2), R(7, 4)])
def test_rs2_mz_misprint_pinned(c):
    k = Monomial(c, -1)
    lhs, rhs = fm.cor_rs2_mz_sides(k, Q1, 20)
    assert lhs.first_mismatch(rhs, upto=20) is None
    lhs, rhs = fm.cor_rs2_mz_misprinted(k, Q1, 20)
    assert lhs.first_mismatch(rhs, upto=20) == 0


@pytest.mark.parametrize("k", [R(3), R(-5, 2), R(2, 7)])
def test_rs2_pr4_misprint_pinned(k):
    lhs, rhs = fm.cor_rs2_pr4_sides(k, Q1, 20)
    assert lhs.first_mismatch(rhs, upto=20) is None
    lhs, rhs = fm.cor_rs2_pr4_misprinted(k, Q1, 20)
    assert lhs.first_mismatch(rhs, upto=20) == 0


@pytest.mark.parametrize("cid", ["F3REP", "FRECIP"])
def test_f_family_five_seeds(cid):
    case = get_case(cid)
    for seed in range(1, 6):
        assert verify(case, random_spec(case, seed), 20).status == PASS


@pytest.mark.parametrize("pair", ["trivial", "unit"])
def test_fg_link(pair):
    rep = verify(get_case("FG-LINK"), Specialization.of(k=R(3, 2), pair=pair), 20)
    assert rep.status == PASS


def test_ratio_invariance():
    case = get_case("RATIO-INV")
    for seed in (1, 2):
        assert verify(case, random_spec(case, seed), 20).status == PASS


def test_chi3_in_t():
    case = get_case("CHI3")
    rep = verify(case, Specialization.of(), 30)
    assert rep.status == PASS
    assert rep.substExp == 2


def test_r4_brute_force():
    r4 = fm.r4_series(10)
    assert [r4[n] for n in (0, 1, 2, 3, 5)] == [1, 8, 24, 32, 48]


def test_build_error_is_skipped_not_crash():
    def build(spec, N):
        raise ZeroDivisionError("1/0")

    case = IdentityCase("X", "x", build, (Param("k"),))
    rep = verify(case, Specialization.of(k=2), 5)
    assert rep.status == SKIPPED


def test_short_side_fails():
    def build(spec, N):
        return [("lhs = rhs", S.zero(N), S.zero(N - 1))]

    rep = verify(IdentityCase("X", "x", build), Specialization.of(), 8)
    assert rep.status == FAIL
    assert "known only to order" in rep.reason
