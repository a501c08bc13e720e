"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import json
import time

import pytest

from wpverify import formulas as fm
from wpverify.bank import Specialization, bank, get_case
from wpverify.cli import main
from wpverify.qkit import a_of_q, a_of_q_lambert, theta_phi, theta_phi_product, theta_psi, theta_psi_product
from wpverify.verify import FAIL, PASS, corrupt_rhs, random_spec, verify


@pytest.fixture
def criterion(capsys):
    def report(num, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return report


def run_cases(ids, order, seeds):
    bad = []
    for cid in ids:
        case = get_case(cid)
        for seed in range(1, seeds + 1):
            rep = verify(case, random_spec(case, seed), order)
            if rep.status != PASS:
                bad.append(f"{cid}/{seed}: {rep.status} {rep.reason or rep.firstMismatchExp}")
    return bad


def test_c01_wp_definition(criterion):
    t0 = time.perf_counter()
    bad = run_cases(["WP-DEF"], 30, 3)
    dt = time.perf_counter() - t0
    criterion(1, "every pair satisfies the defining relation, n <= 8, order 30, 3 seeds, < 10 s",
              not bad and dt < 10, f"{dt:.1f} s; {'; '.join(bad) or 'zero residuals'}")


def test_c02_reciprocity(criterion):
    t0 = time.perf_counter()
    bad = run_cases(["THM1", "COR-C1", "COR-C1-UNIT"], 30, 3)
    dt = time.perf_counter() - t0
    criterion(2, "THM1, COR-C1, COR-C1-UNIT at order 30, 3 seeds, < 30 s",
              not bad and dt < 30, f"{dt:.1f} s; {'; '.join(bad) or 'all PASS'}")


def test_c03_f_family(criterion):
    ids = ["F3REP", "FRECIP", "FRECIP-A", "FSPEC-A", "FRECIP-B", "FSPEC-B"]
    bad = run_cases(ids, 30, 5)
    criterion(3, "F3REP and the FRECIP family at order 30, 5 seeds", not bad, "; ".join(bad) or "all PASS")


def test_c04_f_lambert_and_fg_link(criterion):
    bad = run_cases(["F-EQ-LAMBERT", "FG-LINK"], 30, 3)
    criterion(4, "F equals its Lambert combination and F(k^2,k,q) = 0 at order 30", not bad,
              "; ".join(bad) or "all PASS")


def test_c05_four_squares(criterion):
    r4 = fm.r4_series(50)
    phi4 = theta_phi(50) ** 4
    counts_ok = all(phi4[n] == r4[n] for n in range(51))
    spot = [r4[n] for n in (1, 2, 3, 5)] == [8, 24, 32, 48]
    rep = verify(get_case("PHI4"), Specialization.of(), 50)
    criterion(5, "phi^4 matches brute-force four-square counts to 50; PHI4 at order 50",
              counts_ok and spot and rep.status == PASS, f"PHI4 {rep.status}")


def test_c06_psi4_wac(criterion):
    reps = [verify(get_case(c), random_spec(get_case(c), 1), 50) for c in ("PSI4", "WAC")]
    criterion(6, "PSI4 and WAC at order 50", all(r.status == PASS for r in reps),
              ", ".join(f"{r.id} {r.status}" for r in reps))


def test_c07_chi3(criterion):
    rep = verify(get_case("CHI3"), Specialization.of(), 30)
    criterion(7, "CHI3 at t-order 60 over Q(zeta12)", rep.status == PASS and rep.order * rep.substExp == 60,
              f"{rep.status}, t-order {rep.order * rep.substExp}")


def test_c08_theta_cross_representations(criterion):
    checks = {
        "psi sum = product (60)": theta_psi(60) == theta_psi_product(60),
        "phi sum = product (60)": theta_phi(60) == theta_phi_product(60),
        "a(q) double sum = Lambert (40)": a_of_q(40) == a_of_q_lambert(40),
    }
    for cid in ("PHI2-LAMBERT", "A2Q", "PSI26", "AQ-DIFF"):
        checks[f"{cid} (40)"] = verify(get_case(cid), Specialization.of(), 40).status == PASS
    bad = [k for k, ok in checks.items() if not ok]
    criterion(8, "theta, phi^2, a^2, q psi psi, a(q)-a(q^2) cross-representations",
              not bad, "failed: " + ", ".join(bad) if bad else f"{len(checks)} checks")


SECOND_TIER = ["G-LAMBERT", "G-RECIP", "MIN1", "MIN2", "COR-RS", "COR-RS2-MZ", "COR-RS2-PR4", "WPEQ8",
               "WPEQ2N", "CHAIN", "LAMB1", "GPRIME", "SUMID", "PSI26", "PHI2-LAMBERT", "A2Q", "AQ-DIFF",
               "AQ-LAMBERT", "RATIO-INV"]


def test_c09_remaining_identities(criterion):
    bad = run_cases(SECOND_TIER, 30, 3)
    criterion(9, f"{len(SECOND_TIER)} further identities at order 30, 3 seeds", not bad,
              "; ".join(bad) or "all PASS")


def test_c10_fault_injection(criterion, tmp_path, capsys):
    case = get_case("THM1")
    spec = random_spec(case, 1)
    want = 20 + case.rhs(spec, 25).lower
    rep = verify(corrupt_rhs(case, 20), spec, 25)
    path = tmp_path / "r.ndjson"
    code = main(["--order", "25", "--seeds", "1", "-q", "--report", str(path)], cases=[corrupt_rhs(case, 20)])
    capsys.readouterr()
    row = json.loads(path.read_text())
    ok = rep.status == FAIL and rep.firstMismatchExp == want and code == 1 and row["firstMismatchExp"] == want
    criterion(10, "corrupted right side caught at the right exponent, exit code 1", ok,
              f"mismatch at q^{rep.firstMismatchExp}, expected q^{want}, exit {code}")


def test_c11_performance(criterion, capsys):
    case = get_case("THM1")
    t0 = time.perf_counter()
    rep = verify(case, random_spec(case, 1), 100)
    thm = time.perf_counter() - t0
    t0 = time.perf_counter()
    code = main(["--order", "30", "--seeds", "3", "-q"])
    full = time.perf_counter() - t0
    summary = capsys.readouterr().out.strip()
    criterion(11, "full default suite < 5 min; THM1 at order 100 < 60 s",
              code == 0 and full < 300 and rep.status == PASS and thm < 60,
              f"suite {full:.1f} s [{summary}], THM1@100 {thm:.1f} s")
