"""Checking one identity at one specialization, and drawing specializations."""
from __future__ import annotations

import dataclasses
import random
import time
from dataclasses import dataclass, field

from .bank import IdentityCase, Specialization
from .errors import ConstraintError, ExhaustionError, NonUnitError
from .exact import ONE, rational, render
from .fps import count_terms
from .qkit import Monomial

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"
SMALL = [n for n in range(-9, 10) if n]
MAX_TRIES = 1000


@dataclass
class VerificationReport:
    id: str
    paperEq: str
    spec: str
    order: int
    status: str
    seed: int | None = None
    pair: str | None = None
    substExp: int = 1
    equality: str | None = None
    firstMismatchExp: int | None = None
    lhsCoeff: str | None = None
    rhsCoeff: str | None = None
    reason: str | None = None
    termCounts: dict = field(default_factory=dict)
    millis: float | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def record(self, timing: bool = False) -> dict:
        d = dataclasses.asdict(self)
        if not timing:
            d["millis"] = None
        return d


def verify(case: IdentityCase, spec: Specialization, N: int) -> VerificationReport:
    """Build every equality of ``case`` at ``spec`` and compare to q-order N.

    With ``case.substExp = m`` the identity lives in ``t`` with ``q = t^m`` and
    the comparison runs to t-order ``m*N``.
    """
    rep = VerificationReport(case.id, case.paperEq, spec.render(), N, PASS, spec.seed, spec.pair, case.substExp)
    t0 = time.perf_counter()
    bad = case.violations(spec)
    if bad:
        rep.status, rep.reason = SKIPPED, bad[0]
        rep.millis = _ms(t0)
        return rep
    Nt = N * case.substExp
    with count_terms() as box:
        try:
            eqs = case.equalities(spec, Nt)
        except ConstraintError as e:
            rep.status, rep.reason = SKIPPED, e.predicate
            eqs = []
        except (ZeroDivisionError, NonUnitError) as e:
            rep.status, rep.reason = SKIPPED, f"vanishing denominator: {e}"
            eqs = []
    rep.termCounts = {"sums": box[0], "terms": box[1]}
    for label, lhs, rhs in eqs:
        known = min(lhs.order, rhs.order)
        if known < Nt:
            rep.status, rep.equality = FAIL, label
            rep.reason = f"sides known only to order {known} < {Nt}"
            break
        e = lhs.first_mismatch(rhs, upto=Nt)
        if e is not None:
            rep.status, rep.equality = FAIL, label
            rep.firstMismatchExp = e
            rep.lhsCoeff, rep.rhsCoeff = render(lhs[e]), render(rhs[e])
            break
    rep.millis = _ms(t0)
    return rep


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 1)


def _draw(rng: random.Random):
    return rational(rng.choice(SMALL), rng.choice(SMALL))


def random_spec(case: IdentityCase, seed: int) -> Specialization:
    """A deterministic admissible specialization for ``seed``.

    Free parameters are ratios of integers from [-9, 9] without 0.  The pair
    slot cycles with the seed, so consecutive seeds exercise different pairs;
    after repeated rejections other pairs are tried too.
    """
    rng = random.Random(f"{case.id}/{seed}")
    slots = case.pairSlots
    for attempt in range(MAX_TRIES):
        pair = None
        if slots:
            pair = slots[(seed - 1 + attempt // 100) % len(slots)]
        vals = {p.name: Monomial(_draw(rng), p.exp) for p in case.freeParams}
        if pair == "singh":
            vals["rho1"] = Monomial(_draw(rng))
            vals["rho2"] = Monomial(_draw(rng))
        spec = Specialization.of(pair=pair, seed=seed, **vals)
        if not case.violations(spec):
            return spec
    raise ExhaustionError(f"{case.id}: no admissible specialization after {MAX_TRIES} draws (seed {seed})")


def corrupt_rhs(case: IdentityCase, exp: int, coeff=ONE) -> IdentityCase:
    """A copy of ``case`` whose right sides are multiplied by ``1 + coeff q^exp``."""
    def build(spec, N):
        out = []
        for label, lhs, rhs in case.build(spec, N):
            out.append((label, lhs, rhs + rhs.shift(exp).scale(coeff)))
        return out
    return dataclasses.replace(case, build=build)
