"""WP-Bailey pairs and an exact checker for the defining relation.

A pair is evaluated at monomial parameters ``a``, ``k`` and a monomial base
``q`` (``q``, ``q^2`` or ``-q`` in practice).  Square roots of ``a`` never
appear: every printed pair uses them only in quotients such as
``(q sqrt(a), -q sqrt(a); q)_n / (sqrt(a), -sqrt(a); q)_n = (1 - a q^2n)/(1 - a)``,
and the remaining ``1/(1 - a)`` cancels against ``(a; q)_n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import ConstraintError
from .exact import ONE
from .fps import LaurentSeries
from .qkit import Monomial, QTerm, binom, poch_floor, poch_term, pochs

Predicate = tuple[str, Callable[["PairParams"], bool]]


@dataclass(frozen=True)
class PairParams:
    a: Monomial
    k: Monomial
    q: Monomial = Monomial(1, 1)
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "a", Monomial.of(self.a))
        object.__setattr__(self, "k", Monomial.of(self.k))
        if not self.a or not self.k:
            raise ConstraintError("a, k nonzero")
        if self.q.exp < 1:
            raise ValueError("pair base must have positive valuation")

    def with_base(self, q: Monomial) -> PairParams:
        return PairParams(self.a, self.k, q, dict(self.extras))


@dataclass(frozen=True)
class WpPairDef:
    id: str
    alpha: Callable[[PairParams, int], QTerm]
    beta: Callable[[PairParams, int], QTerm]
    constraints: tuple = ()
    # (slope, offset) with val(alpha_n) >= slope*n + offset for n >= 1; same for beta
    alpha_bound: Callable[[PairParams], tuple[int, int]] = lambda p: (0, 0)
    beta_bound: Callable[[PairParams], tuple[int, int]] = lambda p: (0, 0)
    source: str = ""

    def violated(self, params: PairParams) -> list[str]:
        return [name for name, ok in self.constraints if not ok(params)]

    def check(self, params: PairParams) -> None:
        bad = self.violated(params)
        if bad:
            raise ConstraintError(bad[0], f"pair {self.id}")


def poch_vanishes(x, Q: Monomial) -> bool:
    """True if some factor ``1 - x Q^j`` of ``(x; Q)_inf`` is identically zero."""
    x = Monomial.of(x)
    if x.exp > 0 or (-x.exp) % Q.exp:
        return False
    j = -x.exp // Q.exp
    return x.coef * Q.coef ** j == ONE


def _nonvanishing(name: str, head: Callable[[PairParams], tuple]) -> Predicate:
    def ok(p: PairParams) -> bool:
        x, Q = head(p)
        return not poch_vanishes(x, Q)
    return (f"{name} nonvanishing", ok)


def _delta(p: PairParams, n: int) -> QTerm:
    return QTerm() if n == 0 else QTerm.zero()


def _min0(x: Monomial) -> int:
    return min(0, x.exp)


# trivial pair -----------------------------------------------------------------

def _trivial_beta(p: PairParams, n: int) -> QTerm:
    a, k, q = p.a, p.k, p.q
    return pochs([k, k / a], q, n) / pochs([a * q, q], q, n)


def pair_trivial() -> WpPairDef:
    return WpPairDef(
        id="trivial",
        alpha=_delta,
        beta=_trivial_beta,
        constraints=(("a != k", lambda p: p.a != p.k),
                     _nonvanishing("(aq;q)_n", lambda p: (p.a * p.q, p.q))),
        beta_bound=lambda p: (0, poch_floor(p.k, p.q) + poch_floor(p.k / p.a, p.q)),
        source="tp",
    )


# unit pair --------------------------------------------------------------------

def _unit_alpha(p: PairParams, n: int) -> QTerm:
    if n == 0:
        return QTerm()
    a, k, q = p.a, p.k, p.q
    t = binom(a * q ** (2 * n)) * poch_term(a * q, q, n - 1) * poch_term(a / k, q, n)
    return t / pochs([q, k * q], q, n) * (k / a) ** n


def pair_unit() -> WpPairDef:
    return WpPairDef(
        id="unit",
        alpha=_unit_alpha,
        beta=_delta,
        constraints=(_nonvanishing("(kq;q)_n", lambda p: (p.k * p.q, p.q)),),
        alpha_bound=lambda p: ((p.k / p.a).exp,
                               _min0(p.a * p.q ** 2) + poch_floor(p.a * p.q, p.q)
                               + poch_floor(p.a / p.k, p.q)),
        source="up",
    )


# the pair inserted with a = q in the theta-function corollaries ------------------

def _pr4_alpha(p: PairParams, n: int) -> QTerm:
    if n == 0:
        return QTerm()
    if n % 2:
        return QTerm.zero()
    m = n // 2
    a, k, q = p.a, p.k, p.q
    q2 = q * q
    t = binom(a * q ** (4 * m)) * poch_term(a * q2, q2, m - 1) * poch_term(a * a / (k * k), q2, m)
    return t / pochs([q2, q2 * k * k / a], q2, m) * (k / a) ** n


def _pr4_beta(p: PairParams, n: int) -> QTerm:
    a, k, q = p.a, p.k, p.q
    q2 = q * q
    t = pochs([k, a / k], q, n) * poch_term(k * k * q / a, q2, n)
    return t / (poch_term(a * q, q2, n) * pochs([q * k * k / a, q], q, n)) * (-k / a) ** n


def pair_pr4() -> WpPairDef:
    return WpPairDef(
        id="pr4",
        alpha=_pr4_alpha,
        beta=_pr4_beta,
        constraints=(
            _nonvanishing("(aq;q^2)_n", lambda p: (p.a * p.q, p.q * p.q)),
            _nonvanishing("(qk^2/a;q)_n", lambda p: (p.q * p.k * p.k / p.a, p.q)),
            _nonvanishing("(q^2k^2/a;q^2)_n", lambda p: (p.q * p.q * p.k * p.k / p.a, p.q * p.q)),
        ),
        alpha_bound=lambda p: ((p.k / p.a).exp,
                               _min0(p.a * p.q ** 4) + poch_floor(p.a * p.q * p.q, p.q * p.q)
                               + poch_floor(p.a * p.a / (p.k * p.k), p.q * p.q)),
        beta_bound=lambda p: ((p.k / p.a).exp,
                              poch_floor(p.k, p.q) + poch_floor(p.a / p.k, p.q)
                              + poch_floor(p.k * p.k * p.q / p.a, p.q * p.q)),
        source="pr4",
    )


# the pair used for the a = 1/q corollary ----------------------------------------

def _mz01_alpha(p: PairParams, n: int) -> QTerm:
    a, k, q = p.a, p.k, p.q
    return poch_term(q * a * a / (k * k), q, n) / poch_term(q, q, n) * (k / a) ** n


def _mz01_beta(p: PairParams, n: int) -> QTerm:
    a, k, q = p.a, p.k, p.q
    k2a = k * k / a
    t = pochs([q * a / k, k], q, n) / pochs([k2a, q], q, n)
    return t * poch_term(k2a, q, 2 * n) / poch_term(a * q, q, 2 * n)


def pair_mz01() -> WpPairDef:
    return WpPairDef(
        id="mz01",
        alpha=_mz01_alpha,
        beta=_mz01_beta,
        constraints=(
            _nonvanishing("(k^2/a;q)_n", lambda p: (p.k * p.k / p.a, p.q)),
            _nonvanishing("(aq;q)_2n", lambda p: (p.a * p.q, p.q)),
        ),
        alpha_bound=lambda p: ((p.k / p.a).exp, poch_floor(p.q * p.a * p.a / (p.k * p.k), p.q)),
        beta_bound=lambda p: (0, poch_floor(p.q * p.a / p.k, p.q) + poch_floor(p.k, p.q)
                              + poch_floor(p.k * p.k / p.a, p.q)),
        source="mz01",
    )


# Singh's pair and its rho -> infinity limit at a = 1, k = -1 ----------------------

def _singh_alpha(p: PairParams, n: int) -> QTerm:
    if n == 0:
        return QTerm()
    a, k, q = p.a, p.k, p.q
    r1, r2 = Monomial.of(p.extras["rho1"]), Monomial.of(p.extras["rho2"])
    t = binom(a * q ** (2 * n)) * poch_term(a * q, q, n - 1)
    t = t * pochs([r1, r2, a * a * q / (k * r1 * r2)], q, n)
    return t / pochs([q, a * q / r1, a * q / r2, k * r1 * r2 / a], q, n) * (k / a) ** n


def _singh_beta(p: PairParams, n: int) -> QTerm:
    a, k, q = p.a, p.k, p.q
    r1, r2 = Monomial.of(p.extras["rho1"]), Monomial.of(p.extras["rho2"])
    t = pochs([k * r1 / a, k * r2 / a, k, a * q / (r1 * r2)], q, n)
    return t / pochs([a * q / r1, a * q / r2, k * r1 * r2 / a, q], q, n)


def _singh_floor_alpha(p):
    a, k, q = p.a, p.k, p.q
    r1, r2 = Monomial.of(p.extras["rho1"]), Monomial.of(p.extras["rho2"])
    return ((k / a).exp, _min0(a * q * q) + poch_floor(a * q, q) + poch_floor(r1, q)
            + poch_floor(r2, q) + poch_floor(a * a * q / (k * r1 * r2), q))


def _singh_floor_beta(p):
    a, k, q = p.a, p.k, p.q
    r1, r2 = Monomial.of(p.extras["rho1"]), Monomial.of(p.extras["rho2"])
    return (0, poch_floor(k * r1 / a, q) + poch_floor(k * r2 / a, q) + poch_floor(k, q)
            + poch_floor(a * q / (r1 * r2), q))


def pair_singh() -> WpPairDef:
    def dens(p):
        a, k, q = p.a, p.k, p.q
        r1, r2 = Monomial.of(p.extras["rho1"]), Monomial.of(p.extras["rho2"])
        return [a * q / r1, a * q / r2, k * r1 * r2 / a]

    return WpPairDef(
        id="singh",
        alpha=_singh_alpha,
        beta=_singh_beta,
        constraints=(
            ("rho1, rho2 given", lambda p: "rho1" in p.extras and "rho2" in p.extras),
            ("Singh denominators nonvanishing",
             lambda p: "rho1" not in p.extras or "rho2" not in p.extras
             or not any(poch_vanishes(x, p.q) for x in dens(p))),
        ),
        alpha_bound=_singh_floor_alpha,
        beta_bound=_singh_floor_beta,
        source="Singh",
    )


def _tri(q: Monomial, n: int) -> Monomial:
    return q ** (n * (n - 1) // 2)


def _singh_limit_alpha(p: PairParams, n: int) -> QTerm:
    if n == 0:
        return QTerm()
    q = p.q
    return binom(-(q ** n)) * _tri(q, n) * (-ONE) ** n


def _singh_limit_beta(p: PairParams, n: int) -> QTerm:
    q = p.q
    return poch_term(-1, q, n) / poch_term(q, q, n) * _tri(q, n)


def pair_singh_limit() -> WpPairDef:
    return WpPairDef(
        id="singh-limit",
        alpha=_singh_limit_alpha,
        beta=_singh_limit_beta,
        constraints=(("a = 1", lambda p: p.a == 1), ("k = -1", lambda p: p.k == -1)),
        source="Singh, rho1, rho2 -> infinity",
    )


PAIRS: dict[str, Callable[[], WpPairDef]] = {
    "trivial": pair_trivial,
    "unit": pair_unit,
    "pr4": pair_pr4,
    "mz01": pair_mz01,
    "singh": pair_singh,
    "singh-limit": pair_singh_limit,
}


def get_pair(name: str) -> WpPairDef:
    return PAIRS[name]()


def relation_term(params: PairParams, n: int, j: int) -> QTerm:
    """The coefficient of alpha_j in the expansion of beta_n."""
    a, k, q = params.a, params.k, params.q
    top = poch_term(k / a, q, n - j) * poch_term(k, q, n + j)
    return top / (poch_term(q, q, n - j) * poch_term(a * q, q, n + j))


def wp_check(pair: WpPairDef, params: PairParams, nMax: int, N: int) -> list[LaurentSeries]:
    """Residuals ``beta_n - sum_j (...) alpha_j`` for ``1 <= n <= nMax`` to order N."""
    pair.check(params)
    out = []
    for n in range(1, nMax + 1):
        res = pair.beta(params, n).to_series(N)
        for j in range(n + 1):
            al = pair.alpha(params, j)
            if al.is_zero():
                continue
            res = res - (relation_term(params, n, j) * al).to_series(N)
        out.append(res)
    return out
