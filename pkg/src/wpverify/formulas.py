"""Both sides of every identity, as truncated series.

Parameters are :class:`~wpverify.qkit.Monomial` values (constants or
constant multiples of powers of q); ``q`` is the base monomial, normally
``Monomial(1, 1)``.  Every infinite sum declares a linear valuation bound,
which :func:`~wpverify.qkit.sum_qterms` checks against each term.
"""
from __future__ import annotations

from typing import Callable

from .errors import ValuationError
from .exact import I, OMEGA, ONE, rational
from .fps import LaurentSeries
from .qkit import (Monomial, QTerm, a_of_q, binom, chi0, diff, inf_quotient, linear,
                   m_quotient, poch_floor as pf, poch_term, pochs, subst, sum_qterms,
                   theta_phi, theta_psi)
from .wppairs import PairParams, WpPairDef

HALF = rational(1, 2)


def m0(x: Monomial) -> int:
    return min(0, x.exp)


def at_order(build: Callable[[int], LaurentSeries], N: int) -> LaurentSeries:
    """Call ``build(W)`` with growing W until the result is known to order N."""
    W = N
    for _ in range(12):
        s = build(W)
        if s.order >= N:
            return s.truncate(N)
        W += N - s.order
    raise ValuationError(f"could not reach order {N}")


def product(N: int, *builders: Callable[[int], LaurentSeries]) -> LaurentSeries:
    """Product of series-valued builders, known to order N."""
    def go(W):
        out = builders[0](W)
        for b in builders[1:]:
            out = out * b(W)
        return out
    return at_order(go, N)


def const(t, N: int) -> LaurentSeries:
    """A QTerm or monomial expanded to order N."""
    return QTerm.of(t).to_series(N)


def lam(x: Monomial, q: Monomial, n: int) -> QTerm:
    """``x q^n / (1 - x q^n)``."""
    y = x * q ** n
    return QTerm(y.coef, y.exp, (), [(y.coef, y.exp)])


def lambert_sum(x: Monomial, q: Monomial, N: int) -> LaurentSeries:
    """``sum_{n>=1} x q^n / (1 - x q^n)``."""
    x = Monomial.of(x)
    if not x:
        return LaurentSeries.zero(N)
    return sum_qterms(lambda n: lam(x, q, n), linear(q.exp, x.exp), N)


def _b(p: PairParams, pair: WpPairDef):
    return pair.beta_bound(p) if pair.beta_bound else (0, 0)


# ---------------------------------------------------------------------------
# F(a, k, q) and its pieces

def F_series(pair: WpPairDef, a, k, q: Monomial, N: int, extras=None) -> LaurentSeries:
    a, k = Monomial.of(a), Monomial.of(k)
    P = PairParams(a, k, q, extras or {})
    pair.check(P)
    q2 = q * q
    k2a = k * k / a
    qak = q * a / k
    bs, bo = pair.beta_bound(P)
    as_, ao = pair.alpha_bound(P)

    def t1(n):
        b = pair.beta(P, n)
        if b.is_zero():
            return None
        top = binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) * poch_term(k2a, q, n) * poch_term(q * a, q2, n)
        bot = binom(k) * pochs([qak, k * q], q, n) * poch_term(k2a * q, q2, n)
        return top / bot * (-qak) ** n * b

    s1 = sum_qterms(t1, linear(qak.exp + bs, m0(k * q2) + pf(k2a, q) + pf(q * a, q2) + bo), N)

    def t2(n):
        al = pair.alpha(P, 2 * n)
        if al.is_zero():
            return None
        top = poch_term(q2, q2, n - 1) * poch_term(k2a, q2, n)
        return top / pochs([q2 * a * a / (k * k), q2 * a], q2, n) * qak ** (2 * n) * al

    s2 = sum_qterms(t2, linear(2 * (qak.exp + as_), pf(k2a, q2) + ao), N)
    s3 = _F_odd(pair, P, N)
    return s1 - s2 + s3


def _F_odd(pair: WpPairDef, P: PairParams, N: int) -> LaurentSeries:
    a, k, q = P.a, P.k, P.q
    q2, q3 = q * q, q * q * q
    k2a = k * k / a
    qak = q * a / k
    as_, ao = pair.alpha_bound(P)
    if all(pair.alpha(P, 2 * n + 1).is_zero() for n in range(3)) and pair.id in ("trivial", "pr4"):
        return LaurentSeries.zero(N)

    def t3(n):
        al = pair.alpha(P, 2 * n + 1)
        if al.is_zero():
            return None
        top = pochs([k2a * q, q], q2, n)
        return top / pochs([q3 * a * a / (k * k), q3 * a], q2, n) * qak ** (2 * n + 1) * al

    slope = qak.exp + as_
    inner = lambda W: sum_qterms(t3, linear(2 * slope, slope + ao + pf(k2a * q, q2)), W, start=0)
    pre = lambda W: inf_quotient([k2a, q3 * a * a / (k * k), q3 * a, q2],
                                 [k2a * q, q2 * a * a / (k * k), q2 * a, q], q2, W)
    return product(N, pre, inner)


def thm1_rhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    """Right side of the reciprocity theorem for F."""
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k
    p1 = lambda W: inf_quotient(
        [a * q, q / a, k2 / a, q2 * a / k2, k2 / q, q2 * q / k2, q2, q2],
        [a * q / k2, k2 * q / a, a, q2 / a, k2, q2 / k2, q, q], q2, W,
        prefactor=QTerm.of(a * q / k2))
    p2a = lambda W: inf_quotient([k2 / a, q * a / k2, -a, -q / a], [], q, W)
    p2b = lambda W: inf_quotient([q2, q2], [k2, q2 / k2, a * a / k2, q2 * k2 / (a * a)], q2, W,
                                 prefactor=QTerm.of(-(a / k)))
    fin = diff(a * a, k) * diff(a, k2) / (binom(a) * binom(k) * diff(a * a, k2))
    return at_order(p1, N) + product(N, p2a, p2b) + const(fin, N)


# ---------------------------------------------------------------------------
# f(a, k, z, q) in its three printed forms

def f_rep1(a, k, z, q: Monomial, N: int) -> LaurentSeries:
    a, k, z = map(Monomial.of, (a, k, z))
    w = q * a / z

    def t(n):
        top = binom(k * q ** (2 * n)) * pochs([k, z, k / a], q, n)
        bot = binom(k) * pochs([q * k, q * k / z, q * a], q, n) * binom(q ** n)
        return top / bot * w ** n

    return sum_qterms(t, linear(w.exp, m0(k * q * q) + pf(k, q) + pf(z, q) + pf(k / a, q)), N)


def f_rep2(a, k, z, q: Monomial, N: int) -> LaurentSeries:
    a, k, z = map(Monomial.of, (a, k, z))
    w = q * k / z

    def t(n):
        top = binom(a * q ** (2 * n)) * pochs([a, z, a / k], q, n)
        bot = binom(a) * pochs([q * a, q * a / z, q * k], q, n) * binom(q ** n)
        return top / bot * w ** n

    s = sum_qterms(t, linear(w.exp, m0(a * q * q) + pf(a, q) + pf(z, q) + pf(a / k, q)), N)
    return -s


def f_rep3(a, k, z, q: Monomial, N: int) -> LaurentSeries:
    a, k, z = map(Monomial.of, (a, k, z))
    return (lambert_sum(k, q, N) + lambert_sum(a / z, q, N)
            - lambert_sum(a, q, N) - lambert_sum(k / z, q, N))


def f_recip_rhs(a, k, z, q: Monomial, N: int) -> LaurentSeries:
    a, k, z = map(Monomial.of, (a, k, z))
    fin = (diff(a, k) * binom(ONE / z) * binom(a * k / z)
           / (binom(a) * binom(k) * binom(a / z) * binom(k / z)))
    prod = lambda W: inf_quotient(
        [z, q / z, k / a, q * a / k, a * k / z, q * z / (a * k), q, q],
        [z / k, q * k / z, z / a, q * a / z, a, q / a, k, q / k], q, W,
        prefactor=QTerm.of(z / k))
    return const(fin, N) + at_order(prod, N)


def fspec_a_rhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    """2 sum k q^n/(1-k^2 q^2n) - 2 sum (a q^n/k)/(1-a^2 q^2n/k^2)."""
    return (_odd_lambert(k, q, N) - _odd_lambert(a / k, q, N)).scale(rational(2))


def _odd_lambert(x: Monomial, q: Monomial, N: int) -> LaurentSeries:
    """sum x q^n / (1 - x^2 q^2n)."""
    def t(n):
        y = x * q ** n
        y2 = y * y
        return QTerm(y.coef, y.exp, (), [(y2.coef, y2.exp)])
    return sum_qterms(t, linear(q.exp, x.exp), N)


def frecip_a_rhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k
    fin = diff(a / k, k) * binom(-a) / (binom(a * a / k2) * binom(k2)) * rational(2)
    p1 = lambda W: inf_quotient([k2 / a, q * a / k2, -a, -q / a], [], q, W)
    p2 = lambda W: inf_quotient([q2, q2], [k2, q2 / k2, a * a / k2, q2 * k2 / (a * a)], q2, W,
                                prefactor=QTerm.of(a / k * -2))
    return const(fin, N) + product(N, p1, p2)


def fspec_b_rhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k
    return (lambert_sum(k2, q2, N) + lambert_sum(ONE / q, q2, N)
            - lambert_sum(a, q2, N) - lambert_sum(k2 / (a * q), q2, N))


def frecip_b_rhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k
    fin = (diff(a, k2) * binom(ONE / (a * q)) * binom(k2 / q)
           / (binom(a) * binom(k2) * binom(ONE / q) * binom(k2 / (a * q))))
    prod = lambda W: inf_quotient(
        [a * q, q / a, k2 / a, q2 * a / k2, k2 / q, q2 * q / k2, q2, q2],
        [a * q / k2, k2 * q / a, q, q, a, q2 / a, k2, q2 / k2], q2, W,
        prefactor=QTerm.of(a * q / k2))
    return const(fin, N) + at_order(prod, N)


def f_lambert_combo(a, k, q: Monomial, N: int, rep=f_rep3) -> LaurentSeries:
    """(1/2) f(a/k, k, -1, q) + f(a, k^2, a q, q^2)."""
    a, k = Monomial.of(a), Monomial.of(k)
    return rep(a / k, k, Monomial(-1), q, N).scale(HALF) + rep(a, k * k, a * q, q * q, N)


def gprime_forms(a, k, q: Monomial, N: int) -> list[LaurentSeries]:
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k
    tail = lambert_sum(ONE / q, q2, N) - lambert_sum(a, q2, N) - lambert_sum(k2 / (a * q), q2, N)
    form1 = (lambert_sum(k, q, N) - lambert_sum(a / k, q, N)
             + lambert_sum(a * a / k2, q2, N) + tail)
    form2 = _odd_lambert(k, q, N) - _odd_lambert(a / k, q, N) + lambert_sum(k2, q2, N) + tail
    form3 = f_lambert_combo(a, k, q, N, rep=f_rep1)
    return [form1, form2, form3]


# ---------------------------------------------------------------------------
# the chain identity

def chain_sides(pair: WpPairDef, a, k, b, q: Monomial, N: int, extras=None):
    a, k, b = map(Monomial.of, (a, k, b))
    P = PairParams(a, k, q, extras or {})
    pair.check(P)
    q2, q3 = q * q, q * q * q
    k2 = k * k
    w = -(q * a / k)
    bs, bo = pair.beta_bound(P)
    as_, ao = pair.alpha_bound(P)

    def tl(n):
        be = pair.beta(P, n)
        if be.is_zero():
            return None
        top = binom(k * q ** (2 * n)) * pochs([k2 / (a * b), b], q, n) * poch_term(q * a, q2, n)
        bot = binom(k) * pochs([q * a * b / k, k * q / b], q, n) * poch_term(k2 * q / a, q2, n)
        return top / bot * w ** n * be

    lb = linear(w.exp + bs, m0(k * q2) + pf(k2 / (a * b), q) + pf(b, q) + pf(q * a, q2) + bo)
    lhs = product(N,
                  lambda W: inf_quotient([q * a * b / k, k * q / b], [k * q, q * a / k], q, W),
                  lambda W: sum_qterms(tl, lb, W, start=0))

    den = [q, k2 * q / a, q2 * a, q2 * a * a / k2]

    def te(n):
        al = pair.alpha(P, 2 * n)
        if al.is_zero():
            return None
        return pochs([k2 / (a * b), b], q2, n) / pochs([q2 * a * a * b / k2, q2 * a / b], q2, n) * w ** (2 * n) * al

    def to(n):
        al = pair.alpha(P, 2 * n + 1)
        if al.is_zero():
            return None
        return (pochs([k2 * q / (a * b), b * q], q2, n) / pochs([q3 * a * a * b / k2, q3 * a / b], q2, n)
                * w ** (2 * n + 1) * al)

    se = w.exp + as_
    even = product(N,
                   lambda W: inf_quotient([q * k2 / (a * b), b * q, q2 * a * a * b / k2, q2 * a / b], den, q2, W),
                   lambda W: sum_qterms(te, linear(2 * se, ao + pf(k2 / (a * b), q2) + pf(b, q2)), W, start=0))
    odd = product(N,
                  lambda W: inf_quotient([k2 / (a * b), b, q3 * a * a * b / k2, q3 * a / b], den, q2, W),
                  lambda W: sum_qterms(to, linear(2 * se, se + ao + pf(k2 * q / (a * b), q2) + pf(b * q, q2)),
                                       W, start=0))
    return lhs, even + odd


# ---------------------------------------------------------------------------
# the transformations quoted from earlier work

def wpeq8_sides(pair: WpPairDef, a, k, z, q: Monomial, N: int, extras=None):
    a, k, z = map(Monomial.of, (a, k, z))
    ex = extras or {}
    P = PairParams(a, k, q, ex)
    Pi = PairParams(ONE / a, ONE / k, q, ex)
    pair.check(P)
    pair.check(Pi)
    w1, w2 = q * a / z, q * z / a

    def beta_sum(PP, kk, zz, w):
        bs, bo = pair.beta_bound(PP)

        def t(n):
            be = pair.beta(PP, n)
            if be.is_zero():
                return None
            top = binom(kk * q ** (2 * n)) * poch_term(zz, q, n) * poch_term(q, q, n - 1)
            bot = binom(kk) * pochs([q * kk, q * kk / zz], q, n)
            return top / bot * w ** n * be
        return sum_qterms(t, linear(w.exp + bs, m0(kk * q * q) + pf(zz, q) + bo), N)

    def alpha_sum(PP, aa, zz, w):
        as_, ao = pair.alpha_bound(PP)

        def t(n):
            al = pair.alpha(PP, n)
            if al.is_zero():
                return None
            top = poch_term(zz, q, n) * poch_term(q, q, n - 1)
            return top / pochs([q * aa, q * aa / zz], q, n) * w ** n * al
        return sum_qterms(t, linear(w.exp + as_, pf(zz, q) + ao), N)

    lhs = (beta_sum(P, k, z, w1) - beta_sum(Pi, ONE / k, ONE / z, w2)
           - alpha_sum(P, a, z, w1) + alpha_sum(Pi, ONE / a, ONE / z, w2))
    return lhs, f_recip_rhs(a, k, z, q, N)


def wpeq2n_sides(pair: WpPairDef, a, k, z, q: Monomial, N: int, extras=None):
    a, k, z = map(Monomial.of, (a, k, z))
    ex = extras or {}
    q2 = q * q
    sites = [(PairParams(a, k, q, ex), a, k, z, q, ONE),
             (PairParams(-a, -k, q, ex), -a, -k, z, q, ONE),
             (PairParams(a * a, k * k, q2, ex), a * a, k * k, z * z, q2, rational(-2))]
    lhs = LaurentSeries.zero(N)
    rhs = LaurentSeries.zero(N)
    for P, aa, kk, zz, qq, c in sites:
        pair.check(P)
        w = qq * aa / zz
        bs, bo = pair.beta_bound(P)
        as_, ao = pair.alpha_bound(P)

        def tb(n, P=P, aa=aa, kk=kk, zz=zz, qq=qq, w=w):
            be = pair.beta(P, n)
            if be.is_zero():
                return None
            top = binom(kk * qq ** (2 * n)) * poch_term(zz, qq, n) * poch_term(qq, qq, n - 1)
            bot = binom(kk) * pochs([qq * kk, qq * kk / zz], qq, n)
            return top / bot * w ** n * be

        def ta(n, P=P, aa=aa, zz=zz, qq=qq, w=w):
            al = pair.alpha(P, n)
            if al.is_zero():
                return None
            top = poch_term(zz, qq, n) * poch_term(qq, qq, n - 1)
            return top / pochs([qq * aa, qq * aa / zz], qq, n) * w ** n * al

        lhs = lhs + sum_qterms(tb, linear(w.exp + bs, m0(kk * qq * qq) + pf(zz, qq) + bo), N).scale(c)
        rhs = rhs + sum_qterms(ta, linear(w.exp + as_, pf(zz, qq) + ao), N).scale(c)
    return lhs, rhs


# ---------------------------------------------------------------------------
# corollaries with explicit pairs or a = q

def cor_c1_lhs(a, k, q: Monomial, N: int) -> LaurentSeries:
    a, k = Monomial.of(a), Monomial.of(k)
    q2 = q * q
    k2 = k * k

    def ta(n):
        top = (binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) * pochs([k2 / a, k, k / a], q, n)
               * poch_term(q * a, q2, n))
        bot = binom(k) * pochs([q * a / k, k * q, a * q, q], q, n) * poch_term(k2 * q / a, q2, n)
        return top / bot * (-(q * a / k)) ** n

    def tb(n):
        top = (binom(q ** (2 * n) / k) * poch_term(q, q, n - 1) * pochs([a / k2, ONE / k, a / k], q, n)
               * poch_term(q / a, q2, n))
        bot = binom(ONE / k) * pochs([q * k / a, q / k, q / a, q], q, n) * poch_term(a * q / k2, q2, n)
        return top / bot * (-(q * k / a)) ** n

    wa, wb = q * a / k, q * k / a
    sa = sum_qterms(ta, linear(wa.exp, m0(k * q2) + pf(k2 / a, q) + pf(k, q) + pf(k / a, q) + pf(q * a, q2)), N)
    sb = sum_qterms(tb, linear(wb.exp, m0(q2 / k) + pf(a / k2, q) + pf(ONE / k, q) + pf(a / k, q)
                               + pf(q / a, q2)), N)
    return sa - sb


def _rs_finite(k: Monomial, q: Monomial) -> QTerm:
    """(k^2 - q)(k - q^2) / ((1 - k)(1 - q)(k^2 - q^2))."""
    return diff(k * k, q) * diff(k, q * q) / (binom(k) * binom(q) * diff(k * k, q * q))


def lamb1_forms(pair: WpPairDef, k, q: Monomial, N: int, extras=None) -> list[LaurentSeries]:
    k = Monomial.of(k)
    k2 = k * k
    fin = -_rs_finite(k, q)  # (k^2 - q)(q^2 - k)/(...)
    odd_k = _odd_lambert(k, q, N)
    # sum q^{n+1}/k / (1 - q^{2n+2}/k^2) is the odd Lambert series of q/k
    form1 = (odd_k - _odd_lambert(q / k, q, N) + const(QTerm.of(q) / binom(q), N)
             - const(QTerm.of(k2) / binom(k2), N))
    shifted = _odd_lambert(ONE / (q * k), q, N)
    form2 = (odd_k - shifted + const(QTerm.of(ONE / k) / binom(ONE / k2), N)
             + const(QTerm.of(q / k) / binom(q * q / k2), N) + const(QTerm.of(q) / binom(q), N)
             - const(QTerm.of(k2) / binom(k2), N))
    form3 = odd_k - shifted + const(fin, N)
    form4 = at_order(lambda W: m_quotient(k, q, W).scale(k.coef).shift(k.exp), N) + const(fin, N)
    F = F_series(pair, q, k, q, N, extras)
    return [F, form1, form2, form3, form4]


def cor_rs_sides(pair: WpPairDef, k, q: Monomial, N: int, extras=None):
    """R (left side) and S (the bracketed series, including its leading 1)."""
    k = Monomial.of(k)
    a = q
    P = PairParams(a, k, q, extras or {})
    pair.check(P)
    q2 = q * q
    k2 = k * k
    bs, bo = pair.beta_bound(P)
    as_, ao = pair.alpha_bound(P)

    def t1(n):
        be = pair.beta(P, n)
        if be.is_zero():
            return None
        top = binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) * poch_term(k2 / q, q, n) * poch_term(q2, q2, n)
        bot = binom(k) * pochs([q2 / k, k * q], q, n) * poch_term(k2, q2, n)
        return top / bot * (-(q2 / k)) ** n * be

    def t2(n):
        al = pair.alpha(P, 2 * n)
        if al.is_zero():
            return None
        top = poch_term(q2, q2, n - 1) * poch_term(k2 / q, q2, n) * q ** (4 * n)
        return top / (pochs([q2 * q2 / k2, q2 * q], q2, n) * k2 ** n) * al

    def t3(n):
        al = pair.alpha(P, 2 * n + 1)
        if al.is_zero():
            return None
        top = pochs([k2 / q2, ONE / q], q2, n + 1) * q ** (4 * n + 4)
        return top / (pochs([q2 * q / k2, q2], q2, n + 1) * k2 ** (n + 1)) * al

    w1 = q2 / k
    s1 = sum_qterms(t1, linear(w1.exp + bs, m0(k * q2) + pf(k2 / q, q) + bo), N)
    s2 = sum_qterms(t2, linear(4 * q.exp - 2 * k.exp + 2 * as_, pf(k2 / q, q2) + ao), N)
    sl = 4 * q.exp - 2 * k.exp + 2 * as_
    S = at_order(lambda W: sum_qterms(t3, linear(sl, sl + as_ + ao + pf(k2 / q2, q2) + pf(ONE / q, q2)),
                                      W, start=0), N) + ONE
    R = s1 - s2 + const(_rs_finite(k, q), N)
    return R, S


def cor_rs_rhs_from_S(k, q: Monomial, S: LaurentSeries, N: int) -> LaurentSeries:
    k = Monomial.of(k)
    return product(N, lambda W: m_quotient(k, q, W).scale(k.coef).shift(k.exp), lambda W: S)


def _m_times(k: Monomial, q: Monomial, inner, N: int) -> LaurentSeries:
    """k M(k, q) times a series builder."""
    return product(N, lambda W: m_quotient(k, q, W).scale(k.coef).shift(k.exp), inner)


def _rs2_mz_lhs(k: Monomial, q: Monomial, N: int, first_base: Monomial) -> LaurentSeries:
    q2 = q * q
    k2 = k * k
    w = -(ONE / k)

    def t1(n):
        top = binom(k * q ** (2 * n)) * poch_term(k2 * q, first_base, n)
        bot = binom(q ** n) * binom(k * q ** n) * poch_term(q, q2, n)
        return top / bot * w ** n

    def t2(n):
        top = pochs([k2 * q, ONE / (k2 * q)], q2, n) * q2 ** n
        return top / (binom(q2 ** n) * pochs([q, q], q2, n))

    return (sum_qterms(t1, linear(w.exp, m0(k * q2) + pf(k2 * q, first_base)), N)
            - sum_qterms(t2, linear(q2.exp, pf(k2 * q, q2) + pf(ONE / (k2 * q), q2)), N))


def _rs2_mz_rhs(k: Monomial, q: Monomial, N: int, c) -> LaurentSeries:
    q2 = q * q
    k2 = k * k

    def t3(n):
        top = binom(ONE / (k2 * q)) * pochs([k2 * q2, ONE / k2], q2, n) * q ** (2 * n + 1)
        return top / (binom(q ** (2 * n + 1)) * pochs([q2, q2], q2, n)) * c

    lo = q.exp + Monomial.of(c).exp + m0(ONE / (k2 * q)) + pf(k2 * q2, q2) + pf(ONE / k2, q2)
    inner = lambda W: sum_qterms(t3, linear(q2.exp, lo), W, start=0) + ONE
    return _m_times(k, q, inner, N)


def cor_rs2_mz_sides(k, q: Monomial, N: int):
    """The a = 1/q corollary with the mz01 pair, in closed form.

    The first sum carries ``(k^2 q; q^2)_n`` and the odd-index series on the
    right carries a factor k in every term; both follow from inserting the
    pair into :func:`cor_rs2_general`.
    """
    k = Monomial.of(k)
    return _rs2_mz_lhs(k, q, N, q * q), _rs2_mz_rhs(k, q, N, k)


def cor_rs2_mz_misprinted(k, q: Monomial, N: int):
    """The same identity with ``(k^2 q; q)_n`` and without the factor k; it is false."""
    k = Monomial.of(k)
    return _rs2_mz_lhs(k, q, N, q), _rs2_mz_rhs(k, q, N, ONE)


def _rs2_pr4_lhs(k: Monomial, q: Monomial, N: int, misprint: bool) -> LaurentSeries:
    q2 = q * q
    k2 = k * k

    def t1(n):
        top = binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) * pochs([k2 * q, k, ONE / (k * q)], q, n) * q ** n
        if misprint:
            return top / pochs([q, k2 * q2, ONE / k, k * q], q2, n)
        return top / (binom(k) * pochs([q, k2 * q2, ONE / k, k * q], q, n))

    def t2(n):
        top = (binom(q ** (4 * n - 1)) * poch_term(q2, q2, n - 1)
               * pochs([k2 * q, ONE / (k2 * q2), ONE / q], q2, n) * q2 ** n)
        return top / (binom(ONE / q) * pochs([k2 * q2 * q, ONE / k2, q, q2], q2, n))

    return (sum_qterms(t1, linear(q.exp, m0(k * q2) + pf(k2 * q, q) + pf(k, q) + pf(ONE / (k * q), q)), N)
            - sum_qterms(t2, linear(q2.exp, m0(q2 * q) + pf(k2 * q, q2) + pf(ONE / (k2 * q2), q2)
                                    + pf(ONE / q, q2)), N))


def cor_rs2_pr4_sides(k, q: Monomial, N: int):
    """The a = 1/q corollary with the pr4 pair; the first denominator is ``(1-k)(q,k^2q^2,1/k,kq;q)_n``."""
    k = Monomial.of(k)
    return _rs2_pr4_lhs(k, q, N, False), at_order(lambda W: m_quotient(k, q, W).scale(k.coef).shift(k.exp), N)


def cor_rs2_pr4_misprinted(k, q: Monomial, N: int):
    """The same identity with base q^2 and no (1-k) in the first denominator; it is false."""
    k = Monomial.of(k)
    return _rs2_pr4_lhs(k, q, N, True), at_order(lambda W: m_quotient(k, q, W).scale(k.coef).shift(k.exp), N)


def _mz01_limit(k: Monomial, q: Monomial):
    """alpha_n(1/q, k) and lim (1 - aq) beta_n(a, k) at a = 1/q for the mz01 pair."""
    a = ONE / q
    k2 = k * k
    alpha = lambda n: poch_term(q * a * a / k2, q, n) / poch_term(q, q, n) * (k / a) ** n
    beta = lambda n: (pochs([ONE / k, k], q, n) / pochs([k2 * q, q], q, n)
                      * poch_term(k2 * q, q, 2 * n) / poch_term(q, q, 2 * n - 1))
    ab = (2 * (k / a).exp, pf(q * a * a / k2, q))
    bb = (0, pf(ONE / k, q) + pf(k, q) + pf(k2 * q, q))
    return alpha, beta, ab, bb


def _pr4_limit(k: Monomial, q: Monomial):
    """alpha_n(1/q, k) and lim (1 - aq) beta_n(a, k) at a = 1/q for the pr4 pair."""
    a = ONE / q
    q2 = q * q
    k2 = k * k

    def alpha(n):
        if n % 2:
            return QTerm.zero()
        m = n // 2
        t = binom(a * q ** (4 * m)) * poch_term(a * q2, q2, m - 1) * poch_term(a * a / k2, q2, m)
        return t / pochs([q2, q2 * k2 / a], q2, m) * (k / a) ** n

    beta = lambda n: (pochs([k, ONE / (k * q)], q, n) * poch_term(k2 * q2, q2, n)
                      / (poch_term(q2, q2, n - 1) * pochs([k2 * q2, q], q, n)) * (-(k * q)) ** n)
    ab = ((k / a).exp, m0(a * q ** 4) + pf(a * q2, q2) + pf(a * a / k2, q2))
    bb = ((k * q).exp, pf(k, q) + pf(ONE / (k * q), q) + pf(k2 * q2, q2))
    return alpha, beta, ab, bb


RS2_LIMITS = {"mz01": _mz01_limit, "pr4": _pr4_limit}


def cor_rs2_general(pair_id: str, k, q: Monomial, N: int):
    """The general a = 1/q corollary, for the pairs whose limit beta* is known in closed form."""
    k = Monomial.of(k)
    alpha, beta, (as_, ao), (bs, bo) = RS2_LIMITS[pair_id](k, q)
    q2 = q * q
    k2 = k * k
    w = -(ONE / k)

    def t1(n):
        top = binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) * poch_term(k2 * q, q, n) * poch_term(q2, q2, n - 1)
        bot = binom(k) * pochs([ONE / k, k * q], q, n) * poch_term(k2 * q2, q2, n)
        return top / bot * w ** n * beta(n)

    def t2(n):
        al = alpha(2 * n)
        if al.is_zero():
            return None
        top = poch_term(q2, q2, n - 1) * poch_term(k2 * q, q2, n) * al
        return top / (pochs([ONE / k2, q], q2, n) * k2 ** n)

    def t3(n):
        al = alpha(2 * n + 1)
        if al.is_zero():
            return None
        return pochs([k2 * q2, q], q2, n) * al / (pochs([q / k2, q2], q2, n) * k2 ** n)

    lhs = (sum_qterms(t1, linear(w.exp + bs, m0(k * q2) + pf(k2 * q, q) + bo), N)
           - sum_qterms(t2, linear(2 * (as_ - k.exp), pf(k2 * q, q2) + ao), N))
    sl = as_ - k.exp
    inner = lambda W: sum_qterms(t3, linear(2 * sl, as_ + ao + pf(k2 * q2, q2)), W, start=0) + ONE
    return lhs, _m_times(k, q, inner, N)


# ---------------------------------------------------------------------------
# G(k, q)

def G_series(pair: WpPairDef, k, q: Monomial, N: int, extras=None) -> LaurentSeries:
    k = Monomial.of(k)
    a = k * k
    P = PairParams(a, k, q, extras or {})
    pair.check(P)
    q2, q3 = q * q, q * q * q
    qk = q * k
    bs, bo = pair.beta_bound(P)
    as_, ao = pair.alpha_bound(P)

    def t1(n):
        be = pair.beta(P, n)
        if be.is_zero():
            return None
        top = binom(k * q ** (2 * n)) * poch_term(q, q, n - 1) ** 2 * poch_term(q * a, q2, n)
        bot = binom(k) * poch_term(k * q, q, n) ** 2 * poch_term(q, q2, n)
        return top / bot * (-qk) ** n * be

    def t2(n):
        al = pair.alpha(P, 2 * n)
        if al.is_zero():
            return None
        return poch_term(q2, q2, n - 1) ** 2 / poch_term(q2 * a, q2, n) ** 2 * qk ** (2 * n) * al

    def t3(n):
        al = pair.alpha(P, 2 * n + 1)
        if al.is_zero():
            return None
        return poch_term(q, q2, n) ** 2 / poch_term(q3 * a, q2, n) ** 2 * qk ** (2 * n + 1) * al

    s1 = sum_qterms(t1, linear(qk.exp + bs, m0(k * q2) + pf(q * a, q2) + bo), N)
    s2 = sum_qterms(t2, linear(2 * (qk.exp + as_), ao), N)
    sl = qk.exp + as_
    s3 = product(N,
                 lambda W: inf_quotient([q3 * a, q3 * a, q2, q2], [q2 * a, q2 * a, q, q], q2, W),
                 lambda W: sum_qterms(t3, linear(2 * sl, sl + ao), W, start=0))
    return s1 - s2 + s3


def _nlambert(x: Monomial, u: int, v: int, q: Monomial, N: int, weight=lambda n: n) -> LaurentSeries:
    """sum_{n>=1} weight(n) x^n q^{u n} / (1 - q^{v n})."""
    x = Monomial.of(x)

    def t(n):
        c = weight(n)
        if not c:
            return None
        y = x ** n * q ** (u * n)
        d = q ** (v * n)
        return QTerm(y.coef * c, y.exp, (), [(d.coef, d.exp)])

    return sum_qterms(t, linear(u * q.exp + x.exp, 0), N)


def g_lambert_rhs(k, q: Monomial, N: int) -> LaurentSeries:
    k = Monomial.of(k)
    return (_nlambert(Monomial(1), 1, 2, q, N) + _nlambert(k * k, 2, 2, q, N)
            - _nlambert(k, 1, 1, q, N))


def g_recip_forms(k, q: Monomial, N: int) -> list[LaurentSeries]:
    k = Monomial.of(k)
    k2 = k * k
    q2 = q * q
    ki = ONE / k
    lam_form = (_nlambert(Monomial(1), 1, 2, q, N).scale(rational(2)) + _nlambert(k2, 2, 2, q, N)
                + _nlambert(ki * ki, 2, 2, q, N) - _nlambert(k, 1, 1, q, N) - _nlambert(ki, 1, 1, q, N))
    fin = QTerm.of(k) * binom(k ** 3) / (binom(k) * binom(k2) ** 2)
    p1 = product(N,
                 lambda W: inf_quotient([q, q, -k2, -q / k2], [], q, W),
                 lambda W: inf_quotient([q2, q2], [k2, k2, q2 / k2, q2 / k2], q2, W, prefactor=QTerm.of(-k)))
    p2 = at_order(lambda W: inf_quotient([k2 * q, k2 * q, q / k2, q / k2, q2, q2, q2, q2],
                                         [k2, k2, q2 / k2, q2 / k2, q, q, q, q], q2, W,
                                         prefactor=QTerm.of(-k2)), N)
    return [lam_form, const(fin, N) + p1 + p2]


# ---------------------------------------------------------------------------
# theta-function corollaries

def psi_at(c, m: int, N: int) -> LaurentSeries:
    """psi(c q^m) to order N."""
    return subst(theta_psi(N // m + 1), c, m).truncate(N)


def psi4_sides(q: Monomial, N: int):
    lhs = (psi_at(1, 2, N) ** 4).shift(1).truncate(N)

    def t(n):
        j = n - 1
        d = q ** (4 * j + 2)
        y = q ** (2 * j + 1)
        return QTerm(y.coef * (2 * j + 1), y.exp, (), [(d.coef, d.exp)])

    return lhs, sum_qterms(t, linear(2, -1), N)


def wac_sides(q: Monomial, N: int):
    q2, q4 = q * q, q ** 4

    def t(n):
        top = binom(q ** (4 * n + 3)) * poch_term(q2, q2, n) * poch_term(q4, q4, n) * (-q) ** n
        return top / (binom(q ** (2 * n + 1)) * poch_term(q2, q2, n + 1) * poch_term(q2, q4, n + 1))

    return sum_qterms(t, linear(1, 0), N, start=0), psi_at(1, 2, N) ** 4


def _min1_half(pair: WpPairDef, Q: Monomial, N: int, extras) -> LaurentSeries:
    P = PairParams(Monomial(1), Monomial(-1), Q, extras)
    pair.check(P)
    bs, bo = pair.beta_bound(P)
    as_, ao = pair.alpha_bound(P)

    def tb(n):
        be = pair.beta(P, n)
        if be.is_zero():
            return None
        top = binom(-(Q ** (2 * n))) * poch_term(Q, Q, n - 1) ** 2 * Q ** n * HALF
        return top / poch_term(-Q, Q, n) ** 2 * be

    def ta(n):
        al = pair.alpha(P, n)
        if al.is_zero():
            return None
        return QTerm.of(Q ** n) / binom(Q ** n) ** 2 * al

    return (sum_qterms(tb, linear(Q.exp + bs, bo), N)
            - sum_qterms(ta, linear(Q.exp + as_, ao), N))


def min1_sides(pair: WpPairDef, q: Monomial, N: int, extras=None):
    ex = extras or {}
    lhs = _min1_half(pair, q, N, ex) - _min1_half(pair, -q, N, ex)
    rhs = (psi_at(1, 2, N) ** 4).shift(1).truncate(N).scale(rational(4))
    return lhs, rhs


def min2_sides(q: Monomial, N: int):
    q2 = q * q

    def half(Q):
        def t(n):
            top = binom(-(Q ** (2 * n))) * poch_term(Q, Q, n - 1) * Q ** (n * (n + 1) // 2)
            return top / (binom(Q ** (2 * n)) * poch_term(-Q, Q, n))
        return sum_qterms(t, linear(1, 0), N)

    three = rational(3)

    def t3(n):
        # 2q q^{8n^2-4n} [ (q^{8n-2}+3) q^{6n-2}/(1-q^{8n-2})^2
        #                 - (q^{4n-2}+1) q^{-2n}/(1-q^{4n-2})^2
        #                 + (3 q^{8n-6}+1) q^{2-6n}/(1-q^{8n-6})^2 ]
        base = 8 * n * n - 4 * n + 1
        u1 = QTerm(2 * three, base + 6 * n - 2, [(-ONE / three, 8 * n - 2)], [(ONE, 8 * n - 2)] * 2)
        u2 = QTerm(-2, base - 2 * n, [(-ONE, 4 * n - 2)], [(ONE, 4 * n - 2)] * 2)
        u3 = QTerm(2, base + 2 - 6 * n, [(-three, 8 * n - 6)], [(ONE, 8 * n - 6)] * 2)
        return [u1, u2, u3]

    # 8n^2 - 12n + 3 is the smallest exponent among the three pieces
    third = sum_qterms(t3, lambda n: 8 * n * n - 12 * n + 3, N)
    lhs = half(q) - half(-q) + third
    rhs = (psi_at(1, 2, N) ** 4).shift(1).truncate(N).scale(rational(4))
    return lhs, rhs


def r4_series(N: int) -> LaurentSeries:
    """Number of representations as a sum of four squares, by brute force."""
    import math
    r = math.isqrt(N)
    sq = [x * x for x in range(-r, r + 1)]
    counts = [0] * (N + 1)
    for w in sq:
        for x in sq:
            s2 = w + x
            if s2 > N:
                continue
            for y in sq:
                s3 = s2 + y
                if s3 > N:
                    continue
                for z in sq:
                    if s3 + z <= N:
                        counts[s3 + z] += 1
    return LaurentSeries([rational(c) for c in counts], 0, N)


def phi4_forms(q: Monomial, N: int) -> list[LaurentSeries]:
    one = LaurentSeries.constant(ONE, N)

    def tj(n):
        # n q^n / (1 + (-q)^n)
        y = q ** n
        d = (-q) ** n
        return QTerm(y.coef * n, y.exp, (), [(-d.coef, d.exp)])

    jac = one + sum_qterms(tj, linear(1, 0), N).scale(rational(8))
    phi4 = theta_phi(N) ** 4

    def series_for(u):
        uq = u * q

        def t(n):
            top = binom(u * q ** (2 * n)) * poch_term(q, q, n - 1) ** 2 * poch_term(-1, q, 2 * n)
            bot = binom(u) * poch_term(uq, q, n) ** 2 * poch_term(q, q, 2 * n)
            return top / bot * (-uq) ** n
        return sum_qterms(t, linear(1, 0), N)

    Iq = Monomial(I)
    pair_form = one + (series_for(Iq) + series_for(-Iq)).scale(rational(4))
    return [jac, phi4, pair_form]


def chi3_forms(t: Monomial, N: int) -> list[LaurentSeries]:
    """The three expressions, in the variable t with q = t^2, to t-order N."""
    q = t * t
    nine = rational(9)

    def tl(n):
        c = chi0(n)
        if not c:
            return None
        y = q ** n
        d = q ** (2 * n)
        return QTerm(y.coef * n, y.exp, (), [(d.coef, d.exp)])

    lam_form = sum_qterms(tl, linear(q.exp, 0), N).scale(nine)
    psi_q = psi_at(1, 2, N)
    psi_q3 = psi_at(1, 6, N)
    psi_t = psi_at(1, 1, N)
    psi_mt = psi_at(-1, 1, N)
    psi_t3 = psi_at(1, 3, N)
    psi_mt3 = psi_at(-1, 3, N)
    theta = (psi_q ** 6) / (psi_q3 ** 2) - (psi_t ** 3) * (psi_mt ** 3) / (psi_t3 * psi_mt3)
    q2 = q * q

    def series_for(u):
        v = u * u  # u^2 = conjugate root
        def tt(n):
            top = binom(u * q ** (2 * n)) * poch_term(q, q, n - 1) * poch_term(v * q, q2, n) * (-(u * q)) ** n
            bot = binom(q ** (3 * n)) * poch_term(u * q, q, n) * poch_term(q, q2, n)
            return top / bot
        return sum_qterms(tt, linear(q.exp, 0), N)

    w = Monomial(OMEGA)
    w2 = Monomial(OMEGA * OMEGA)
    three = rational(3)
    pair_form = (series_for(w).scale(three * (ONE - OMEGA * OMEGA))
                 + series_for(w2).scale(three * (ONE - OMEGA)))
    return [lam_form, theta.truncate(N), pair_form]


def aq_forms(q: Monomial, N: int):
    from .qkit import a_of_q_lambert
    return a_of_q(N), a_of_q_lambert(N)


def aq_diff_forms(q: Monomial, N: int) -> list[LaurentSeries]:
    q6 = q ** 6
    a = a_of_q(N)
    diff_form = a - subst(a_of_q(N // 2 + 1), 1, 2).truncate(N)
    prod_form = inf_quotient([q, q ** 5, q6, q6], [q * q, q ** 4, q ** 3, q ** 3], q6, N,
                             prefactor=QTerm(6, 1))
    psi_form = ((psi_at(1, 3, N) ** 3) / theta_psi(N)).shift(1).truncate(N).scale(rational(6))
    m_form = at_order(lambda W: m_quotient(q, q ** 3, W).shift(1).scale(rational(6)), N)
    return [diff_form, prod_form, psi_form, m_form]


def psi26_forms(q: Monomial, N: int) -> list[LaurentSeries]:
    lhs = (psi_at(1, 2, N) * psi_at(1, 6, N)).shift(1).truncate(N)
    s1 = sum_qterms(lambda n: QTerm(1, 6 * n - 5, (), [(ONE, 12 * n - 10)]), linear(6, -5), N)
    s2 = sum_qterms(lambda n: QTerm(1, 6 * n - 1, (), [(ONE, 12 * n - 2)]), linear(6, -1), N)
    m_form = at_order(lambda W: m_quotient(q, q ** 6, W).shift(1), N)
    return [lhs, s1 - s2, m_form]


def phi2_forms(q: Monomial, N: int) -> list[LaurentSeries]:
    phi2 = theta_phi(N) ** 2
    s1 = sum_qterms(lambda n: QTerm(1, 4 * n - 3, (), [(ONE, 4 * n - 3)]), linear(4, -3), N)
    s2 = sum_qterms(lambda n: QTerm(1, 4 * n - 1, (), [(ONE, 4 * n - 1)]), linear(4, -1), N)
    lam_form = LaurentSeries.constant(ONE, N) + (s1 - s2).scale(rational(4))
    m_form = m_quotient(Monomial(I), q, N).scale(rational(2))
    return [phi2, lam_form, m_form]


def a2q_forms(q: Monomial, N: int) -> list[LaurentSeries]:
    a2 = a_of_q(N) ** 2
    s = _nlambert(Monomial(1), 1, 1, q, N, weight=lambda n: n * chi0(n))
    return [a2, LaurentSeries.constant(ONE, N) + s.scale(rational(12))]


def sumid_forms(x, q: Monomial, N: int) -> list[LaurentSeries]:
    x = Monomial.of(x)

    def t(n):
        y = x * q ** n
        return QTerm(y.coef, y.exp, (), [(y.coef, y.exp)] * 2)

    sq = sum_qterms(t, linear(q.exp, x.exp), N)
    return [sq, _nlambert(x, 1, 1, q, N)]
