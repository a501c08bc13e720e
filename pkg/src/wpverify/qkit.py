"""q-series building blocks on top of :mod:`wpverify.fps`.

Almost every quantity in a WP-Bailey identity is a product of a constant, a
power of ``q`` and binomials ``1 - c q^s``.  :class:`QTerm` keeps such a
product symbolically, so its valuation is known without expanding anything
and its expansion costs ``O(N)`` per binomial.  Sums of QTerms are expanded
incrementally by :func:`sum_qterms`.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Callable, Iterable, Sequence

from .errors import ConstraintError, ValuationError
from .exact import ONE, ZERO, CycNumber, Rational, cyc, rational, render
from .fps import LaurentSeries, ValuationBound, product_terms, series_subst_monomial, tally


def _num(c):
    if isinstance(c, int):
        return rational(c)
    if isinstance(c, CycNumber) and c.is_rational():
        return c.c[0]
    return c


class Monomial:
    """An exact monomial ``coef * q^exp``; parameters and bases are monomials."""

    __slots__ = ("coef", "exp")

    def __init__(self, coef=1, exp: int = 0):
        self.coef = _num(coef) if not isinstance(coef, Rational) else coef
        self.exp = exp

    @staticmethod
    def of(x) -> Monomial:
        return x if isinstance(x, Monomial) else Monomial(x, 0)

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coef * other.coef, self.exp + other.exp)
        return Monomial(self.coef * _num(other), self.exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coef / other.coef, self.exp - other.exp)
        return Monomial(self.coef / _num(other), self.exp)

    def __rtruediv__(self, other):
        return Monomial.of(other) / self

    def __neg__(self):
        return Monomial(-self.coef, self.exp)

    def __pow__(self, n: int):
        if n >= 0:
            return Monomial(self.coef ** n, self.exp * n)
        return Monomial((ONE / self.coef) ** (-n), self.exp * n)

    def __eq__(self, other):
        other = Monomial.of(other)
        return self.coef == other.coef and self.exp == other.exp

    def __hash__(self):
        return hash((self.coef, self.exp))

    def __bool__(self):
        return bool(self.coef)

    def is_constant(self) -> bool:
        return self.exp == 0

    def __repr__(self):
        c = render(self.coef)
        if self.exp == 0:
            return c
        return f"{c}*q^{self.exp}"

    def series(self, N: int) -> LaurentSeries:
        return LaurentSeries.monomial(self.coef, self.exp, N)


Q1 = Monomial(1, 1)


# ---------------------------------------------------------------------------
# in-place kernels on relative coefficient lists (unit parts)

def _mul_bin(a: list, b, s: int) -> None:
    for i in range(len(a) - 1, s - 1, -1):
        x = a[i - s]
        if x:
            a[i] -= b * x


def _div_bin(a: list, b, s: int) -> None:
    for i in range(s, len(a)):
        x = a[i - s]
        if x:
            a[i] += b * x


class QTerm:
    """``coef * q^exp * prod(1 - b q^s for num) / prod(1 - b q^s for den)``, all ``s >= 1``."""

    __slots__ = ("coef", "exp", "num", "den", "_counts")

    def __init__(self, coef=ONE, exp: int = 0, num: Iterable = (), den: Iterable = ()):
        coef = _num(coef)
        nums, dens = [], []
        if coef:
            for b, s in num:
                if not coef:
                    break
                coef, exp = _absorb(coef, exp, nums, b, s, top=True)
        for b, s in den:
            coef, exp = _absorb(coef, exp, dens, b, s, top=False)
        if not coef:
            nums, dens, exp = [], [], 0
        self.coef = coef
        self.exp = exp
        self.num = tuple(nums)
        self.den = tuple(dens)
        self._counts = None

    @classmethod
    def _raw(cls, coef, exp, num, den) -> QTerm:
        t = object.__new__(cls)
        t.coef, t.exp, t.num, t.den, t._counts = coef, exp, num, den, None
        return t

    @staticmethod
    def zero() -> QTerm:
        return QTerm(ZERO)

    @staticmethod
    def of(x) -> QTerm:
        if isinstance(x, QTerm):
            return x
        if isinstance(x, Monomial):
            return QTerm(x.coef, x.exp)
        return QTerm(x)

    def is_zero(self) -> bool:
        return not self.coef

    def valuation(self) -> float:
        return self.exp if self.coef else math.inf

    def counts(self):
        if self._counts is None:
            self._counts = (Counter(self.num), Counter(self.den))
        return self._counts

    def __mul__(self, other):
        if not isinstance(other, QTerm):
            if isinstance(other, Monomial):
                if not other.coef or not self.coef:
                    return QTerm.zero()
                return QTerm._raw(self.coef * other.coef, self.exp + other.exp, self.num, self.den)
            other = _num(other)
            if not other or not self.coef:
                return QTerm.zero()
            return QTerm._raw(self.coef * other, self.exp, self.num, self.den)
        if not self.coef or not other.coef:
            return QTerm.zero()
        return QTerm._raw(self.coef * other.coef, self.exp + other.exp,
                          self.num + other.num, self.den + other.den)

    __rmul__ = __mul__

    def inverse(self) -> QTerm:
        if not self.coef:
            raise ZeroDivisionError("inverse of a zero QTerm")
        return QTerm._raw(ONE / self.coef, -self.exp, self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, QTerm):
            return self * other.inverse()
        if isinstance(other, Monomial):
            return self * (ONE / other)
        return self * (ONE / _num(other))

    def __rtruediv__(self, other):
        return QTerm.of(other) * self.inverse()

    def __neg__(self):
        return self * -ONE

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if not self.coef:
            return QTerm.zero() if n else QTerm()
        return QTerm._raw(self.coef ** n, self.exp * n, self.num * n, self.den * n)

    def __repr__(self):
        f = lambda fs: "".join(f"(1-{render(b)}q^{s})" for b, s in fs)
        return f"QTerm({render(self.coef)}*q^{self.exp}*{f(self.num)}/[{f(self.den)}])"

    def unit_list(self, R: int) -> list:
        """Coefficients of the binomial quotient modulo ``q^(R+1)``."""
        a = [ONE] + [ZERO] * R
        for b, s in self.num:
            if s <= R:
                _mul_bin(a, b, s)
        for b, s in self.den:
            if s <= R:
                _div_bin(a, b, s)
        return a

    def to_series(self, N: int) -> LaurentSeries:
        if not self.coef or self.exp > N:
            return LaurentSeries.zero(N)
        a = self.unit_list(N - self.exp)
        c = self.coef
        return LaurentSeries([x * c for x in a], self.exp, N)


def _absorb(coef, exp, out: list, b, s: int, top: bool):
    """Fold ``1 - b q^s`` into (coef, exp, factor list) keeping stored exponents positive."""
    b = _num(b)
    if not b:
        return coef, exp
    if s == 0:
        d = ONE - b
        if top:
            return coef * d, exp
        if not d:
            raise ConstraintError("nonvanishing-denominator", "constant factor 1 - 1 in a denominator")
        return coef / d, exp
    if s < 0:
        # 1 - b q^s = -b q^s (1 - q^-s / b)
        out.append((ONE / b, -s))
        if top:
            return -coef * b, exp + s
        return coef / (-b), exp - s
    out.append((b, s))
    return coef, exp


def binom(x) -> QTerm:
    """The QTerm ``1 - x`` for a monomial x."""
    x = Monomial.of(x)
    return QTerm(ONE, 0, [(x.coef, x.exp)])


def diff(x, y) -> QTerm:
    """The QTerm ``x - y`` for monomials x, y, written as ``x (1 - y/x)``."""
    x, y = Monomial.of(x), Monomial.of(y)
    if not x:
        return QTerm.of(-y)
    return QTerm.of(x) * binom(y / x)


def poch_term(x, Q: Monomial, n: int) -> QTerm:
    """Finite q-Pochhammer ``(x; Q)_n = prod_{j<n} (1 - x Q^j)`` as a QTerm."""
    x = Monomial.of(x)
    if n < 0:
        raise ValueError("negative Pochhammer length")
    facs = []
    c, e = x.coef, x.exp
    for _ in range(n):
        facs.append((c, e))
        c = c * Q.coef
        e += Q.exp
    return QTerm(ONE, 0, facs)


def pochs(xs: Sequence, Q: Monomial, n: int) -> QTerm:
    """Product of several Pochhammer symbols sharing base and length."""
    t = QTerm()
    for x in xs:
        t = t * poch_term(x, Q, n)
    return t


def poch_floor(x, Q: Monomial) -> int:
    """Lower bound, over all n, for the valuation of ``(x; Q)_n``."""
    x = Monomial.of(x)
    if Q.exp <= 0:
        raise ValueError("base must have positive valuation")
    total, e = 0, x.exp
    while e < 0:
        total += e
        e += Q.exp
    return total


def inf_quotient(nums: Sequence, dens: Sequence, Q: Monomial, N: int,
                 prefactor: QTerm | None = None) -> LaurentSeries:
    """``prefactor * prod (x;Q)_inf over nums / prod (x;Q)_inf over dens`` to order N."""
    if Q.exp <= 0:
        raise ValueError("infinite products need a base of positive valuation")
    pre = QTerm() if prefactor is None else prefactor
    if pre.is_zero():
        return LaurentSeries.zero(N)
    heads = [(Monomial.of(x), True) for x in nums] + [(Monomial.of(x), False) for x in dens]
    # factors with exponent <= 0 are finitely many; fold them first
    lead = pre
    starts = []
    for x, top in heads:
        c, e = x.coef, x.exp
        facs = []
        while e <= 0:
            facs.append((c, e))
            c, e = c * Q.coef, e + Q.exp
        f = QTerm(ONE, 0, facs)
        lead = lead * f if top else lead / f
        starts.append((c, e, top))
    if lead.is_zero() or lead.exp > N:
        return LaurentSeries.zero(N)
    R = N - lead.exp
    num, den = list(lead.num), list(lead.den)
    for c, e, top in starts:
        target = num if top else den
        while e <= R:
            target.append((c, e))
            c, e = c * Q.coef, e + Q.exp
    return QTerm._raw(lead.coef, lead.exp, tuple(num), tuple(den)).to_series(N)


def poch_inf(x, Q: Monomial, N: int) -> LaurentSeries:
    """``(x; Q)_inf`` to order N."""
    return inf_quotient([x], [], Q, N)


def poch(head, baseExp: int, n, N: int) -> LaurentSeries:
    """``(head; q^baseExp)_n`` to order N; ``n`` may be ``math.inf``.

    ``head`` is a monomial/constant (fast path) or an arbitrary LaurentSeries.
    """
    if baseExp < 1:
        raise ValueError("base exponent must be positive")
    Q = Monomial(1, baseExp)
    if not isinstance(head, LaurentSeries):
        if n == math.inf:
            return poch_inf(head, Q, N)
        return poch_term(head, Q, n).to_series(N)
    if n == math.inf:
        if head.lower < 0:
            raise ValuationError("infinite Pochhammer needs a head of nonnegative valuation")
        first = LaurentSeries.constant(ONE, N) - head
        rest = product_terms(lambda j: LaurentSeries.constant(ONE, N + 1) - head.shift(baseExp * j),
                             lambda j: head.lower + baseExp * j, N, start=1)
        return first * rest
    work = N - min(0, head.lower) * n
    out = LaurentSeries.constant(ONE, work)
    for j in range(n):
        out = out * (LaurentSeries.constant(ONE, work) - head.truncate(work).shift(baseExp * j))
    return out.truncate(N)


# ---------------------------------------------------------------------------
# sums

def linear(slope: int, offset: int = 0) -> ValuationBound:
    """Valuation bound ``n -> slope*n + offset``."""
    if slope <= 0:
        raise ValueError("a summation bound needs a positive slope")
    return lambda n: slope * n + offset


class _Incremental:
    """Expands a stream of QTerms, reusing the previous expansion when possible."""

    def __init__(self, N: int):
        self.N = N
        self.prev = None
        self.unit = None

    def expand(self, t: QTerm) -> LaurentSeries:
        N = self.N
        if t.is_zero() or t.exp > N:
            return LaurentSeries.zero(N)
        R = N - t.exp
        p = self.prev
        if p is not None and R <= len(self.unit) - 1:
            pn, pd = p.counts()
            tn, td = t.counts()
            a = self.unit[: R + 1]
            for (b, s), m in (tn - pn).items():
                if s <= R:
                    for _ in range(m):
                        _mul_bin(a, b, s)
            for (b, s), m in (pn - tn).items():
                if s <= R:
                    for _ in range(m):
                        _div_bin(a, b, s)
            for (b, s), m in (td - pd).items():
                if s <= R:
                    for _ in range(m):
                        _div_bin(a, b, s)
            for (b, s), m in (pd - td).items():
                if s <= R:
                    for _ in range(m):
                        _mul_bin(a, b, s)
        else:
            a = t.unit_list(R)
        self.prev, self.unit = t, a
        c = t.coef
        return LaurentSeries([x * c for x in a], t.exp, N)


def sum_qterms(term: Callable[[int], object], bound: ValuationBound, N: int,
               start: int = 1) -> LaurentSeries:
    """Sum ``term(n)`` (a QTerm, a list of QTerms, or None for zero) until ``bound(n) > N``.

    Every QTerm's exact valuation is checked against ``bound(n)``.
    """
    acc: dict[int, object] = {}
    engines: list[_Incremental] = []
    n, prev = start, None
    while True:
        b = bound(n)
        if prev is not None and b < prev:
            raise ValuationError(f"valuation bound decreases at n={n}: {prev} -> {b}")
        if b > N:
            break
        t = term(n)
        parts = [] if t is None else (t if isinstance(t, list) else [t])
        while len(engines) < len(parts):
            engines.append(_Incremental(N))
        for eng, p in zip(engines, parts):
            if p.is_zero():
                continue
            if p.exp < b:
                raise ValuationError(f"term n={n} has valuation {p.exp} below bound {b}")
            for e, c in eng.expand(p).items():
                acc[e] = acc.get(e, ZERO) + c
        prev = b
        n += 1
    tally(n - start)
    return LaurentSeries.from_dict(acc, N)


# ---------------------------------------------------------------------------
# theta functions and friends

def theta_psi(N: int) -> LaurentSeries:
    """Ramanujan's psi(q) = sum_{n>=0} q^{n(n+1)/2}."""
    terms = {}
    n = 0
    while n * (n + 1) // 2 <= N:
        terms[n * (n + 1) // 2] = ONE
        n += 1
    return LaurentSeries.from_dict(terms, N)


def theta_psi_product(N: int) -> LaurentSeries:
    q2 = Monomial(1, 2)
    return inf_quotient([q2], [Q1], q2, N)


def theta_phi(N: int) -> LaurentSeries:
    """phi(q) = sum over all integers n of q^{n^2}."""
    terms = {0: ONE}
    n = 1
    while n * n <= N:
        terms[n * n] = rational(2)
        n += 1
    return LaurentSeries.from_dict(terms, N)


def theta_phi_product(N: int) -> LaurentSeries:
    q2 = Monomial(1, 2)
    return inf_quotient([Monomial(-1, 1), Monomial(-1, 1), q2], [], q2, N)


def a_of_q(N: int) -> LaurentSeries:
    """The cubic theta series sum_{m,n} q^{m^2+mn+n^2} by lattice enumeration."""
    terms: dict[int, object] = {}
    # m^2+mn+n^2 >= 3/4 max(m,n)^2
    r = math.isqrt(4 * N // 3 + 1) + 1
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            e = m * m + m * n + n * n
            if e <= N:
                terms[e] = terms.get(e, ZERO) + ONE
    return LaurentSeries.from_dict(terms, N)


def a_of_q_lambert(N: int) -> LaurentSeries:
    """a(q) = 1 + 6 sum q^{3n-2}/(1-q^{3n-2}) - 6 sum q^{3n-1}/(1-q^{3n-1})."""
    one = LaurentSeries.constant(ONE, N)
    s1 = lambert(Monomial(1, -2), 3, Monomial(1, -2), 3, N)
    s2 = lambert(Monomial(1, -1), 3, Monomial(1, -1), 3, N)
    return one + (s1 - s2).scale(rational(6))


def m_quotient(k, Q: Monomial, N: int) -> LaurentSeries:
    """``(k^2 Q, Q/k^2, Q^2, Q^2; Q^2)_inf / (k^2, Q^2/k^2, Q, Q; Q^2)_inf`` for a monomial k."""
    k = Monomial.of(k)
    k2 = k * k
    Q2 = Q * Q
    return inf_quotient([k2 * Q, Q / k2, Q2, Q2], [k2, Q2 / k2, Q, Q], Q2, N)


def m_product(k, N: int) -> LaurentSeries:
    """M(k, q) for a constant k with k^2 != 1."""
    k = Monomial.of(k)
    if not k.is_constant():
        raise ConstraintError("constant-k", "m_product takes a constant k; use m_quotient")
    if not k.coef:
        raise ConstraintError("k != 0")
    if k.coef * k.coef == ONE:
        raise ConstraintError("k^2 != 1", "(k^2; q^2)_inf has a vanishing constant factor")
    return m_quotient(k, Q1, N)


def lambert(cNum, mNum: int, cDen, mDen: int, N: int) -> LaurentSeries:
    """``sum_{n>=1} cNum q^{mNum n} / (1 - cDen q^{mDen n})`` with monomial coefficients."""
    if isinstance(cNum, LaurentSeries) or isinstance(cDen, LaurentSeries):
        return _lambert_series(cNum, mNum, cDen, mDen, N)
    cn, cd = Monomial.of(cNum), Monomial.of(cDen)
    if not cn:
        return LaurentSeries.zero(N)
    if mNum < 1 or mDen < 1:
        raise ValuationError("Lambert series exponents must be positive")
    # a denominator 1 - c q^s with s < 0 only raises the valuation
    term = lambda n: QTerm(cn.coef, cn.exp + mNum * n, (), [(cd.coef, cd.exp + mDen * n)])
    return sum_qterms(term, linear(mNum, cn.exp), N)


def _lambert_series(cNum, mNum, cDen, mDen, N):
    from .fps import as_series, series_inv, sum_terms
    cn = as_series(cNum, N + 64)
    cd = as_series(cDen, N + 64)
    if cn.is_zero():
        return LaurentSeries.zero(N)

    def term(n):
        work = N + 2 * max(0, -(cd.lower + mDen * n)) + max(0, -cn.lower) + 2
        den = LaurentSeries.constant(ONE, work) - cd.truncate(work).shift(mDen * n)
        return (cn.truncate(work).shift(mNum * n) * series_inv(den)).truncate(N)

    return sum_terms(term, linear(mNum, cn.lower), N)


def lambert_weighted(x, N: int) -> LaurentSeries:
    """``sum_{n>=1} n x^n q^n / (1 - q^n)``."""
    x = _num(x)
    if not x:
        return LaurentSeries.zero(N)
    return sum_qterms(lambda n: QTerm(n * x ** n, n, (), [(ONE, n)]), linear(1), N)


def lambert_squared(x, N: int) -> LaurentSeries:
    """``sum_{n>=1} x q^n / (1 - x q^n)^2``."""
    x = _num(x)
    if not x:
        return LaurentSeries.zero(N)
    return sum_qterms(lambda n: QTerm(x, n, (), [(x, n), (x, n)]), linear(1), N)


def chi0(n: int) -> int:
    """Principal character modulo 3."""
    return 0 if n % 3 == 0 else 1


def subst(x: LaurentSeries, c, m: int) -> LaurentSeries:
    return series_subst_monomial(x, c, m)
