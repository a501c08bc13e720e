"""Truncated formal Laurent series in one variable with exact coefficients.

A :class:`LaurentSeries` stores dense coefficients for exponents
``lower..order``.  Every coefficient with exponent ``<= order`` is known
exactly; nothing is known above ``order``.  Leading zeros are stripped, so for
a nonzero series ``lower`` is its valuation.  The zero series known to order
``N`` has ``lower == N + 1`` and no stored coefficients.
"""
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Callable, Iterable, Sequence

from .errors import NonUnitError, ValuationError
from .exact import ONE, ZERO, CycNumber, render

ValuationBound = Callable[[int], int]

# (sums, terms) tallied by the summation helpers while a counter is active
_TALLY: ContextVar[list | None] = ContextVar("_TALLY", default=None)


@contextmanager
def count_terms():
    """Tally the infinite sums evaluated inside the block: yields ``[sums, terms]``."""
    box = [0, 0]
    token = _TALLY.set(box)
    try:
        yield box
    finally:
        _TALLY.reset(token)


def tally(terms: int) -> None:
    box = _TALLY.get()
    if box is not None:
        box[0] += 1
        box[1] += terms


class LaurentSeries:
    __slots__ = ("lower", "order", "coeffs")

    def __init__(self, coeffs: Sequence = (), lower: int = 0, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = lower + len(coeffs) - 1
        n = order - lower + 1
        if n <= 0:
            coeffs = []
        elif len(coeffs) < n:
            coeffs.extend([ZERO] * (n - len(coeffs)))
        elif len(coeffs) > n:
            del coeffs[n:]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i:
            del coeffs[:i]
            lower += i
        if not coeffs:
            lower = order + 1
        self.lower = lower
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, coeffs: list, lower: int, order: int) -> LaurentSeries:
        # caller guarantees len(coeffs) == order - lower + 1 and coeffs[0] != 0
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.lower = lower
        obj.order = order
        return obj

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> LaurentSeries:
        return cls([], order + 1, order)

    @classmethod
    def constant(cls, c, order: int) -> LaurentSeries:
        return cls([c], 0, order)

    @classmethod
    def monomial(cls, c, e: int, order: int) -> LaurentSeries:
        return cls([c], e, order)

    @classmethod
    def from_dict(cls, terms: dict, order: int) -> LaurentSeries:
        """Series from an exponent -> coefficient mapping (missing exponents are zero)."""
        if not terms:
            return cls.zero(order)
        lo = min(terms)
        return cls([terms.get(e, ZERO) for e in range(lo, order + 1)], lo, order)

    # inspection ------------------------------------------------------------------
    def __getitem__(self, e: int):
        if e > self.order:
            raise IndexError(f"coefficient of q^{e} unknown (order {self.order})")
        if e < self.lower:
            return ZERO
        return self.coeffs[e - self.lower]

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        """Exponent of the first nonzero coefficient (``order + 1`` if none is known)."""
        return self.lower

    def items(self) -> Iterable[tuple[int, object]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lower + i, c

    def __repr__(self):
        parts = []
        for e, c in self.items():
            s = render(c)
            if e == 0:
                parts.append(s)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if s == "1":
                    parts.append(mono)
                elif s == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"({s})*{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self.order + 1})"

    def truncate(self, order: int) -> LaurentSeries:
        if order >= self.order:
            return self
        return LaurentSeries(self.coeffs[: max(0, order - self.lower + 1)], self.lower, order)

    # ring operations ---------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return self + LaurentSeries.constant(other, self.order)
        order = min(self.order, other.order)
        if not self.coeffs:
            return other.truncate(order)
        if not other.coeffs:
            return self.truncate(order)
        lo = min(self.lower, other.lower)
        n = order - lo + 1
        if n <= 0:
            return LaurentSeries.zero(order)
        out = [ZERO] * n
        for src in (self, other):
            off = src.lower - lo
            for i, c in enumerate(src.coeffs[: max(0, n - off)]):
                out[off + i] += c
        return LaurentSeries(out, lo, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._raw([-c for c in self.coeffs], self.lower, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        if not c:
            return LaurentSeries.zero(self.order)
        return LaurentSeries._raw([x * c for x in self.coeffs], self.lower, self.order)

    def shift(self, e: int) -> LaurentSeries:
        """Multiply by ``q^e``."""
        return LaurentSeries._raw(self.coeffs, self.lower + e, self.order + e)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        order = min(self.order + other.lower, other.order + self.lower)
        lo = self.lower + other.lower
        n = order - lo + 1
        if n <= 0 or not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(order)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * n
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return LaurentSeries(out, lo, order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentSeries:
        if e < 0:
            return series_inv(self) ** (-e)
        if e == 0:
            return LaurentSeries.constant(ONE, self.order - self.lower)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * series_inv(other)
        return self.scale(ONE / other)

    def __rtruediv__(self, other):
        return series_inv(self) * other

    # sparse kernels ------------------------------------------------------------
    def mul_binomial(self, c, s: int) -> LaurentSeries:
        """Multiply by ``1 - c q^s``."""
        if not c:
            return self
        if s < 0:
            # (1 - c q^s) = -c q^s (1 - q^-s / c)
            return self.shift(s).mul_binomial(ONE / c, -s).scale(-c)
        if s == 0:
            return self.scale(ONE - c)
        a = self.coeffs
        out = list(a)
        for i in range(s, len(a)):
            if a[i - s]:
                out[i] -= c * a[i - s]
        return LaurentSeries(out, self.lower, self.order)

    def div_binomial(self, c, s: int) -> LaurentSeries:
        """Divide by ``1 - c q^s``."""
        if not c:
            return self
        if s < 0:
            return self.shift(-s).div_binomial(ONE / c, -s).scale(-ONE / c)
        if s == 0:
            d = ONE - c
            if not d:
                raise NonUnitError("division by the zero constant 1 - c")
            return self.scale(ONE / d)
        out = list(self.coeffs)
        for i in range(s, len(out)):
            if out[i - s]:
                out[i] += c * out[i - s]
        return LaurentSeries._raw(out, self.lower, self.order) if out else self

    # comparison ---------------------------------------------------------------
    def first_mismatch(self, other: LaurentSeries, upto: int | None = None):
        """First exponent in the jointly known range where the series differ, or None."""
        order = min(self.order, other.order)
        if upto is not None:
            order = min(order, upto)
        lo = min(self.lower, other.lower)
        for e in range(lo, order + 1):
            if self[e] != other[e]:
                return e
        return None

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other, self.order)
        return self.first_mismatch(other) is None

    __hash__ = None


def as_series(x, order: int) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    return LaurentSeries.constant(x, order)


def series_add(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    return x + y


def series_mul(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    return x * y


def series_inv(x: LaurentSeries) -> LaurentSeries:
    """Inverse of ``c q^m (1 + u)``; known to order ``x.order - 2m``."""
    if not x.coeffs:
        raise NonUnitError("cannot invert a series with no known nonzero coefficient")
    m = x.lower
    a = x.coeffs
    n = len(a)
    inv0 = ONE / a[0]
    y = [inv0]
    for i in range(1, n):
        acc = ZERO
        for j in range(1, i + 1):
            if a[j]:
                acc += a[j] * y[i - j]
        y.append(-acc * inv0)
    return LaurentSeries(y, -m, x.order - 2 * m)


def series_subst_monomial(x: LaurentSeries, c, m: int) -> LaurentSeries:
    """Substitute ``q -> c q^m``; the result is known to order ``m*(order+1) - 1``."""
    if m < 1:
        raise ValueError("substitution exponent must be positive")
    if not c:
        raise ValueError("substitution constant must be nonzero")
    order = m * (x.order + 1) - 1
    if isinstance(c, int):
        c = ONE * c
    if not x.coeffs:
        return LaurentSeries.zero(order)
    lo = m * x.lower
    out = [ZERO] * (order - lo + 1)
    p = c ** x.lower if x.lower >= 0 else (ONE / c) ** (-x.lower)
    for i, v in enumerate(x.coeffs):
        if v:
            out[m * i] = v * p
        p = p * c
    return LaurentSeries(out, lo, order)


def sum_terms(term: Callable[[int], LaurentSeries], bound: ValuationBound, N: int,
              start: int = 1) -> LaurentSeries:
    """Sum ``term(n)`` for ``n = start, start+1, ...`` until ``bound(n) > N``.

    Each term must be known to order ``N`` and have valuation at least
    ``bound(n)``; the bound must be nondecreasing.
    """
    total = LaurentSeries.zero(N)
    n = start
    prev = None
    while True:
        b = bound(n)
        if prev is not None and b < prev:
            raise ValuationError(f"valuation bound decreases at n={n}: {prev} -> {b}")
        if b > N:
            tally(n - start)
            return total
        t = term(n)
        if t.order < N:
            raise ValuationError(f"term n={n} known only to order {t.order} < {N}")
        if t.coeffs and t.lower < b:
            raise ValuationError(f"term n={n} has valuation {t.lower} below bound {b}")
        total = total + t.truncate(N)
        prev = b
        n += 1


def product_terms(factor: Callable[[int], LaurentSeries], bound: ValuationBound, N: int,
                  start: int = 0) -> LaurentSeries:
    """Multiply factors ``1 + O(q^bound(j))`` until ``bound(j) > N``."""
    total = LaurentSeries.constant(ONE, N)
    j = start
    prev = None
    while True:
        b = bound(j)
        if prev is not None and b < prev:
            raise ValuationError(f"valuation bound decreases at j={j}")
        if b > N:
            return total
        if b < 1:
            raise ValuationError(f"factor bound at j={j} must be positive, got {b}")
        f = factor(j)
        if f.order < N:
            raise ValuationError(f"factor j={j} known only to order {f.order} < {N}")
        if f[0] != ONE or f.lower < 0:
            raise NonUnitError(f"factor j={j} is not of the form 1 + O(q)")
        u = f - ONE
        if u.coeffs and u.lower < b:
            raise ValuationError(f"factor j={j} has u-valuation {u.lower} below bound {b}")
        total = total * f.truncate(N)
        prev = b
        j += 1


def is_cyclotomic(s: LaurentSeries) -> bool:
    return any(isinstance(c, CycNumber) for c in s.coeffs)
