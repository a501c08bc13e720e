"""Exact coefficient arithmetic: rationals and the cyclotomic field Q(zeta_12).

Rationals are ``gmpy2.mpq`` values. A :class:`CycNumber` holds four rational
coordinates over the basis ``1, z, z^2, z^3`` with ``z = exp(2 pi i / 12)``,
reduced by ``z^4 = z^2 - 1``. In that basis ``i = z^3`` and ``omega = z^4 =
z^2 - 1``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def rational(num, den=1) -> Rational:
    """Build a reduced rational from ints, Fractions or mpq values."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if isinstance(num, Fraction):
        num = mpq(num.numerator, num.denominator)
    if isinstance(den, Fraction):
        den = mpq(den.numerator, den.denominator)
    return mpq(num) / mpq(den) if den != 1 else mpq(num)


def _coerce(x):
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Rational)):
        return CycNumber((mpq(x), ZERO, ZERO, ZERO))
    if isinstance(x, (Fraction, _RationalABC)):
        return CycNumber((rational(x.numerator, x.denominator), ZERO, ZERO, ZERO))
    return None


class CycNumber:
    """An element ``c0 + c1 z + c2 z^2 + c3 z^3`` of Q(zeta_12)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=(0, 0, 0, 0)):
        c = tuple(mpq(v) if not isinstance(v, Fraction) else rational(v) for v in coeffs)
        if len(c) != 4:
            raise ValueError("CycNumber needs exactly four coordinates")
        self.c = c

    @staticmethod
    def _reduce(d):
        # d has length 7: fold z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
        d0, d1, d2, d3, d4, d5, d6 = d
        d0 -= d6
        d3 += d5
        d1 -= d5
        d2 += d4
        d0 -= d4
        return CycNumber.__new_raw((d0, d1, d2, d3))

    @staticmethod
    def __new_raw(c):
        obj = object.__new__(CycNumber)
        obj.c = c
        return obj

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        return CycNumber.__new_raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return CycNumber.__new_raw((-a[0], -a[1], -a[2], -a[3]))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        return CycNumber.__new_raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            a = self.c
            return CycNumber.__new_raw((a[0] * other, a[1] * other, a[2] * other, a[3] * other))
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        d = [ZERO] * 7
        for i in range(4):
            ai = a[i]
            if ai:
                for j in range(4):
                    if b[j]:
                        d[i + j] += ai * b[j]
        return CycNumber._reduce(d)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_12)")
        # columns of the multiplication-by-self matrix are self * z^j
        cols = []
        z = CycNumber.__new_raw((ZERO, ONE, ZERO, ZERO))
        cur = self
        for _ in range(4):
            cols.append(cur.c)
            cur = cur * z
        m = [[cols[j][i] for j in range(4)] + [ONE if i == 0 else ZERO] for i in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if m[r][col])
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [v / p for v in m[col]]
            for r in range(4):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return CycNumber.__new_raw(tuple(m[r][4] for r in range(4)))

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            r = o.c[0]
            if not r:
                raise ZeroDivisionError("division by zero in Q(zeta_12)")
            a = self.c
            return CycNumber.__new_raw((a[0] / r, a[1] / r, a[2] / r, a[3] / r))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNumber.__new_raw((ONE, ZERO, ZERO, ZERO))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison ------------------------------------------------------------
    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    def conjugate(self) -> CycNumber:
        """Complex conjugate (the automorphism sending z to z^-1)."""
        # z^-1 = z^11 = -z^5 = z - z^3
        zi = CycNumber.__new_raw((ZERO, ONE, ZERO, -ONE))
        c = self.c
        out = CycNumber.__new_raw((c[0], ZERO, ZERO, ZERO))
        p = CycNumber.__new_raw((ONE, ZERO, ZERO, ZERO))
        for j in range(1, 4):
            p = p * zi
            if c[j]:
                out = out + p * c[j]
        return out

    def __repr__(self):
        return f"CycNumber({render(self)})"

    def __str__(self):
        return render(self)


I = CycNumber((0, 0, 0, 1))
OMEGA = CycNumber((-1, 0, 1, 0))
ZETA = CycNumber((0, 1, 0, 0))


def cyc(x) -> CycNumber:
    """Coerce an int, Fraction, mpq or CycNumber to a CycNumber."""
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot coerce {x!r} to CycNumber")
    return o


def cyc_add(x, y) -> CycNumber:
    return cyc(x) + cyc(y)


def cyc_mul(x, y) -> CycNumber:
    return cyc(x) * cyc(y)


def cyc_inv(x) -> CycNumber:
    return cyc(x).inverse()


def simplify(x):
    """Demote a CycNumber with zero irrational part to an mpq."""
    if isinstance(x, CycNumber) and x.is_rational():
        return x.c[0]
    return x


def _fmt_rat(r) -> str:
    r = mpq(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _join(terms) -> str:
    out = ""
    for coef, name in terms:
        if not coef:
            continue
        if name:
            if coef == 1:
                body = name
            elif coef == -1:
                body = "-" + name
            else:
                body = _fmt_rat(coef) + name
        else:
            body = _fmt_rat(coef)
        if out and not body.startswith("-"):
            out += "+"
        out += body
    return out or "0"


def render(x) -> str:
    """Exact string form, using i or omega when the value lies in Q(i) or Q(omega)."""
    if not isinstance(x, CycNumber):
        return _fmt_rat(x)
    c0, c1, c2, c3 = x.c
    if not (c1 or c2):
        return _join([(c0, ""), (c3, "i")])
    if not (c1 or c3):
        # c0 + c2 z^2 = (c0 + c2) + c2 omega
        return _join([(c0 + c2, ""), (c2, "ω")])
    return _join([(c0, ""), (c1, "ζ"), (c2, "ζ^2"), (c3, "ζ^3")])
