"""Double-double arithmetic: roughly 31 significant digits from paired floats.

The error-free transforms (two_sum, split, two_prod) are the classical
Dekker/Knuth building blocks; the arithmetic on (hi, lo) pairs follows the
usual double-double algorithms.  Only the operations needed by the
recurrences in this package are provided: +, -, *, /, comparisons, abs.
"""

from __future__ import annotations

from fractions import Fraction

_SPLITTER = 134217729.0  # 2**27 + 1, exact in binary64


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b| or a == 0
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


class DoubleDouble:
    """Unevaluated sum hi + lo with |lo| <= ulp(hi)/2."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        s, e = _two_sum(float(hi), float(lo))
        self.hi = s
        self.lo = e

    @staticmethod
    def _coerce(value):
        if isinstance(value, DoubleDouble):
            return value
        if isinstance(value, (int, float)):
            return DoubleDouble(float(value))
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        s, e = _two_sum(self.hi, other.hi)
        t, f = _two_sum(self.lo, other.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = _quick_two_sum(s, e)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = -self.hi, -self.lo
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p, e = _two_prod(self.hi, other.hi)
        e += self.hi * other.lo + self.lo * other.hi
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = _quick_two_sum(p, e)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        q1 = self.hi / other.hi
        r = self - other * DoubleDouble(q1)
        q2 = r.hi / other.hi
        r = r - other * DoubleDouble(q2)
        q3 = r.hi / other.hi
        s, e = _quick_two_sum(q1, q2)
        return DoubleDouble(s, e + q3)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __abs__(self):
        return -self if self.hi < 0.0 or (self.hi == 0.0 and self.lo < 0.0) else self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = DoubleDouble(1.0)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ---------------------------------------------------------

    def _cmp(self, other):
        other = self._coerce(other)
        if other is None:
            return None
        if self.hi != other.hi:
            return -1 if self.hi < other.hi else 1
        if self.lo != other.lo:
            return -1 if self.lo < other.lo else 1
        return 0

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- conversions ---------------------------------------------------------

    def __float__(self) -> float:
        return self.hi + self.lo

    def __bool__(self) -> bool:
        return self.hi != 0.0 or self.lo != 0.0

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def __repr__(self) -> str:
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"
