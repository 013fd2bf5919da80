"""Outward-rounded interval arithmetic with certified integer rounding.

Endpoints are MPFR floats (via gmpy2). Every operation computes the lower
endpoint under RoundDown and the upper endpoint under RoundUp; since MPFR
guarantees correct rounding for all its functions, each result interval
rigorously encloses the exact real value. "Certified" means the final
enclosure is narrow enough (width < 1/4) to isolate a unique integer.

Trigonometric range analysis (locating extrema of cos/sin inside an
interval) is done with exact rational arithmetic on the endpoints, so the
enclosures stay sound even when the argument interval is wide.

The certification driver re-evaluates an expression at doubling working
precision until its enclosure pins one integer, failing loudly at the
bit cap. Products such as cos^n near cancellation can lose Theta(n) bits,
which is exactly what the doubling schedule absorbs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import gmpy2

Rational = Union[int, Fraction]


class PrecisionExhausted(Exception):
    """The bit cap was reached before the enclosure isolated one integer."""


class _TooWide(Exception):
    # Internal: an enclosure is too wide for a domain-restricted operation
    # (division through zero, asin argument leaking out of [-1, 1], ...).
    # The certification loop catches this and retries at higher precision.
    pass


@dataclass(frozen=True)
class PrecisionBudget:
    """Working-precision schedule for certified evaluation.

    Evaluation starts at `start_bits` and doubles until the enclosure has
    width < 1/4 and contains exactly one integer, or `cap_bits` is hit.
    """

    start_bits: int = 128
    cap_bits: int = 65536

    def __post_init__(self) -> None:
        if self.start_bits < 2:
            raise ValueError("start_bits must be at least 2")
        if self.start_bits > self.cap_bits:
            raise ValueError("start_bits must not exceed cap_bits")


DEFAULT_BUDGET = PrecisionBudget()

_TARGET_WIDTH = Fraction(1, 4)


def _to_fraction(x: "gmpy2.mpfr") -> Fraction:
    """Exact value of a finite mpfr endpoint."""
    num, den = x.as_integer_ratio()
    return Fraction(int(num), int(den))


def _has_integer_mod(lo: Fraction, hi: Fraction, residue: int, modulus: int) -> bool:
    """Is there an integer m with lo <= m <= hi and m == residue (mod modulus)?"""
    m0 = math.ceil(lo)
    m0 += (residue - m0) % modulus
    return m0 <= hi


class IntervalField:
    """Factory and operation provider for intervals at one binary precision."""

    __slots__ = ("prec", "_dn", "_up", "_zero")

    def __init__(self, prec: int):
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        self.prec = prec
        self._dn = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
        self._up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
        self._zero = gmpy2.mpfr(0)

    # -- constructors --------------------------------------------------

    def interval(self, lo, hi) -> "RealInterval":
        return RealInterval(self, lo, hi)

    def zero(self) -> "RealInterval":
        return RealInterval(self, self._zero, self._zero)

    def one(self) -> "RealInterval":
        one = gmpy2.mpfr(1)
        return RealInterval(self, one, one)

    def from_rational(self, q: Rational) -> "RealInterval":
        """Tight two-sided enclosure of an exact integer or fraction."""
        if isinstance(q, int):
            v = gmpy2.mpz(q)
        else:
            v = gmpy2.mpq(q.numerator, q.denominator)
        return RealInterval(self, self._dn.add(self._zero, v), self._up.add(self._zero, v))

    def pi(self) -> "RealInterval":
        return RealInterval(self, self._dn.const_pi(), self._up.const_pi())

    def pi_times(self, q: Rational) -> "RealInterval":
        """Enclosure of pi*q for exact rational q."""
        return self.pi() * self.from_rational(q)

    def cos_pi_times(self, q: Rational) -> "RealInterval":
        return self.pi_times(q).cos()

    def sin_pi_times(self, q: Rational) -> "RealInterval":
        return self.pi_times(q).sin()

    def phasor(self, q: Rational) -> "ComplexInterval":
        """Enclosure of exp(i*pi*q) for exact rational q."""
        a = self.pi_times(q)
        return ComplexInterval(a.cos(), a.sin())

    def czero(self) -> "ComplexInterval":
        return ComplexInterval(self.zero(), self.zero())

    def _coerce(self, x) -> "RealInterval | None":
        # None (not an exception) so dunder callers can return NotImplemented
        # and let ComplexInterval's reflected operators take over
        if isinstance(x, RealInterval):
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_rational(x)
        return None


class RealInterval:
    """Closed interval [lo, hi] of MPFR endpoints enclosing one real value."""

    __slots__ = ("field", "lo", "hi")

    def __init__(self, field: IntervalField, lo, hi):
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi) and lo <= hi):
            raise _TooWide(f"invalid endpoints [{lo}, {hi}]")
        self.field = field
        self.lo = lo
        self.hi = hi

    def __repr__(self) -> str:
        return f"RealInterval({float(self.lo)!r}, {float(self.hi)!r})"

    # -- exact views ---------------------------------------------------

    def lo_fraction(self) -> Fraction:
        return _to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return _to_fraction(self.hi)

    def width(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def mid_float(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2.0

    def contains(self, q: Rational) -> bool:
        return self.lo_fraction() <= q <= self.hi_fraction()

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo_fraction() <= other.hi_fraction() and other.lo_fraction() <= self.hi_fraction()

    def unique_integer(self, max_width: Fraction = _TARGET_WIDTH) -> int | None:
        """The single integer in the enclosure, or None if not yet isolated."""
        lo, hi = self.lo_fraction(), self.hi_fraction()
        if hi - lo >= max_width:
            return None
        c = math.ceil(lo)
        if c != math.floor(hi):
            return None
        return c

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        F = self.field
        o = F._coerce(other)
        if o is None:
            return NotImplemented
        return RealInterval(F, F._dn.add(self.lo, o.lo), F._up.add(self.hi, o.hi))

    __radd__ = __add__

    def __neg__(self) -> "RealInterval":
        # negation through the field contexts: bare -mpfr would round at the
        # ambient thread precision and break containment
        F = self.field
        return RealInterval(F, F._dn.sub(0, self.hi), F._up.sub(0, self.lo))

    def __sub__(self, other):
        F = self.field
        o = F._coerce(other)
        if o is None:
            return NotImplemented
        return RealInterval(F, F._dn.sub(self.lo, o.hi), F._up.sub(self.hi, o.lo))

    def __rsub__(self, other):
        o = self.field._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        F = self.field
        o = F._coerce(other)
        if o is None:
            return NotImplemented
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(F._dn.mul(a, b) for a, b in pairs)
        hi = max(F._up.mul(a, b) for a, b in pairs)
        return RealInterval(F, lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        F = self.field
        o = F._coerce(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise _TooWide("division by an interval containing zero")
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(F._dn.div(a, b) for a, b in pairs)
        hi = max(F._up.div(a, b) for a, b in pairs)
        return RealInterval(F, lo, hi)

    def __rtruediv__(self, other):
        o = self.field._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def scale(self, q: Rational) -> "RealInterval":
        """Multiply by an exact integer or fraction.

        Routed through the interval product: gmpy2's mixed mpfr*mpq
        arithmetic rounds the rational conversion and the multiply
        separately, which inverts the rounding direction on negative
        operands, so a "single-rounded" fast path would be unsound.
        """
        return self * self.field.from_rational(q)

    def hull(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.field, min(self.lo, other.lo), max(self.hi, other.hi))

    def __abs__(self) -> "RealInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        neg_lo = self.field._up.sub(0, self.lo)
        return RealInterval(self.field, self.field._zero, max(neg_lo, self.hi))

    def sqr(self) -> "RealInterval":
        F = self.field
        if self.lo >= 0:
            return RealInterval(F, F._dn.mul(self.lo, self.lo), F._up.mul(self.hi, self.hi))
        if self.hi <= 0:
            return RealInterval(F, F._dn.mul(self.hi, self.hi), F._up.mul(self.lo, self.lo))
        hi = max(F._up.mul(self.lo, self.lo), F._up.mul(self.hi, self.hi))
        return RealInterval(F, F._zero, hi)

    def __pow__(self, n: int) -> "RealInterval":
        """x**n for integer n >= 0, tight via endpoint monotonicity."""
        F = self.field
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer exponents are supported")
        if n == 0:
            return F.one()
        if n == 1:
            return self
        if n % 2 == 1 or self.lo >= 0:
            # monotone increasing (odd power, or nonnegative base)
            return RealInterval(F, F._dn.pow(self.lo, n), F._up.pow(self.hi, n))
        if self.hi <= 0:
            return RealInterval(F, F._dn.pow(self.hi, n), F._up.pow(self.lo, n))
        hi = max(F._up.pow(self.lo, n), F._up.pow(self.hi, n))
        return RealInterval(F, F._zero, hi)

    # -- monotone elementary functions ----------------------------------

    def sqrt(self) -> "RealInterval":
        F = self.field
        if self.lo < 0:
            raise _TooWide("sqrt of an interval reaching below zero")
        return RealInterval(F, F._dn.sqrt(self.lo), F._up.sqrt(self.hi))

    def exp(self) -> "RealInterval":
        F = self.field
        return RealInterval(F, F._dn.exp(self.lo), F._up.exp(self.hi))

    def log(self) -> "RealInterval":
        F = self.field
        if self.lo <= 0:
            raise _TooWide("log of an interval reaching zero")
        return RealInterval(F, F._dn.log(self.lo), F._up.log(self.hi))

    def atan(self) -> "RealInterval":
        F = self.field
        return RealInterval(F, F._dn.atan(self.lo), F._up.atan(self.hi))

    def asin(self) -> "RealInterval":
        F = self.field
        if self.lo < -1 or self.hi > 1:
            raise _TooWide("asin argument enclosure leaves [-1, 1]")
        return RealInterval(F, F._dn.asin(self.lo), F._up.asin(self.hi))

    def cosh(self) -> "RealInterval":
        F = self.field
        if self.lo >= 0:
            return RealInterval(F, F._dn.cosh(self.lo), F._up.cosh(self.hi))
        if self.hi <= 0:
            return RealInterval(F, F._dn.cosh(self.hi), F._up.cosh(self.lo))
        one = gmpy2.mpfr(1)
        return RealInterval(F, one, max(F._up.cosh(self.lo), F._up.cosh(self.hi)))

    # -- trigonometric functions with extremum analysis ------------------

    def _pi_quotient(self) -> tuple[Fraction, Fraction]:
        # conservative enclosure of self/pi as exact fractions
        t = self / self.field.pi()
        return t.lo_fraction(), t.hi_fraction()

    def cos(self) -> "RealInterval":
        """Enclosure of cos over the interval.

        Extrema live at integer multiples of pi: even multiples give +1,
        odd give -1. The multiples test is conservative (the pi quotient is
        itself an enclosure), so false positives only widen the result.
        """
        F = self.field
        tlo, thi = self._pi_quotient()
        lo = min(F._dn.cos(self.lo), F._dn.cos(self.hi))
        hi = max(F._up.cos(self.lo), F._up.cos(self.hi))
        if _has_integer_mod(tlo, thi, 1, 2):
            lo = gmpy2.mpfr(-1)
        if _has_integer_mod(tlo, thi, 0, 2):
            hi = gmpy2.mpfr(1)
        return RealInterval(F, max(lo, gmpy2.mpfr(-1)), min(hi, gmpy2.mpfr(1)))

    def sin(self) -> "RealInterval":
        """Enclosure of sin; extrema at half-odd multiples of pi."""
        F = self.field
        tlo, thi = self._pi_quotient()
        lo = min(F._dn.sin(self.lo), F._dn.sin(self.hi))
        hi = max(F._up.sin(self.lo), F._up.sin(self.hi))
        # sin(pi*t) = +1 at t = 1/2 mod 2, -1 at t = 3/2 mod 2
        if _has_integer_mod(2 * tlo, 2 * thi, 3, 4):
            lo = gmpy2.mpfr(-1)
        if _has_integer_mod(2 * tlo, 2 * thi, 1, 4):
            hi = gmpy2.mpfr(1)
        return RealInterval(F, max(lo, gmpy2.mpfr(-1)), min(hi, gmpy2.mpfr(1)))


class ComplexInterval:
    """Rectangular complex enclosure: independent real and imaginary intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealInterval, im: RealInterval):
        self.re = re
        self.im = im

    def __repr__(self) -> str:
        return f"ComplexInterval({self.re!r}, {self.im!r})"

    @property
    def field(self) -> IntervalField:
        return self.re.field

    def _coerce(self, other) -> "ComplexInterval | None":
        if isinstance(other, ComplexInterval):
            return other
        re = self.field._coerce(other)
        if re is None:
            return None
        return ComplexInterval(re, self.field.zero())

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "ComplexInterval":
        if isinstance(other, (int, Fraction, RealInterval)):
            return ComplexInterval(self.re * other, self.im * other)
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ComplexInterval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer exponents are supported")
        result = ComplexInterval(self.field.one(), self.field.zero())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def abs2(self) -> RealInterval:
        return self.re.sqr() + self.im.sqr()

    def __abs__(self) -> RealInterval:
        return self.abs2().sqrt()

    def scale(self, q: Rational) -> "ComplexInterval":
        return ComplexInterval(self.re.scale(q), self.im.scale(q))

    def contains(self, re: Rational, im: Rational = 0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def phase_rep(self) -> RealInterval:
        """Enclosure of a continuous phase representative of the box.

        The representative agrees with the principal phase up to a fixed
        multiple of 2*pi on the whole box, so cos(a + n*phase) is unaffected
        by the choice. Boxes that straddle the origin in both coordinates
        fall back to the full circle [-pi, pi]; callers only hit that when
        the modulus enclosure is collapsing to zero anyway.
        """
        F = self.field
        c, s = self.re, self.im
        if c.lo > 0:
            return (s / c).atan()
        if c.hi < 0:
            return F.pi() + (s / c).atan()
        if s.lo > 0:
            return F.pi_times(Fraction(1, 2)) - (c / s).atan()
        if s.hi < 0:
            return F.pi_times(Fraction(-1, 2)) - (c / s).atan()
        p = F.pi()
        return RealInterval(F, F._dn.sub(0, p.hi), p.hi)


def certify_integer(
    evaluate: Callable[[IntervalField], RealInterval],
    budget: PrecisionBudget = DEFAULT_BUDGET,
) -> tuple[int, int]:
    """Evaluate an integer-valued expression until its enclosure is certified.

    `evaluate` must be a pure function of the field; it is re-run at doubling
    precision. Returns (integer, bits_used). Raises PrecisionExhausted if the
    cap is reached first; a wrong integer is never returned because every
    enclosure contains the true value by construction.
    """
    bits = budget.start_bits
    while True:
        try:
            value = evaluate(IntervalField(bits)).unique_integer()
        except _TooWide:
            value = None
        if value is not None:
            return value, bits
        if bits >= budget.cap_bits:
            raise PrecisionExhausted(
                f"enclosure not certified at {bits} bits (cap {budget.cap_bits}); "
                "raise cap_bits if the count is expected to be this large"
            )
        bits = min(2 * bits, budget.cap_bits)
