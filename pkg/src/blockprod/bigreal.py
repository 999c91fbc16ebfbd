"""Arbitrary-precision dyadic reals with explicit per-value precision.

A :class:`BigReal` stores ``man * 2**exp`` with the mantissa normalised to
exactly ``prec`` bits (round half to even), so every value is an exact
dyadic rational and identical inputs always produce bit-identical results.
Binary operations return results at the *maximum* of the two operands'
precisions.

Transcendental evaluation does not happen on :class:`BigReal` directly:
higher layers compute in integer fixed-point at ``prec + GUARD_BITS`` bits
(:mod:`blockprod.fixedpoint`) and round once into a ``BigReal`` at the end.
``GUARD_BITS = 32`` keeps the documented ``2**(8 - prec)`` relative-error
budget honest with a wide margin.
"""

from __future__ import annotations

import math
from fractions import Fraction

from blockprod.fixedpoint import exp_split, pi_fixed, rshift_round

__all__ = ["BigReal", "GUARD_BITS", "MIN_PRECISION", "default_decimal_digits", "pi_value"]

GUARD_BITS = 32
MIN_PRECISION = 64

Rational = Fraction  # exact rational carrier used throughout the package


def _check_precision(prec: int) -> int:
    if not isinstance(prec, int) or prec < MIN_PRECISION:
        raise ValueError(f"precision_bits must be an integer >= {MIN_PRECISION}, got {prec!r}")
    return prec


def default_decimal_digits(prec: int) -> int:
    """Significant decimal digits printed for a ``prec``-bit value.

    ``ceil(prec * log10(2)) - 2``: never prints digits beyond what the
    precision guarantees.  Integer arithmetic only (30103/100000 is an upper
    approximation of log10(2), exact enough for any realistic ``prec``).
    """
    return (prec * 30103 + 99999) // 100000 - 2


def _round_half_even(man: int, shift: int) -> int:
    """Drop ``shift`` low bits of a positive mantissa, rounding half to even."""
    if shift <= 0:
        return man << (-shift)
    t = man >> (shift - 1)
    if t & 1 and ((t & 2) or (man & ((1 << (shift - 1)) - 1))):
        return (t >> 1) + 1
    return t >> 1


class BigReal:
    """An exact dyadic real ``man * 2**exp`` carrying its working precision."""

    __slots__ = ("man", "exp", "prec")

    def __init__(self, man: int, exp: int, prec: int):
        prec = _check_precision(prec)
        if man == 0:
            object.__setattr__(self, "man", 0)
            object.__setattr__(self, "exp", 0)
            object.__setattr__(self, "prec", prec)
            return
        sign = -1 if man < 0 else 1
        m = abs(man)
        shift = m.bit_length() - prec
        if shift:
            m = _round_half_even(m, shift)
            exp += shift
            if m.bit_length() > prec:  # rounding carried into a new bit
                m >>= 1
                exp += 1
        object.__setattr__(self, "man", sign * m)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("BigReal instances are immutable")

    # ---- constructors ----

    @classmethod
    def from_int(cls, n: int, prec: int) -> "BigReal":
        return cls(n, 0, prec)

    @classmethod
    def from_fraction(cls, value, prec: int) -> "BigReal":
        """Round any rational (Fraction or int) to ``prec`` bits."""
        prec = _check_precision(prec)
        fr = Fraction(value)
        n, d = fr.numerator, fr.denominator
        if n == 0:
            return cls(0, 0, prec)
        sign = -1 if n < 0 else 1
        n = abs(n)
        s = prec + 2 - (n.bit_length() - d.bit_length())
        if s >= 0:
            q, r = divmod(n << s, d)
        else:
            q, r = divmod(n, d << (-s))
        if r:
            q |= 1  # sticky bit: keeps round-to-nearest decisions exact
        return cls(sign * q, -s, prec)

    @classmethod
    def from_fixed(cls, value: int, scale: int, prec: int) -> "BigReal":
        """Interpret ``value / 2**scale`` as a BigReal at ``prec`` bits."""
        return cls(value, -scale, prec)

    @classmethod
    def exp_of_fixed(cls, log_value: int, scale: int, prec: int) -> "BigReal":
        """``exp(log_value / 2**scale)`` rounded to ``prec`` bits.

        The binary exponent of the result is split off as an integer, so any
        magnitude is representable without fixed-point overflow.
        """
        m, k = exp_split(log_value, scale)
        return cls(m, k - scale, prec)

    # ---- conversions ----

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << (-self.exp))

    def to_fixed(self, scale: int) -> int:
        """Value as an integer at fixed-point ``scale`` (rounded to nearest)."""
        sh = self.exp + scale
        return self.man << sh if sh >= 0 else rshift_round(self.man, -sh)

    def __float__(self) -> float:
        m = self.man
        e = self.exp
        bl = abs(m).bit_length()
        if bl > 53:
            m = rshift_round(m, bl - 53)
            e += bl - 53
        try:
            return math.ldexp(m, e)
        except OverflowError:
            return math.inf if m > 0 else -math.inf

    def __bool__(self) -> bool:
        return self.man != 0

    # ---- arithmetic ----

    def _coerce(self, other):
        if isinstance(other, BigReal):
            return other
        if isinstance(other, int):
            return BigReal.from_int(other, self.prec)
        if isinstance(other, Fraction):
            return BigReal.from_fraction(other, self.prec)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        prec = max(a.prec, b.prec)
        if a.man == 0:
            return BigReal(b.man, b.exp, prec)
        if b.man == 0:
            return BigReal(a.man, a.exp, prec)
        if a.exp < b.exp:
            a, b = b, a
        d = a.exp - b.exp
        if d > 2 * prec + 16:
            # b is below the rounding horizon: fold it into a quarter-ulp nudge
            nudge = 1 if b.man > 0 else -1
            return BigReal((a.man << 2) + nudge, a.exp - 2, prec)
        return BigReal((a.man << d) + b.man, b.exp, prec)

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.man, self.exp, self.prec)

    def __abs__(self):
        return BigReal(abs(self.man), self.exp, self.prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.__add__(-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b.__add__(-self)

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return self._mul_fraction(other, self.prec)
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return BigReal(self.man * b.man, self.exp + b.exp, max(self.prec, b.prec))

    __rmul__ = __mul__

    def _mul_fraction(self, fr: Fraction, prec: int) -> "BigReal":
        """Exact multiply by a rational, single rounding at the end."""
        if fr == 0 or self.man == 0:
            return BigReal(0, 0, prec)
        n = self.man * fr.numerator
        d = fr.denominator
        if d == 1:
            return BigReal(n, self.exp, prec)
        sign = -1 if n < 0 else 1
        n = abs(n)
        s = prec + 2 - (n.bit_length() - d.bit_length())
        if s >= 0:
            q, r = divmod(n << s, d)
        else:
            q, r = divmod(n, d << (-s))
        if r:
            q |= 1
        return BigReal(sign * q, self.exp - s, prec)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.man == 0:
            raise ZeroDivisionError("BigReal division by zero")
        prec = max(self.prec, b.prec)
        if self.man == 0:
            return BigReal(0, 0, prec)
        sign = -1 if (self.man < 0) != (b.man < 0) else 1
        n = abs(self.man)
        d = abs(b.man)
        s = prec + 2 - (n.bit_length() - d.bit_length())
        if s >= 0:
            q, r = divmod(n << s, d)
        else:
            q, r = divmod(n, d << (-s))
        if r:
            q |= 1
        return BigReal(sign * q, self.exp - b.exp - s, prec)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b.__truediv__(self)

    def sqrt(self) -> "BigReal":
        if self.man < 0:
            raise ValueError("sqrt of negative BigReal")
        if self.man == 0:
            return BigReal(0, 0, self.prec)
        k = 2 * self.prec + 4
        if (self.exp - k) & 1:
            k += 1
        q = math.isqrt(self.man << k)
        if q * q != self.man << k:
            q |= 1
        return BigReal(q, (self.exp - k) // 2, self.prec)

    # ---- comparisons (exact, precision-independent) ----

    def _cmp(self, other) -> int:
        b = self._coerce(other)
        if b is None:
            raise TypeError(f"cannot compare BigReal with {type(other).__name__}")
        if self.exp >= b.exp:
            lhs = self.man << (self.exp - b.exp)
            rhs = b.man
        else:
            lhs = self.man
            rhs = b.man << (b.exp - self.exp)
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None  # mutable-free but not meant for dict keys

    # ---- rendering ----

    def to_decimal(self, sig_digits: int | None = None) -> str:
        """Deterministic decimal string with ``sig_digits`` significant digits.

        Defaults to :func:`default_decimal_digits` of the value's precision.
        Exact integer arithmetic end to end; round half up on the last digit.
        """
        sig = default_decimal_digits(self.prec) if sig_digits is None else sig_digits
        if sig < 1:
            raise ValueError("sig_digits must be >= 1")
        if self.man == 0:
            return "0"
        v = abs(self.man)
        e10 = ((v.bit_length() - 1 + self.exp) * 30103) // 100000
        while True:
            t = e10 - sig + 1
            num, den = v, 1
            if t >= 0:
                den = 10**t
            else:
                num = v * 10 ** (-t)
            if self.exp >= 0:
                num <<= self.exp
            else:
                den <<= -self.exp
            q = (2 * num + den) // (2 * den)
            if q >= 10**sig:
                e10 += 1
            elif q < 10 ** (sig - 1):
                e10 -= 1
            else:
                break
        digits = str(q)
        sign = "-" if self.man < 0 else ""
        if -4 <= e10 < sig:
            if e10 >= 0:
                head, tail = digits[: e10 + 1], digits[e10 + 1 :]
                body = head + ("." + tail if tail else "")
            else:
                body = "0." + "0" * (-e10 - 1) + digits
        else:
            body = digits[0] + "." + digits[1:] + f"e{e10:+d}"
        return sign + body

    def __repr__(self) -> str:
        return f"BigReal({self.to_decimal(min(24, default_decimal_digits(self.prec)))!r}, prec={self.prec})"

    # ---- spec-named accessors ----

    @property
    def precision_bits(self) -> int:
        return self.prec

    def ulp(self) -> Fraction:
        """One unit in the last place of this value (0 has ulp 2**-prec)."""
        if self.man == 0:
            return Fraction(1, 1 << self.prec)
        return Fraction(1, 1 << -self.exp) if self.exp < 0 else Fraction(1 << self.exp)


def pi_value(prec: int) -> BigReal:
    """``pi`` to ``prec`` bits via Machin's arctangent formula.

    Independent of the Gamma machinery, so identities that reduce to ``pi``
    through Euler reflection are never checked against themselves.
    """
    prec = _check_precision(prec)
    F = prec + GUARD_BITS
    return BigReal.from_fixed(pi_fixed(F), F, prec)
