"""Working-precision helpers.

Every computation that builds real numbers takes a ``precision`` in decimal
digits and runs inside :func:`working`, a scoped gmpy2 context.  Nothing here
touches a process-wide default, so two computations at different precisions
never interfere.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_DIGITS = 16

_LOG2_10 = math.log2(10)


def bits(digits: int) -> int:
    if digits is None:
        digits = DEFAULT_DIGITS
    if int(digits) < 1:
        raise ValueError(f"precision must be a positive number of digits, got {digits}")
    return math.ceil(int(digits) * _LOG2_10)


def working(digits: int | None):
    """Context manager: run mpfr arithmetic at ``digits`` decimal digits."""
    return gmpy2.context(gmpy2.get_context(), precision=bits(digits))


GUARD_BITS = 64


def guarded(digits: int):
    """Like :func:`working` plus GUARD_BITS, for intermediates that get rounded once."""
    return gmpy2.context(gmpy2.get_context(), precision=bits(digits) + GUARD_BITS)


def rounded(x, digits: int):
    """``x`` rounded (once) to ``digits`` decimal digits."""
    return mpfr(x, bits(digits))


def is_real(x) -> bool:
    return isinstance(x, type(mpfr(0)))


def real(value):
    """Convert ``value`` to an mpfr at the current context precision.

    Strings are parsed at full precision (never via a double), so decimal
    reference values keep all their digits.
    """
    if isinstance(value, Fraction):
        return mpfr(mpq(value.numerator, value.denominator))
    if isinstance(value, str):
        return mpfr(value.strip())
    if isinstance(value, Decimal):
        return mpfr(str(value))
    return mpfr(value)


def exact(value) -> Fraction | None:
    """Exact rational view of ``value`` or None when it has none.

    Decimal strings such as ``"0.1"`` become 1/10, not the binary double.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            return None
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if type(value).__name__ == "mpq":
        return Fraction(int(value.numerator), int(value.denominator))
    return None


def scientific(x, digits: int = 6) -> str:
    """Format ``x`` as ``d.ddddde±XX`` with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        x = Decimal(x.numerator) / Decimal(x.denominator)
        return f"{x:.{digits - 1}e}"
    if not is_real(x):
        x = mpfr(x)
    if gmpy2.is_zero(x):
        return "0." + "0" * (digits - 1) + "e+00" if digits > 1 else "0e+00"
    if not gmpy2.is_finite(x):
        return str(x)
    mant, exp, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    exp -= 1
    body = mant[0] + ("." + mant[1:] if len(mant) > 1 else "")
    return f"{sign}{body}e{exp:+03d}"


def decimal_str(x) -> str:
    """Round-trippable decimal text for ``x`` at its own precision."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if is_real(x):
        if gmpy2.is_zero(x):
            return "0"
        mant, exp, _ = x.digits(10)
        sign = ""
        if mant.startswith("-"):
            sign, mant = "-", mant[1:]
        mant = mant.rstrip("0") or "0"
        return f"{sign}0.{mant}e{exp}"
    return repr(x)


def fixed(x, digits: int) -> str:
    """``x`` printed with ``digits`` significant digits in plain notation when sensible."""
    if not is_real(x):
        return str(x)
    if gmpy2.is_zero(x) or not gmpy2.is_finite(x):
        return str(x)
    d = Decimal(scientific(x, digits))
    if -6 <= d.adjusted() < digits:
        return format(d, "f")
    return scientific(x, digits)
