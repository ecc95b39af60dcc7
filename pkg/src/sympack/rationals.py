"""Exact rational parsing/formatting and directed-rounding square roots.

Every geometric quantity in this package is a ``fractions.Fraction``.  The
only irrational values that ever appear are square roots inside lower-bound
formulas; those are replaced by rational one-sided approximations computed
with integer square roots, so a returned bound is always a *certified*
lower bound, never a float guess.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import isqrt

DEFAULT_PRECISION_BITS = 128

PRECISION_ENV_VAR = "SYMPACK_PRECISION"


class RationalParseError(ValueError):
    """Raised when input is not an exact rational 'p/q' or integer string."""


def default_precision() -> int:
    """Precision in bits for directed-rounded bounds (env-overridable)."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise RationalParseError(
            f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}")
    if bits < 4:
        raise RationalParseError(f"{PRECISION_ENV_VAR} too small: {bits}")
    return bits


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer string into an exact Fraction.

    Decimal points and exponents are rejected: callers holding an
    irrational or floating-point quantity must approximate it by a rational
    explicitly (see :func:`rational_below`) so the approximation direction
    is a conscious choice.
    """
    s = text.strip()
    if not s:
        raise RationalParseError("empty rational literal")
    if any(c in s for c in ".eE"):
        raise RationalParseError(
            f"{text!r} is not an exact rational; approximate it by 'p/q' first")
    try:
        if "/" in s:
            num, den = s.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise RationalParseError(f"malformed rational {text!r}: {exc}") from None
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_below(x, max_denominator: int = 10**6) -> Fraction:
    """Best rational approximation to x from below with bounded denominator.

    Downward direction keeps volumes of approximated domains no larger
    than the true domain, so certificates stay sound.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    target = Fraction(x)
    cand = target.limit_denominator(max_denominator)
    if cand > target:
        # limit_denominator may round up; fall back to the floor grid point
        cand = Fraction((target.numerator * max_denominator)
                        // target.denominator, max_denominator)
    return cand


def sqrt_bounds(x, precision: int | None = None) -> tuple[Fraction, Fraction]:
    """Rational (lower, upper) enclosure of sqrt(x), exact on perfect squares.

    Width of the enclosure is at most 2^-precision relative to the scaled
    integer grid; both endpoints are exact Fractions.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of negative rational")
    bits = default_precision() if precision is None else precision
    num, den = x.numerator, x.denominator
    scaled = (num * den) << (2 * bits)
    root = isqrt(scaled)
    denom = den << bits
    lower = Fraction(root, denom)
    if root * root == scaled:
        return lower, lower
    return lower, Fraction(root + 1, denom)


def sqrt_lower(x, precision: int | None = None) -> Fraction:
    return sqrt_bounds(x, precision)[0]


def sqrt_upper(x, precision: int | None = None) -> Fraction:
    return sqrt_bounds(x, precision)[1]


def decimal_lower(x, digits: int = 12) -> str:
    """Decimal string of x rounded toward -infinity at the given digit count."""
    x = Fraction(x)
    scale = 10 ** digits
    scaled = (x.numerator * scale) // x.denominator
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"
