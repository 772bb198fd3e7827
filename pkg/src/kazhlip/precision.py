"""Working-precision control for all non-rational (real) arithmetic.

Breakpoints, slopes and displacements are exact rationals throughout the
package; only step-function values, norms and bound functions live in
floating point. Those use mpmath at a configurable number of significant
decimal digits (default 30, never below 15). The environment variable
KAZHLIP_PRECISION overrides the default.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DomainError

DEFAULT_DIGITS = 30
MIN_DIGITS = 15


def _initial_digits() -> int:
    raw = os.environ.get("KAZHLIP_PRECISION")
    if raw is None:
        return DEFAULT_DIGITS
    try:
        digits = int(raw)
    except ValueError:
        return DEFAULT_DIGITS
    return max(digits, MIN_DIGITS)


def set_precision(digits: int) -> None:
    if digits < MIN_DIGITS:
        raise DomainError(f"precision must be >= {MIN_DIGITS}, got {digits}")
    mpmath.mp.dps = digits


def get_precision() -> int:
    return mpmath.mp.dps


@contextmanager
def precision(digits: int):
    old = mpmath.mp.dps
    set_precision(digits)
    try:
        yield
    finally:
        mpmath.mp.dps = old


def to_real(x) -> mpf:
    """Convert an exact rational / int / float / mpf to mpf at the
    current working precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def real_str(x, digits: int | None = None) -> str:
    """Decimal string at the configured number of significant digits."""
    if digits is None:
        digits = mpmath.mp.dps
    return mpmath.nstr(mpf(x), digits, strip_zeros=False)


set_precision(_initial_digits())
