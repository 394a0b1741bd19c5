"""Locale-independent number formatting."""

from __future__ import annotations

import math

SIGNIFICANT_DIGITS = 12


def format_number(x: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """``%.<digits>g`` with ``nan``/``inf`` spelled out; never depends on the locale."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{digits}g}"


def format_complex(z: complex, digits: int = 8) -> str:
    return f"{format_number(z.real, digits)}{'+' if z.imag >= 0 else '-'}{format_number(abs(z.imag), digits)}j"
