"""
Exact number parsing for contest configuration documents
"""

import math
from fractions import Fraction
from typing import Any


def parse_number(value: Any) -> float:
    """Parse a config number; strings like "5/9" are read exactly as a fraction

    Decimal strings go through ``Fraction`` as well, so "0.18" and 0.18 give the
    same double.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, str):
        text = value.strip()
        try:
            number = float(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a number or fraction") from exc
    elif isinstance(value, (int, float, Fraction)):
        number = float(value)
    else:
        raise ValueError(f"expected a number or a fraction string, got {type(value).__name__}")
    if not math.isfinite(number):
        raise ValueError("numbers must be finite")
    return number
