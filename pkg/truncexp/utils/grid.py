"""
Axis grids given on the command line.

    "0.05:10:100"   100 evenly spaced points from 0.05 to 10 inclusive
    "1,1.5,2"       an explicit list
    "2"             a single point
"""

import math
from typing import List

import numpy as np

from ..errors import ValidationError


def _number(text: str, spec: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ValidationError(f"grid {spec!r}: {text.strip()!r} is not a number")
    if not math.isfinite(value):
        raise ValidationError(f"grid {spec!r}: {text.strip()!r} is not finite")
    return value


def parse_grid(spec: str) -> List[float]:
    spec = spec.strip()
    if not spec:
        raise ValidationError("empty grid specification")

    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValidationError(f"grid {spec!r} must look like start:stop:num")
        start, stop = _number(parts[0], spec), _number(parts[1], spec)
        try:
            num = int(parts[2])
        except ValueError:
            raise ValidationError(f"grid {spec!r}: point count {parts[2]!r} is not an integer")
        if num < 1:
            raise ValidationError(f"grid {spec!r}: point count must be positive")
        if num > 1 and not start < stop:
            raise ValidationError(f"grid {spec!r}: start must be below stop")
        return np.linspace(start, stop, num).tolist()

    values = [_number(part, spec) for part in spec.split(",") if part.strip()]
    if not values:
        raise ValidationError(f"grid {spec!r} has no points")
    return values
