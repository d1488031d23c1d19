import os
from typing import Optional

from ..errors import ValidationError

WORKERS_ENV = "TRUNCEXP_WORKERS"


def get_worker_count(override: Optional[int] = None) -> int:
    """
    Worker processes for simulations: `override` if given, else TRUNCEXP_WORKERS,
    else 1.
    """
    if override is not None:
        value = override
        source = "--workers"
    else:
        raw = os.environ.get(WORKERS_ENV)
        if not raw:
            return 1
        source = WORKERS_ENV
        try:
            value = int(raw)
        except ValueError:
            raise ValidationError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")

    if value < 1:
        raise ValidationError(f"{source} must be a positive integer, got {value}")
    return value
