from __future__ import annotations

from typing import Iterable, Optional

import numpy as np


def mean_std(values: Iterable[int | float]) -> tuple[Optional[float], Optional[float]]:
    """Population mean and standard deviation, rounded to 3 decimals."""
    array = np.asarray(list(values), dtype=float)
    if array.size == 0:
        return None, None
    return round(float(array.mean()), 3), round(float(array.std()), 3)


def error_stats(errors: Iterable[int]) -> dict:
    values = [abs(int(error)) for error in errors]
    mean, std = mean_std(values)
    return {
        "count": len(values),
        "mean_abs_error": mean,
        "std_abs_error": std,
        "max_abs_error": max(values) if values else None,
    }
