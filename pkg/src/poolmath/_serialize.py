"""Conversion of engine outputs into strict-JSON-compatible values.

Floats keep their shortest round-trip decimal form (whatever json.dumps
produces from repr), arrays become lists, enums become their string
values, and non-finite numbers become null so payloads stay valid JSON.
"""

from __future__ import annotations

import enum
import math
from typing import Any

import numpy as np

from .concentrated import PriceRange


def jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, PriceRange):
        return [jsonable(value.p_low), jsonable(value.p_high)]
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")
