"""
Base schema classes with shared configuration and serializers.
"""

import math
from datetime import date
from typing import Annotated

from pydantic import BaseModel, ConfigDict, PlainSerializer


def serialize_date_simple(d: date | None) -> str | None:
    """
    Serialize date as simple ISO date string (YYYY-MM-DD).
    """
    if d is None:
        return None
    return d.isoformat()


def serialize_float(x: float) -> float | None:
    """NaN and infinities become null in JSON output."""
    if not math.isfinite(x):
        return None
    return x


DateSimple = Annotated[date, PlainSerializer(serialize_date_simple, return_type=str)]
JsonFloat = Annotated[float, PlainSerializer(serialize_float, return_type=float | None)]


class BaseSchema(BaseModel):
    """
    Base schema class with standard configuration.

    Domain values are immutable after construction, so every schema is frozen.
    """

    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
    )
