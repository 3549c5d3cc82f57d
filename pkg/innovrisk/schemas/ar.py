"""
Pydantic schemas for the AR(p) model parametrization.
"""

import math

from pydantic import Field, computed_field, field_validator

from innovrisk.schemas.base import BaseSchema


class ARModel(BaseSchema):
    """X_t = intercept + phi_1 X_{t-1} + ... + phi_p X_{t-p} + Z_t."""

    phi: tuple[float, ...] = Field(min_length=1)
    intercept: float | None = None

    @field_validator("phi")
    @classmethod
    def _finite_slopes(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not all(math.isfinite(v) for v in value):
            raise ValueError("AR slopes must be finite")
        return value

    @computed_field  # type: ignore[prop-decorator]
    @property
    def p(self) -> int:
        return len(self.phi)

    @property
    def label(self) -> str:
        slopes = ",".join(f"{v:g}" for v in self.phi)
        return f"AR({self.p}) phi=({slopes})"

    @classmethod
    def require_stationary(
        cls, phi: tuple[float, ...], intercept: float | None = None, tol: float = 1e-9
    ) -> "ARModel":
        """Build a model, rejecting it unless all roots lie inside the unit circle."""
        from innovrisk.exceptions import NonStationaryError
        from innovrisk.services.ar_core import check_stationary

        model = cls(phi=tuple(phi), intercept=intercept)
        verdict = check_stationary(model, tol=tol)
        if not verdict.stationary:
            raise NonStationaryError(model.phi, verdict.max_modulus)
        return model


class StationarityVerdict(BaseSchema):
    """Outcome of the unit-circle check."""

    stationary: bool
    max_modulus: float
