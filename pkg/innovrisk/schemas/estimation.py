"""
Pydantic schemas for solver options and fitted estimators.
"""

from typing import Literal

from pydantic import Field

from innovrisk.schemas.base import BaseSchema


class SolverOptions(BaseSchema):
    """Tolerances and restart policy shared by the R-fit and autoregression-quantile solvers."""

    method: Literal["pattern", "lp"] = "pattern"
    f_tol: float = Field(default=1e-8, gt=0)
    x_tol: float = Field(default=1e-6, gt=0)
    max_iter: int = Field(default=5000, ge=1)
    max_restarts: int = Field(default=2, ge=0)
    restart_spread: float = Field(default=0.2, gt=0)

    @classmethod
    def from_settings(cls, settings) -> "SolverOptions":
        return cls(
            method=settings.rfit_method,
            f_tol=settings.f_tol,
            x_tol=settings.x_tol,
            max_iter=settings.max_iter,
            max_restarts=settings.max_restarts,
            restart_spread=settings.restart_spread,
        )


class SolverTrace(BaseSchema):
    """Diagnostics of one R-fit run."""

    method: str
    iterations: int
    restarts: int
    subgradient_gap: float


class RFit(BaseSchema):
    """R-estimate of the AR slopes: minimizer of the Jaeckel dispersion."""

    slopes: tuple[float, ...]
    dispersion_at_min: float
    dispersion_at_start: float
    solver_trace: SolverTrace
    lambda_: float = Field(alias="lambda")
    n_eff: int


class ARQuantile(BaseSchema):
    """alpha-autoregression quantile (intercept, phi_1, ..., phi_p)."""

    alpha: float
    coeffs: tuple[float, ...]
    objective: float
    neg_count: int
    zero_count: int
    pos_count: int
    n_eff: int

    @property
    def intercept(self) -> float:
        return self.coeffs[0]

    @property
    def slopes(self) -> tuple[float, ...]:
        return self.coeffs[1:]
