"""
Pydantic schemas for tail-risk estimates and ground-truth targets.
"""

from enum import Enum

from innovrisk.schemas.base import BaseSchema, JsonFloat


class RiskMethod(str, Enum):
    MINIMIZATION = "minimization"
    TAIL_AVERAGE = "tail_average"


class TargetMethod(str, Enum):
    ANALYTIC = "analytic"
    MONTE_CARLO = "monte_carlo"


class RiskReport(BaseSchema):
    """VaR and CVaR of a sample at one level alpha."""

    alpha: float
    var_hat: float
    cvar_hat: float
    n_eff: int
    method: RiskMethod
    xi_star: float | None = None
    slopes: tuple[float, ...] | None = None


class CVaRTarget(BaseSchema):
    """True CVaR of an innovation law, analytic or Monte Carlo."""

    value: float
    std_error: JsonFloat = 0.0
    method: TargetMethod
    mc_size: int | None = None
    seed: int | None = None
