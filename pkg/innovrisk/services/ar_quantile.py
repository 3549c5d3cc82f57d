"""
alpha-autoregression quantiles: check-loss regression of X_t on (1, X_{t-1}, ..., X_{t-p}).

The minimization is the linear program

    min  alpha * 1'u+ + (1 - alpha) * 1'u-
    s.t. Y* b + u+ - u- = X,  u+, u- >= 0,  b free

solved with HiGHS. The solution is then snapped onto the
exact-fit basis of the p + 1 smallest absolute residuals and certified by the
residual sign census.
"""

import logging
import warnings

import numpy as np
from scipy import sparse
from scipy.optimize import OptimizeWarning, linprog

from innovrisk.exceptions import (
    ConvergenceError,
    InsufficientDataError,
    RankDeficientError,
    ValidationError,
)
from innovrisk.models.series import LaggedDesign
from innovrisk.schemas.estimation import ARQuantile, SolverOptions
from innovrisk.services.order_stats import check_level

logger = logging.getLogger(__name__)


def check_loss(alpha: float, u: float | np.ndarray) -> float | np.ndarray:
    """rho_alpha(u) = alpha * u for u > 0, (alpha - 1) * u for u < 0, 0 at 0."""
    check_level(alpha)
    u_arr = np.asarray(u, dtype=float)
    loss = np.where(u_arr > 0, alpha * u_arr, (alpha - 1.0) * u_arr)
    loss = np.abs(loss)  # turns the -0.0 at u = 0 into 0.0
    if loss.ndim == 0:
        return float(loss)
    return loss


def _objective(alpha: float, x: np.ndarray, y: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(check_loss(alpha, y - x @ b)))


def _solve_lp(alpha: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n, k = x.shape
    eye = sparse.identity(n, format="csr")
    a_eq = sparse.hstack([sparse.csr_matrix(x), eye, -eye], format="csr")
    cost = np.concatenate([np.zeros(k), np.full(n, alpha), np.full(n, 1.0 - alpha)])
    bounds = [(None, None)] * k + [(0, None)] * (2 * n)
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", category=OptimizeWarning)
        res = linprog(cost, A_eq=a_eq, b_eq=y, bounds=bounds, method="highs")
    if res.status != 0:
        raise ConvergenceError(f"quantile regression LP failed: {res.message}")
    return np.asarray(res.x[:k])


def _polish(alpha: float, x: np.ndarray, y: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Replace b by the exact fit through its p + 1 smallest residuals when that is no worse."""
    k = x.shape[1]
    basis = np.argsort(np.abs(y - x @ b), kind="stable")[:k]
    xb = x[basis]
    if np.linalg.matrix_rank(xb) < k:
        return b
    exact = np.linalg.solve(xb, y[basis])
    if _objective(alpha, x, y, exact) <= _objective(alpha, x, y, b) + 1e-12:
        return exact
    return b


def fit_ar_quantile(
    design: LaggedDesign, alpha: float, options: SolverOptions | None = None
) -> ARQuantile:
    """
    Minimize sum_t rho_alpha(X_t - Y*_{t-1}' b) over b in R^{p+1}.

    The design must carry the intercept column.
    """
    check_level(alpha)
    if not design.with_intercept:
        raise ValidationError("autoregression quantiles need a design with intercept")
    n, k = design.n_eff, design.p + 1
    if n <= k:
        raise InsufficientDataError(
            f"autoregression quantile needs more than {k} rows, got {n}"
        )
    if n * min(alpha, 1.0 - alpha) < 1.0:
        raise ValidationError(
            f"alpha={alpha} leaves an empty tail for n_eff={n}; "
            "need n_eff * min(alpha, 1 - alpha) >= 1"
        )

    x, y = design.regressors, design.responses
    if np.linalg.matrix_rank(x) < k:
        raise RankDeficientError(f"design of order {design.p} does not have full column rank")

    coeffs = _polish(alpha, x, y, _solve_lp(alpha, x, y))
    r = y - x @ coeffs
    zero_tol = 1e-9 * (1.0 + float(np.max(np.abs(y))))
    neg = int(np.count_nonzero(r < -zero_tol))
    zero = int(np.count_nonzero(np.abs(r) <= zero_tol))
    pos = n - neg - zero

    # subgradient optimality: N- <= n alpha <= N- + N0 (+ p + 1 slack for degenerate vertices)
    if not neg - 1e-9 <= n * alpha <= neg + zero + k + 1e-9:
        raise ConvergenceError(
            f"sign census violates optimality: neg={neg}, zero={zero}, n*alpha={n * alpha:.3f}",
            best_point=tuple(coeffs),
        )

    objective = _objective(alpha, x, y, coeffs)
    logger.debug(
        "AR quantile alpha=%.3f n=%d coeffs=%s objective=%.6g", alpha, n, coeffs, objective
    )
    return ARQuantile(
        alpha=alpha,
        coeffs=tuple(float(c) for c in coeffs),
        objective=objective,
        neg_count=neg,
        zero_count=zero,
        pos_count=pos,
        n_eff=n,
    )
