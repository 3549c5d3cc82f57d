"""
Rank score functions for R-estimation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from innovrisk.exceptions import ValidationError


@runtime_checkable
class ScoreFn(Protocol):
    """A nondecreasing score function J on (0, 1)."""

    def __call__(self, u: float | np.ndarray) -> float | np.ndarray: ...

    def centering(self, n: int) -> float: ...

    def centered_scores(self, n: int) -> np.ndarray: ...


@dataclass(frozen=True)
class StepScore:
    """
    Two-valued step score J_lambda(u) = lambda - 1[u < lambda].

    The indicator is strict, so J_lambda(lambda) = lambda.
    """

    lam: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.lam < 1.0:
            raise ValidationError(f"score lambda must lie in (0, 1), got {self.lam}")

    def __call__(self, u: float | np.ndarray) -> float | np.ndarray:
        u_arr = np.asarray(u, dtype=float)
        if np.any((u_arr <= 0.0) | (u_arr >= 1.0)):
            raise ValidationError("score argument must lie in (0, 1)")
        values = self.lam - (u_arr < self.lam).astype(float)
        if values.ndim == 0:
            return float(values)
        return values

    def _rank_scores(self, n: int) -> np.ndarray:
        return self(np.arange(1, n + 1) / (n + 1.0))

    def centering(self, n: int) -> float:
        """J-bar: mean of J(i / (n + 1)) over i = 1..n."""
        return float(np.mean(self._rank_scores(n)))

    def centered_scores(self, n: int) -> np.ndarray:
        """J(i / (n + 1)) - J-bar, indexed by rank - 1."""
        scores = self._rank_scores(n)
        return scores - scores.mean()

    def lower_count(self, n: int) -> int:
        """m = #{i <= n : i / (n + 1) < lambda}, the ranks carrying the low score."""
        return int(np.count_nonzero(np.arange(1, n + 1) / (n + 1.0) < self.lam))


def score_eval(score: ScoreFn, u: float) -> float:
    """Evaluate a score function at a single point of (0, 1)."""
    return float(score(u))
