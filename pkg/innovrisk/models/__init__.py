"""
Immutable numpy-backed containers shared by the services.
"""

from innovrisk.models.score import ScoreFn, StepScore, score_eval
from innovrisk.models.series import LaggedDesign, Series

__all__ = ["LaggedDesign", "ScoreFn", "Series", "StepScore", "score_eval"]
