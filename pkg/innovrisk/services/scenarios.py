"""
Innovation samplers for the four simulation scenarios.
"""

from collections.abc import Callable

import numpy as np

from innovrisk.exceptions import ValidationError
from innovrisk.schemas.experiment import InnovationScenario, ScenarioTag
from innovrisk.services.rng import SeedLike, make_generator


def _scale_switched_normal(
    gen: np.random.Generator, size: int, weight: float, scale: float
) -> np.ndarray:
    # one uniform per draw picks the component, then one normal
    wide = gen.random(size) < weight
    z = gen.standard_normal(size)
    return np.where(wide, scale * z, z)


def draw(scenario: InnovationScenario, gen: np.random.Generator, size: int) -> np.ndarray:
    """size i.i.d. innovations from the scenario's law using `gen`."""
    if size < 0:
        raise ValidationError(f"sample size must be non-negative, got {size}")
    if scenario.tag is ScenarioTag.NORMAL:
        return gen.standard_normal(size)
    if scenario.tag is ScenarioTag.T3:
        df = scenario.t_df
        return gen.standard_t(df, size) * np.sqrt((df - 2.0) / df)
    if scenario.tag is ScenarioTag.MIXTURE:
        return _scale_switched_normal(gen, size, scenario.mixture_weight, scenario.mixture_scale)
    return _scale_switched_normal(
        gen, size, scenario.contamination_eps, scenario.contamination_scale
    )


def sample_innovations(scenario: InnovationScenario, n: int, seed: SeedLike = None) -> np.ndarray:
    return draw(scenario, make_generator(seed), n)


def make_sampler(scenario: InnovationScenario) -> Callable[[np.random.Generator, int], np.ndarray]:
    """Sampler in the (generator, size) form accepted by simulate_ar."""

    def sampler(gen: np.random.Generator, size: int) -> np.ndarray:
        return draw(scenario, gen, size)

    return sampler
