"""Tests for innovation samplers and seed derivation."""

import numpy as np
import pytest
from scipy import stats

from innovrisk.exceptions import ValidationError
from innovrisk.schemas.experiment import InnovationScenario
from innovrisk.services.rng import derive_seed, make_generator
from innovrisk.services.scenarios import draw, make_sampler, sample_innovations


def _mixture_cdf(weight: float, scale: float):
    def cdf(x):
        return (1 - weight) * stats.norm.cdf(x) + weight * stats.norm.cdf(x / scale)

    return cdf


CDFS = {
    "normal": stats.norm.cdf,
    "t3": stats.t(3, scale=np.sqrt(1 / 3)).cdf,
    "mixture": _mixture_cdf(0.1, 3.0),
    "contamination": _mixture_cdf(0.01, 10.0),
}


@pytest.mark.parametrize("tag", list(CDFS))
def test_draws_follow_the_scenario_law(tag):
    sample = sample_innovations(InnovationScenario.of(tag), 20_000, seed=11)
    result = stats.kstest(sample, CDFS[tag])
    assert result.pvalue > 1e-4


@pytest.mark.parametrize(
    "tag, variance, rel",
    [("normal", 1.0, 0.01), ("mixture", 1.8, 0.02), ("contamination", 1.99, 0.05)],
)
def test_variances(tag, variance, rel):
    sample = sample_innovations(InnovationScenario.of(tag), 1_000_000, seed=3)
    assert sample.var() == pytest.approx(variance, rel=rel)


def test_draws_are_deterministic_per_seed():
    scenario = InnovationScenario.of("mixture")
    first = sample_innovations(scenario, 100, seed=7)
    np.testing.assert_array_equal(first, sample_innovations(scenario, 100, seed=7))
    assert not np.array_equal(first, sample_innovations(scenario, 100, seed=8))


def test_sampler_matches_direct_draws():
    scenario = InnovationScenario.of("t3")
    sampler = make_sampler(scenario)
    np.testing.assert_array_equal(
        sampler(make_generator(7), 50), sample_innovations(scenario, 50, seed=7)
    )


def test_negative_size_rejected():
    with pytest.raises(ValidationError):
        draw(InnovationScenario.of("normal"), make_generator(1), -1)


def test_derived_seeds_depend_on_every_key():
    def first_draw(*keys):
        return make_generator(derive_seed(42, *keys)).standard_normal()

    base = first_draw("innovations", "normal", 100, 0)
    assert base == first_draw("innovations", "normal", 100, 0)
    assert base != first_draw("innovations", "normal", 100, 1)
    assert base != first_draw("innovations", "t3", 100, 0)
    assert first_draw("a") != make_generator(derive_seed(43, "a")).standard_normal()


def test_generator_passes_through():
    gen = np.random.default_rng(0)
    assert make_generator(gen) is gen
