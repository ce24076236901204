import math

import numpy as np
import pytest

from socialfabric._validation import DomainError, ValidationError
from socialfabric.graph import DegreeSequence, Graph, binomial_population, sample_configuration
from socialfabric.percolation import Regime
from socialfabric.rng import stream
from socialfabric.spread import AudienceSpec, audience_sizes, predicted_reward, reward_probability_mc


def test_audience_sizes():
    assert audience_sizes(10**4) == (8, 8)
    assert audience_sizes(10**6) == (12, 12)
    assert audience_sizes(1, AudienceSpec(1, 1, 0.1)) == (0, 0)


def test_audience_alpha_range():
    with pytest.raises(ValidationError):
        AudienceSpec(alpha=0.2)
    with pytest.raises(ValidationError):
        AudienceSpec(alpha=0.0)


def test_connected_graph_always_rewards(rng):
    n = 50
    ring = Graph(n, [(i, (i + 1) % n) for i in range(n)])
    # removing one node from a cycle leaves a path, still connected
    assert reward_probability_mc(ring, 0, 3, 3, 100, rng).p_hat == 1.0


def test_perfect_matching_rarely_rewards():
    n = 10**4
    g = Graph(n, np.arange(n).reshape(-1, 2))
    est = reward_probability_mc(g, 0, 8, 8, 2000, stream(1))
    bound = 1 - (1 - 2 * 8 / n) ** 8
    assert bound < 0.014
    assert est.p_hat <= 0.05


def test_empty_graph_overlap_probability():
    # pure set overlap: 1 - C(96, 3) / C(99, 3) for three-of-99 draws
    exact = 1 - math.comb(96, 3) / math.comb(99, 3)
    assert exact == pytest.approx(0.088, abs=2e-3)
    est = reward_probability_mc(Graph.empty(100), 0, 3, 3, 20000, stream(2))
    assert abs(est.p_hat - exact) <= 4 * math.sqrt(exact * (1 - exact) / 20000)


def test_predicted_reward():
    assert predicted_reward(Regime.SUPERCRITICAL) == 1.0
    assert predicted_reward(Regime.SUBCRITICAL) == 0.0


def test_three_regular_round_trip():
    n = 20000
    g = sample_configuration(DegreeSequence([3] * n), stream(3))
    m_obs, m_rew = audience_sizes(n)
    assert reward_probability_mc(g, 0, m_obs, m_rew, 200, stream(4)).p_hat >= 0.9


def test_bad_arguments(rng):
    g = Graph.empty(5)
    with pytest.raises(DomainError):
        reward_probability_mc(g, 5, 1, 1, 10, rng)
    with pytest.raises(DomainError):
        reward_probability_mc(g, 0, 5, 1, 10, rng)
    with pytest.raises(DomainError):
        reward_probability_mc(g, 0, 1, 1, 0, rng)


def test_reward_monotone_in_theta():
    lo = reward_probability_mc(binomial_population(5000, 6, 0.12, stream(5))[1], 0, 8, 8, 300, stream(6))
    hi = reward_probability_mc(binomial_population(5000, 6, 0.35, stream(5))[1], 0, 8, 8, 300, stream(6))
    assert lo.p_hat < hi.p_hat
    assert 0 <= lo.std_err < 0.05
