"""Observer/rewarder sampling and the probability that a contribution is rewarded."""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, ValidationError
from .graph import components, remove_agent
from .percolation import Regime
from .rng import as_generator


@dataclass(frozen=True)
class AudienceSpec:
    """Audience sizes scale as ``k * n**alpha`` with ``0 < alpha < 1/6``."""

    k_obs: float = 3.0
    k_rew: float = 3.0
    alpha: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0 / 6.0:
            raise ValidationError(f"alpha={self.alpha!r} must lie in (0, 1/6)")
        if not (self.k_obs > 0 and self.k_rew > 0):
            raise ValidationError("k_obs and k_rew must be positive")


@dataclass(frozen=True)
class RewardEstimate:
    p_hat: float
    replications: int

    @property
    def std_err(self):
        return math.sqrt(self.p_hat * (1.0 - self.p_hat) / self.replications)


def audience_sizes(n, spec=AudienceSpec()):
    """``(m_obs, m_rew) = ceil(k * n**alpha)``, each capped at ``n - 1``."""
    if n < 1:
        raise DomainError("n must be at least 1")

    def size(k):
        # guard against k * n**alpha landing a hair above an integer
        return min(math.ceil(k * n**spec.alpha - 1e-9), n - 1)

    return size(spec.k_obs), size(spec.k_rew)


def reward_probability_mc(g, i, m_obs, m_rew, replications, rng=None, labels=None):
    """Monte Carlo estimate of P(agent ``i`` is rewarded) on graph ``g``.

    Each replication draws an observer set and an independent rewarder set,
    both uniformly without replacement from the nodes other than ``i``. The
    contribution is rewarded when some rewarder shares a component with some
    observer in ``g`` with ``i``'s own links removed. Pass precomputed
    ``labels`` (component ids of that reduced graph) to skip the census.
    """
    if not 0 <= i < g.n:
        raise DomainError(f"node {i} out of range")
    if m_obs > g.n - 1 or m_rew > g.n - 1 or m_obs < 0 or m_rew < 0:
        raise DomainError(f"cannot draw {m_obs} observers / {m_rew} rewarders from {g.n - 1} agents")
    if replications < 1:
        raise DomainError("replications must be at least 1")
    rng = as_generator(rng)
    if labels is None:
        labels = components(remove_agent(g, i)).labels
    others = np.delete(labels, i)
    hits = 0
    for _ in range(replications):
        obs = rng.choice(others.size, size=m_obs, replace=False)
        rew = rng.choice(others.size, size=m_rew, replace=False)
        if np.intersect1d(others[obs], others[rew]).size:
            hits += 1
    return RewardEstimate(hits / replications, replications)


def predicted_reward(regime):
    """Large-n limit of the reward probability: 1 above the threshold, 0 below."""
    return 1.0 if Regime(regime) is Regime.SUPERCRITICAL else 0.0

