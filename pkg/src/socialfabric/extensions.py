"""Multiple communities and strategic information spreading."""

import json
from dataclasses import dataclass

import numpy as np

from ._validation import ValidationError
from .agents import PreferenceSpec, simulate_population, solve_equilibrium
from .degree_model import DegreeModelSpec, DegreePmf
from .graph import (
    GAMMA,
    DegreeSequence,
    Graph,
    components,
    remove_agent,
    sample_bipartite,
    sample_configuration,
    sample_degrees,
)
from .rng import as_generator, stream
from .spread import RewardEstimate


# -- independent communities ---------------------------------------------------------


@dataclass(frozen=True)
class CommunitySpec:
    preferences: PreferenceSpec = PreferenceSpec()
    degree_spec: DegreeModelSpec = DegreeModelSpec()
    f: float = 0.5
    n: int = 2000


@dataclass(frozen=True)
class CommunityReport:
    index: int
    equilibrium: object
    empirical_connectivity: float
    gc_fraction: float
    mean_second_stage: float

    def to_json(self):
        row = dict(self.equilibrium.as_row())
        row.update(
            community=self.index,
            empirical_connectivity=self.empirical_connectivity,
            gc_fraction=self.gc_fraction,
            mean_second_stage=self.mean_second_stage,
        )
        return json.dumps(row, sort_keys=True)


def independent_communities(specs, master_seed):
    """Solve each community on its own stream ``(master_seed, index)``.

    Communities share no state, so a report depends only on its own spec.
    """
    reports = []
    for m, spec in enumerate(specs):
        eq = solve_equilibrium(spec.preferences, spec.degree_spec, spec.f)
        pop = simulate_population(
            spec.preferences, spec.degree_spec, spec.f, spec.n, stream(master_seed, m), report=eq
        )
        reports.append(
            CommunityReport(m, eq, pop.connectivity, pop.gc_fraction, pop.mean_second_stage)
        )
    return reports


# -- cross-community membership ------------------------------------------------------


@dataclass(frozen=True)
class CrossCommunitySpec:
    """Two communities with their own degree PMFs plus between-community degrees.

    ``out_pmf_b`` defaults to ``out_pmf``.
    """

    pmf_a: DegreePmf
    pmf_b: DegreePmf
    out_pmf: DegreePmf
    n_a: int = 20000
    n_b: int = 20000
    out_pmf_b: DegreePmf = None

    def __post_init__(self):
        if self.n_a < 2 or self.n_b < 1:
            raise ValidationError("community sizes too small")


def sample_cross_network(spec, rng=None):
    """Union of G_A, G_B (offset by n_a) and the bipartite between-community graph."""
    rng = as_generator(rng)
    zeros_a = np.zeros(spec.n_a, dtype=np.int64)
    zeros_b = np.zeros(spec.n_b, dtype=np.int64)
    g_a = sample_configuration(sample_degrees([spec.pmf_a], rng, labels=zeros_a), rng)
    g_b = sample_configuration(sample_degrees([spec.pmf_b], rng, labels=zeros_b), rng)
    out_b = spec.out_pmf_b or spec.out_pmf
    # between-community degrees need no parity repair: bipartite matching trims instead
    seq_out_a = _raw_degrees(spec.out_pmf, spec.n_a, rng)
    seq_out_b = _raw_degrees(out_b, spec.n_b, rng)
    g_ab = sample_bipartite(seq_out_a, seq_out_b, rng)
    edges = np.vstack([g_a.edges, g_b.edges + spec.n_a, g_ab.edges])
    return Graph(spec.n_a + spec.n_b, edges)


def _raw_degrees(pmf, n, rng):
    cdf = np.cumsum(pmf.probs)
    cdf[-1] = 1.0
    return DegreeSequence(np.searchsorted(cdf, rng.random(n), side="right"))


def cross_membership_reward(spec, m_obs, m_rew, replications, rng=None):
    """Reward probability for a focal A-agent whose audience lives in A only.

    Information may travel through community B: components are taken in the
    union network with the focal agent's links removed.
    """
    rng = as_generator(rng)
    g = sample_cross_network(spec, rng)
    i = int(rng.integers(spec.n_a))
    labels = components(remove_agent(g, i)).labels
    pool = np.delete(labels[: spec.n_a], i)
    if m_obs > pool.size or m_rew > pool.size:
        raise ValidationError("audience larger than community A")
    hits = 0
    for _ in range(replications):
        obs = pool[rng.choice(pool.size, size=m_obs, replace=False)]
        rew = pool[rng.choice(pool.size, size=m_rew, replace=False)]
        hits += bool(np.intersect1d(obs, rew).size)
    return RewardEstimate(hits / replications, replications)


# -- strategic spreading -------------------------------------------------------------


@dataclass(frozen=True)
class StrategicSpec:
    """Reward for gossiping/rewarding and finite cost PMFs ``{cost: prob}``."""

    R_tilde: float = 1.0
    gossip_cost_pmf: tuple = ((0.0, 0.3), (0.5, 0.5), (2.0, 0.2))
    reward_cost_pmf: tuple = ((0.0, 0.4), (0.5, 0.4), (2.0, 0.2))

    def __post_init__(self):
        if not self.R_tilde > 0:
            raise ValidationError("R_tilde must be positive")
        for name in ("gossip_cost_pmf", "reward_cost_pmf"):
            pmf = dict(getattr(self, name))
            if any(c < 0 for c in pmf) or abs(sum(pmf.values()) - 1.0) > 1e-12:
                raise ValidationError(f"{name} must be a PMF over non-negative costs")
        if dict(self.gossip_cost_pmf).get(0.0, 0.0) <= 0:
            raise ValidationError("gossip costs need an atom at zero")


@dataclass(frozen=True, eq=False)
class SpreadingCosts:
    """``gossip[e, 0]`` is the cost of telling across edge e from its first endpoint, ``[e, 1]`` from the second."""

    gossip: np.ndarray
    reward: np.ndarray


def sample_strategic_costs(g, spec, rng=None):
    rng = as_generator(rng)
    gc, gp = zip(*spec.gossip_cost_pmf)
    rc, rp = zip(*spec.reward_cost_pmf)
    gossip = rng.choice(np.array(gc), size=(g.m, 2), p=np.array(gp))
    reward = rng.choice(np.array(rc), size=g.n, p=np.array(rp))
    return SpreadingCosts(gossip, reward)


@dataclass(frozen=True, eq=False)
class SpreadingProfile:
    """``y[i]`` = agent i rewards; ``g[e, s]`` = endpoint s of edge e passes information on."""

    name: str
    y: np.ndarray
    g: np.ndarray


def profile_a(costs, R_tilde):
    return SpreadingProfile("a", costs.reward <= R_tilde, costs.gossip <= R_tilde)


def profile_b(costs):
    return SpreadingProfile("b", costs.reward == 0, costs.gossip == 0)


def active_network(g, link_choices):
    """Links on which both endpoints pass information on."""
    return Graph(g.n, g.edges[link_choices.all(axis=1)])


@dataclass(frozen=True, eq=False)
class SpreadingClassification:
    equilibria: frozenset
    gc_cheap: float
    gc_free: float

    def profiles(self, costs, R_tilde):
        out = []
        if "a" in self.equilibria:
            out.append(profile_a(costs, R_tilde))
        if "b" in self.equilibria:
            out.append(profile_b(costs))
        return out


def classify_spreading_equilibria(g, costs, R_tilde, gamma=GAMMA):
    """Equilibrium profiles of the strategic spreading game on a realised network.

    ``G[<=R]`` keeps links whose two directed gossip costs are both at most
    ``R_tilde``; ``G[0]`` keeps links where both are zero.
    """
    cheap = components(active_network(g, costs.gossip <= R_tilde))
    free = components(active_network(g, costs.gossip == 0))
    if free.has_giant(gamma):
        eqs = {"a"}
    elif not cheap.has_giant(gamma):
        eqs = {"b"}
    else:
        eqs = {"a", "b"}
    return SpreadingClassification(frozenset(eqs), cheap.gc_fraction, free.gc_fraction)


def _reward_probability(g, link_choices, gamma):
    return 1.0 if components(active_network(g, link_choices)).has_giant(gamma) else 0.0


def agent_payoff(g, costs, R_tilde, profile, agent, p_reward):
    """Strategic-spreading payoff of one agent given her reward probability."""
    total = (p_reward * R_tilde - costs.reward[agent]) * profile.y[agent]
    for side in (0, 1):
        mine = np.flatnonzero(g.edges[:, side] == agent)
        total += np.sum((p_reward * R_tilde - costs.gossip[mine, side]) * profile.g[mine, side])
    return float(total)


def max_deviation_gain(g, costs, R_tilde, profile, gamma=GAMMA):
    """Largest payoff gain any single agent gets from flipping one of her choices.

    The reward probability is 1 when the active network (after the deviation)
    has a giant component and 0 otherwise.
    """
    base_p = _reward_probability(g, profile.g, gamma)
    active = profile.g.all(axis=1)
    best = -np.inf
    # flipping y leaves the network, and so the reward probability, unchanged
    for i in range(g.n):
        y = profile.y.copy()
        y[i] = ~y[i]
        dev = SpreadingProfile(profile.name, y, profile.g)
        gain = agent_payoff(g, costs, R_tilde, dev, i, base_p) - agent_payoff(
            g, costs, R_tilde, profile, i, base_p
        )
        best = max(best, gain)
    for e in range(g.m):
        for side in (0, 1):
            agent = g.edges[e, side]
            choices = profile.g.copy()
            choices[e, side] = ~choices[e, side]
            if choices[e].all() == active[e]:
                p_dev = base_p
            else:
                p_dev = _reward_probability(g, choices, gamma)
            dev = SpreadingProfile(profile.name, profile.y, choices)
            gain = agent_payoff(g, costs, R_tilde, dev, agent, p_dev) - agent_payoff(
                g, costs, R_tilde, profile, agent, base_p
            )
            best = max(best, gain)
    return best
