"""Exhaustive grid-Nash enumeration for small household games.

Instances are built so the discrete game and the continuous classifier must
agree on the case: the grid never lands inside the P_SC ramp, and each t_max
sits a hair above a grid point.
"""

import itertools

import numpy as np

from socialfabric.households import HouseholdGameSpec

H = 3
GRID = np.round(np.arange(21) * 0.05, 10)


def exact_p_sc(mean_z, xi_bar, k_plus, k_minus):
    """P(mean_z + k(xi) xi > 0) for xi uniform on [-xi_bar, xi_bar]."""
    if mean_z >= 0:
        # only negative shocks can hurt: need xi > -mean_z / k_minus
        cut = -mean_z / k_minus
    else:
        # only positive shocks can help: need xi > -mean_z / k_plus
        cut = -mean_z / k_plus
    cut = min(max(cut, -xi_bar), xi_bar)
    return (xi_bar - cut) / (2 * xi_bar)


def random_instance(rng):
    # 3c = 0.025 (mod 0.05) keeps the mean of grid Z values at least 0.025/3 from zero
    c = (0.025 + 0.05 * rng.integers(12, 48)) / 3
    k_minus = rng.uniform(0.5, 2.0)
    k_plus = k_minus + rng.uniform(0.0, 2.0)
    xi_bar = rng.uniform(0.1, 0.9) * (0.025 / 3) / k_plus
    eps = H * xi_bar * k_minus
    t_hat = GRID[rng.integers(2, 15, size=H)]
    steps = rng.integers(0, 7, size=H)
    t_max = np.minimum(t_hat + 0.05 * steps, 0.95) + rng.uniform(0.05, 0.9, size=H) * eps / H
    delta_v = rng.uniform(0.5, 2.0)

    def make_w(th, tm):
        return lambda t: -delta_v * ((t - th) / (tm - th)) ** 2

    return HouseholdGameSpec(
        z=lambda t, c=c: t - c,
        t_hat=t_hat,
        t_max=t_max,
        xi_bar=xi_bar,
        k_plus=k_plus,
        k_minus=k_minus,
        delta_v=delta_v,
        w=tuple(make_w(a, b) for a, b in zip(t_hat, t_max)),
    )


def grid_nash(spec):
    """All pure Nash profiles on GRID^H, plus the p_sc at each."""
    zs = np.array([spec.z(t) for t in GRID])
    idx = list(itertools.product(range(GRID.size), repeat=H))
    mean_z = np.array([zs[list(p)].mean() for p in idx]).reshape((GRID.size,) * H)
    psc = np.vectorize(lambda m: exact_p_sc(m, spec.xi_bar, spec.k_plus, spec.k_minus))(mean_z)
    nash = np.ones_like(psc, dtype=bool)
    for h in range(H):
        w = np.array([spec.w[h](t) for t in GRID])
        shape = [1] * H
        shape[h] = GRID.size
        payoff = w.reshape(shape) + psc * spec.delta_v
        nash &= payoff >= payoff.max(axis=h, keepdims=True) - 1e-9
    profiles = [tuple(GRID[list(p)]) for p in zip(*np.nonzero(nash))]
    return profiles, {p: psc[tuple(np.searchsorted(GRID, p))] for p in profiles}


def grid_case(spec):
    profiles, psc = grid_nash(spec)
    t_hat = tuple(spec.t_hat)
    if t_hat in psc and psc[t_hat] == 1.0:
        return "AlwaysHigh"
    if t_hat not in psc:
        return "ThresholdUnique"
    if any(p == 1.0 for p in psc.values()):
        return "Bistable"
    return "AlwaysLow"
