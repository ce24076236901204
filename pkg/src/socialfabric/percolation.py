"""Lossy information spreading: binomial thinning, the chi criterion, active subgraphs.

``q`` is the probability that one endpoint withholds information on a link, so
a link survives when both endpoints pass it on, with probability
``psi = (1 - q)**2``. ``Q`` is the probability that an agent is silent, in
which case none of her links carry information.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import binom

from ._validation import ValidationError, check_unit_interval
from .degree_model import DegreePmf
from .graph import Graph
from .rng import as_generator


class Regime(str, Enum):
    SUPERCRITICAL = "Supercritical"
    SUBCRITICAL = "Subcritical"

    @classmethod
    def from_sign(cls, value):
        # zero is subcritical: the giant component needs a strictly positive statistic
        return cls.SUPERCRITICAL if value > 0 else cls.SUBCRITICAL

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PercolationParams:
    q: float = 0.0
    Q: float = 0.0

    def __post_init__(self):
        for name in ("q", "Q"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValidationError(f"{name}={v!r} must lie in [0, 1)")

    @property
    def psi(self):
        return (1.0 - self.q) ** 2


def thin_pmf(pmf, psi):
    """Degree distribution after keeping each link independently with probability ``psi``."""
    psi = check_unit_interval(psi, "psi")
    D = pmf.max_degree
    d = np.arange(D + 1)
    # transition[d, d'] = P(Bi(d, psi) = d')
    transition = binom.pmf(d[None, :], d[:, None], psi)
    out = pmf.probs @ transition
    return DegreePmf(out / out.sum())


def chi(pmf, params):
    """(1 - Q) sum d(d-1) lt_d - sum d lt_d on the thinned distribution lt."""
    lt = thin_pmf(pmf, params.psi)
    d = lt.support
    return float((1.0 - params.Q) * np.dot(d * (d - 1), lt.probs) - np.dot(d, lt.probs))


def predicted_regime(pmf, params):
    return Regime.from_sign(chi(pmf, params))


def active_subgraph(g, params, rng=None):
    """Edges that carry information: both endpoints non-silent and the link survives."""
    rng = as_generator(rng)
    silent = rng.random(g.n) < params.Q
    survive = rng.random(g.m) < params.psi
    e = g.edges
    keep = survive & ~silent[e[:, 0]] & ~silent[e[:, 1]]
    return Graph(g.n, e[keep])
