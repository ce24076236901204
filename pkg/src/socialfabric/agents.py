"""Preferences, first-stage time allocation, second-stage contributions and welfare.

Functional forms::

    I(a, b) = A_in * log(1 + a) + A_out * log(1 + b)
    c(x)    = -kappa * log(1 - x)
    B(s)    = beta * s

so the first-stage payoff of an agent with outside productivity ``pi`` is
``I(t, pi * t_out) - c(t + t_out)``, strictly concave on the triangle
``t, t_out >= 0, t + t_out < 1``.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._validation import DomainError, ValidationError, check_unit_interval
from .degree_model import DegreeModelSpec, mix_population, pmf_at, connectivity_z
from .graph import components, connectivity_statistic, sample_configuration, sample_degrees
from .percolation import Regime
from .rng import as_generator
from .spread import predicted_reward

DEFAULT_COSTS = ((-0.5, 0.10), (0.4, 0.60), (0.8, 0.25), (1.5, 0.05))


@dataclass(frozen=True)
class PreferenceSpec:
    A_in: float = 1.0
    A_out: float = 1.0
    kappa: float = 0.3
    pi_L: float = 0.8
    pi_H: float = 1.5
    R: float = 1.0
    beta: float = 2.0
    cost_pmf: tuple = field(default=DEFAULT_COSTS)

    def __post_init__(self):
        for name in ("A_in", "A_out", "kappa", "R", "beta", "pi_L"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        # pi_H == pi_L is allowed as the degenerate no-skill-gap case
        if self.pi_H < self.pi_L:
            raise ValidationError(f"pi_H={self.pi_H} must be at least pi_L={self.pi_L}")
        costs = tuple(sorted((float(c), float(p)) for c, p in dict(self.cost_pmf).items()))
        probs = np.array([p for _, p in costs])
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise ValidationError("cost_pmf probabilities must be non-negative and sum to 1")
        object.__setattr__(self, "cost_pmf", costs)

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def cost_values(self):
        return np.array([c for c, _ in self.cost_pmf])

    @property
    def cost_probs(self):
        return np.array([p for _, p in self.cost_pmf])


def first_stage_payoff(spec, pi, t, t_out):
    """I(t, pi t_out) - c(t + t_out)."""
    if t < 0 or t_out < 0:
        raise DomainError("time shares must be non-negative")
    total = t + t_out
    if total >= 1.0:
        raise DomainError(f"t + t_out = {total!r} must be below 1")
    return (
        spec.A_in * math.log1p(t)
        + spec.A_out * math.log1p(pi * t_out)
        + spec.kappa * math.log1p(-total)
    )


def _payoff(spec, pi, t, t_out):
    total = t + t_out
    if total >= 1.0:
        return -math.inf
    return (
        spec.A_in * math.log1p(t)
        + spec.A_out * math.log1p(pi * t_out)
        + spec.kappa * math.log1p(-total)
    )


def best_outside_time(spec, pi, t):
    """argmax over t_out of the payoff with inside time fixed at ``t``.

    The first-order condition ``pi A_out / (1 + pi s) = kappa / (1 - t - s)``
    is linear in ``s``; the root is clipped at zero.
    """
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t={t!r} must lie in [0, 1)")
    s = (pi * spec.A_out * (1.0 - t) - spec.kappa) / (pi * (spec.A_out + spec.kappa))
    return max(s, 0.0)


def inside_value(spec, pi, t):
    """w(t) = max over t_out of the first-stage payoff; -inf at t = 1."""
    if t >= 1.0:
        return -math.inf
    return _payoff(spec, pi, t, best_outside_time(spec, pi, t))


def _inside_slope(spec, pi, t):
    # envelope theorem: dw/dt is the partial derivative in t at the inner optimum
    s = best_outside_time(spec, pi, t)
    return spec.A_in / (1.0 + t) - spec.kappa / (1.0 - t - s)


def optimize_time(spec, pi, tol=1e-14):
    """Myopic first-stage optimum (t_hat, t_out_hat).

    w(t) is strictly concave, so its maximiser is found by bisection on the sign
    of dw/dt, with t_out solved exactly at every inner step.
    """
    if _inside_slope(spec, pi, 0.0) <= 0.0:
        return 0.0, best_outside_time(spec, pi, 0.0)
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _inside_slope(spec, pi, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    t_hat = 0.5 * (lo + hi)
    return t_hat, best_outside_time(spec, pi, t_hat)


def second_stage_rule(C, R, regime):
    """1 if the agent contributes, else 0."""
    if Regime(regime) is Regime.SUPERCRITICAL:
        return int(C < R)
    return int(C <= 0)


def second_stage_values(spec):
    """Average second-stage payoffs (v1 above the threshold, v2 below)."""
    c, p = spec.cost_values, spec.cost_probs
    above = c < spec.R
    below = c <= 0
    v1 = spec.beta * p[above].sum() + np.dot(p[above], spec.R - c[above])
    v2 = spec.beta * p[below].sum() + np.dot(p[below], -c[below])
    return float(v1), float(v2)


def gini_between(f, I_H, I_L, v):
    """Gini coefficient of the two-group payoff distribution {I_H + v: f, I_L + v: 1 - f}."""
    mu = f * (I_H - I_L) + I_L + v
    if mu <= 0:
        raise DomainError(f"mean payoff {mu!r} must be positive")
    if I_H < I_L:
        raise DomainError("expected I_H >= I_L")
    return f * (1.0 - f) * (I_H - I_L) / mu


def gini(values, weights=None):
    """Gini coefficient of a discrete distribution, from the mean absolute difference."""
    x = np.asarray(values, dtype=float)
    w = np.full(x.size, 1.0 / x.size) if weights is None else np.asarray(weights, dtype=float)
    w = w / w.sum()
    mu = np.dot(w, x)
    if mu <= 0:
        raise DomainError("mean must be positive")
    return float(np.sum(np.outer(w, w) * np.abs(x[:, None] - x[None, :])) / (2.0 * mu))


@dataclass(frozen=True)
class EquilibriumReport:
    f: float
    pi_H: float
    pi_L: float
    t_hat_H: float
    t_out_hat_H: float
    t_hat_L: float
    t_out_hat_L: float
    I_H: float
    I_L: float
    mixture: object = field(repr=False)
    connectivity: float = 0.0
    regime: Regime = Regime.SUBCRITICAL
    v1: float = 0.0
    v2: float = 0.0
    v: float = 0.0
    u_H: float = 0.0
    u_L: float = 0.0
    gini: float = 0.0

    def as_row(self):
        return {
            "f": self.f,
            "pi_H": self.pi_H,
            "pi_L": self.pi_L,
            "t_hat_H": self.t_hat_H,
            "t_out_hat_H": self.t_out_hat_H,
            "t_hat_L": self.t_hat_L,
            "t_out_hat_L": self.t_out_hat_L,
            "I_H": self.I_H,
            "I_L": self.I_L,
            "connectivity": self.connectivity,
            "regime": str(self.regime),
            "v": self.v,
            "u_H": self.u_H,
            "u_L": self.u_L,
            "gini": self.gini,
        }


def solve_equilibrium(spec, degree_spec=None, f=0.5):
    """Large-n equilibrium: myopic time choices, then the contribution regime they induce."""
    degree_spec = degree_spec or DegreeModelSpec()
    f = check_unit_interval(f, "f")
    t_H, s_H = optimize_time(spec, spec.pi_H)
    t_L, s_L = optimize_time(spec, spec.pi_L)
    I_H = first_stage_payoff(spec, spec.pi_H, t_H, s_H)
    I_L = first_stage_payoff(spec, spec.pi_L, t_L, s_L)
    mixture = mix_population([(f, pmf_at(degree_spec, t_H)), (1.0 - f, pmf_at(degree_spec, t_L))])
    z = connectivity_z(mixture)
    regime = Regime.from_sign(z)
    v1, v2 = second_stage_values(spec)
    v = v1 if regime is Regime.SUPERCRITICAL else v2
    return EquilibriumReport(
        f=f,
        pi_H=spec.pi_H,
        pi_L=spec.pi_L,
        t_hat_H=t_H,
        t_out_hat_H=s_H,
        t_hat_L=t_L,
        t_out_hat_L=s_L,
        I_H=I_H,
        I_L=I_L,
        mixture=mixture,
        connectivity=z,
        regime=regime,
        v1=v1,
        v2=v2,
        v=v,
        u_H=I_H + v,
        u_L=I_L + v,
        gini=gini_between(f, I_H, I_L, v),
    )


@dataclass(frozen=True, eq=False)
class Population:
    """One finite-n realisation of the equilibrium."""

    n: int
    f: float
    high: np.ndarray
    costs: np.ndarray
    t: np.ndarray
    t_out: np.ndarray
    degrees: np.ndarray
    contributions: np.ndarray
    second_stage: np.ndarray
    connectivity: float
    gc_fraction: float
    second_stage_se: float

    @property
    def mean_second_stage(self):
        return float(self.second_stage.mean())


def simulate_population(spec, degree_spec, f, n, rng=None, report=None):
    """Draw a population playing the large-n equilibrium and realise its payoffs.

    Contributions follow :func:`second_stage_rule` under the analytic regime
    and rewards arrive with :func:`predicted_reward`. The realised network is
    sampled too, so its connectivity statistic and giant-component share can be
    compared with the analytic mixture.
    """
    rng = as_generator(rng)
    report = report or solve_equilibrium(spec, degree_spec, f)
    n_high = int(round(f * n))
    high = np.zeros(n, dtype=bool)
    high[:n_high] = True
    costs = rng.choice(spec.cost_values, size=n, p=spec.cost_probs)
    t = np.where(high, report.t_hat_H, report.t_hat_L)
    t_out = np.where(high, report.t_out_hat_H, report.t_out_hat_L)
    pmfs = [pmf_at(degree_spec, report.t_hat_L), pmf_at(degree_spec, report.t_hat_H)]
    seq = sample_degrees(pmfs, rng, labels=high.astype(np.int64))
    census = components(sample_configuration(seq, rng))
    if report.regime is Regime.SUPERCRITICAL:
        x = (costs < spec.R).astype(np.int64)
    else:
        x = (costs <= 0).astype(np.int64)
    p_reward = predicted_reward(report.regime)
    others_share = (x.sum() - x) / (n - 1)
    payoff = p_reward * spec.R * x - costs * x + spec.beta * others_share
    # the population mean equals the mean of the i.i.d. terms (pR - C + beta) x,
    # so the standard error comes from those, not from the payoffs themselves
    own = (p_reward * spec.R - costs + spec.beta) * x
    return Population(
        n=n,
        f=f,
        high=high,
        costs=costs,
        t=t,
        t_out=t_out,
        degrees=seq.degrees,
        contributions=x,
        second_stage=payoff,
        connectivity=connectivity_statistic(seq),
        gc_fraction=census.gc_fraction,
        second_stage_se=float(own.std(ddof=1) / math.sqrt(n)),
    )
