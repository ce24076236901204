"""Household coordination: pivotal contributions to connectivity under an anticipated shock.

``H`` equal-sized households each choose a common inside time ``t_h``.
Post-shock connectivity is ``mean_h Z(t_h) + k * xi`` with the slope ``k``
depending on the sign of the shock ``xi``, drawn from ``xi_bar * F`` where
``F`` is a symmetric CDF on [-1, 1] (uniform by default).
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._validation import DomainError, ValidationError
from .agents import inside_value, optimize_time, second_stage_values
from .degree_model import DegreeModelSpec, mix_population, pmf_at
from .rng import as_generator


def uniform_shock_cdf(z):
    return min(max(0.5 * (z + 1.0), 0.0), 1.0)


class CaseTag(str, Enum):
    ALWAYS_HIGH = "AlwaysHigh"
    THRESHOLD_UNIQUE = "ThresholdUnique"
    BISTABLE = "Bistable"
    ALWAYS_LOW = "AlwaysLow"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Infeasible:
    """No admissible root; ``side`` says whether it would lie below 0 or above 1."""

    side: str

    def __post_init__(self):
        if self.side not in ("below", "above"):
            raise ValueError(self.side)


BELOW = Infeasible("below")
ABOVE = Infeasible("above")


@dataclass(frozen=True, eq=False)
class HouseholdGameSpec:
    """Coordination-game primitives.

    ``z`` maps a time share to a household's contribution to connectivity and
    must be strictly increasing; ``w`` holds one first-stage value function per
    household (only needed for payoffs). ``t_hat`` and ``t_max`` are stored
    per household; :meth:`from_model` derives them from preferences.
    """

    z: object
    t_hat: np.ndarray
    t_max: np.ndarray
    xi_bar: float
    k_plus: float
    k_minus: float
    delta_v: float
    w: tuple = field(default=(), repr=False)
    shock_cdf: object = field(default=uniform_shock_cdf, repr=False)
    pi: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        t_hat = np.asarray(self.t_hat, dtype=float)
        t_max = np.asarray(self.t_max, dtype=float)
        if t_hat.shape != t_max.shape or t_hat.ndim != 1 or t_hat.size == 0:
            raise ValidationError("t_hat and t_max must be equal-length vectors")
        if np.any(t_max < t_hat):
            raise ValidationError("t_max must be at least t_hat for every household")
        if not self.xi_bar > 0:
            raise ValidationError("xi_bar must be positive")
        if not self.delta_v > 0:
            raise ValidationError("delta_v must be positive")
        if not self.k_plus >= self.k_minus > 0:
            raise ValidationError("need k_plus >= k_minus > 0")
        if self.w and len(self.w) != t_hat.size:
            raise ValidationError("need one value function per household")
        object.__setattr__(self, "t_hat", t_hat)
        object.__setattr__(self, "t_max", t_max)

    @property
    def H(self):
        return self.t_hat.size

    def zs(self, t_vec):
        return np.array([self.z(float(t)) for t in t_vec])

    @classmethod
    def from_model(cls, preferences, pis, xi_bar, degree_spec=None, delta_v=None):
        """Build the game from agent preferences and one productivity per household."""
        degree_spec = degree_spec or DegreeModelSpec()
        pis = np.asarray(pis, dtype=float)
        if delta_v is None:
            v1, v2 = second_stage_values(preferences)
            delta_v = v1 - v2
        t_hat = np.array([optimize_time(preferences, p)[0] for p in pis])
        w = tuple(_value_function(preferences, p) for p in pis)
        t_max = np.array([solve_t_max(wh, th, delta_v) for wh, th in zip(w, t_hat)])
        mixture = mix_population([(1.0 / pis.size, pmf_at(degree_spec, t)) for t in t_hat])
        d_bar = shocked_mean_degree(mixture)
        return cls(
            z=degree_spec.z,
            t_hat=t_hat,
            t_max=t_max,
            xi_bar=xi_bar,
            k_plus=2 * d_bar - 1,
            k_minus=2 * d_bar - 3,
            delta_v=delta_v,
            w=w,
            pi=pis,
        )


def _value_function(preferences, pi):
    def w(t):
        return inside_value(preferences, pi, t)

    return w


def shocked_mean_degree(pmf):
    """E[d | d >= 2], the mean degree among agents a shock can touch."""
    d = pmf.support
    mass = pmf.probs[d >= 2]
    if mass.sum() <= 0:
        raise DomainError("no mass at degree >= 2")
    return float(np.dot(d[d >= 2], mass) / mass.sum())


def _others(spec, h, t_others):
    t_others = np.asarray(t_others, dtype=float)
    if t_others.size == spec.H:
        t_others = np.delete(t_others, h)
    if t_others.size != spec.H - 1:
        raise ValidationError(f"expected {spec.H - 1} other households, got {t_others.size}")
    return t_others


def z_of(spec, h, t):
    if not 0 <= h < spec.H:
        raise DomainError(f"household {h} out of range")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t={t!r} must lie in [0, 1]")
    return spec.z(t)


def connectivity_post_shock(spec, t_vec, xi):
    if abs(xi) > spec.xi_bar:
        raise DomainError(f"|xi|={abs(xi)!r} exceeds xi_bar={spec.xi_bar!r}")
    k = spec.k_plus if xi > 0 else spec.k_minus
    return float(np.mean(spec.zs(t_vec))) + k * xi


def p_sc(spec, t_vec):
    """Probability over the shock that post-shock connectivity is strictly positive."""
    s = float(np.mean(spec.zs(t_vec)))
    # only the branch whose sign opposes s can push connectivity across zero
    k = spec.k_minus if s >= 0 else spec.k_plus
    return 1.0 - spec.shock_cdf(-s / (k * spec.xi_bar))


def _solve_z(spec, target, tol=1e-10):
    """Smallest t with Z(t) >= target, accurate to ``tol`` in Z."""
    z0, z1 = spec.z(0.0), spec.z(1.0)
    if z0 > target:
        return BELOW
    if z0 == target:
        return 0.0
    if z1 < target:
        return ABOVE
    lo, hi = 0.0, 1.0
    # keep Z(hi) >= target so the returned point attains the threshold
    while True:
        mid = 0.5 * (lo + hi)
        if spec.z(mid) >= target:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-15 or spec.z(hi) - target <= tol:
            return hi


def t_crit(spec, h, t_others):
    """Smallest t_h that keeps connectivity above zero for every shock realisation."""
    rest = spec.zs(_others(spec, h, t_others)).sum()
    return _solve_z(spec, spec.xi_bar * spec.H * spec.k_minus - rest)


def t_uncrit(spec, h, t_others):
    """Largest t_h at which connectivity stays at or below zero for every shock."""
    rest = spec.zs(_others(spec, h, t_others)).sum()
    return _solve_z(spec, -spec.xi_bar * spec.H * spec.k_plus - rest)


def solve_t_max(w, t_hat, delta_v, tol=1e-13):
    """t >= t_hat with w(t_hat) - w(t) = delta_v (w concave, w -> -inf at 1)."""
    top = w(t_hat)
    lo, hi = t_hat, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if top - w(mid) < delta_v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def t_max(spec, h):
    return float(spec.t_max[h])


def best_response(spec, h, t_others):
    """Either stay at t_hat or move exactly to the threshold if the sacrifice is worth it."""
    tc = t_crit(spec, h, t_others)
    t_hat, top = spec.t_hat[h], spec.t_max[h]
    if isinstance(tc, Infeasible):
        return float(t_hat)
    if t_hat < tc <= top:
        return float(tc)
    return float(t_hat)


def best_response_iteration(spec, start=None, max_rounds=100):
    """Sequential best responses in household order until nothing moves."""
    t = np.array(spec.t_hat if start is None else start, dtype=float)
    for _ in range(max_rounds):
        moved = False
        for h in range(spec.H):
            new = best_response(spec, h, t)
            if new != t[h]:
                t[h] = new
                moved = True
        if not moved:
            return t
    raise RuntimeError("best-response iteration did not settle")


@dataclass(frozen=True, eq=False)
class EquilibriumCase:
    tag: CaseTag
    witness: np.ndarray
    miscoordination: np.ndarray = None

    @property
    def multiple(self):
        # threshold profiles can split the extra effort in many ways
        return self.tag in (CaseTag.THRESHOLD_UNIQUE, CaseTag.BISTABLE)


def _lexicographic_fill(spec):
    t = spec.t_hat.copy()
    for h in range(spec.H):
        tc = t_crit(spec, h, t)
        if isinstance(tc, Infeasible):
            if tc.side == "below":
                return t
            t[h] = spec.t_max[h]
            continue
        if tc <= t[h]:
            return t
        if tc <= spec.t_max[h]:
            t[h] = tc
            return t
        t[h] = spec.t_max[h]
    return t


def _reaches(tc, bound):
    if isinstance(tc, Infeasible):
        return tc.side == "below"
    return tc <= bound


def classify_equilibrium(spec):
    """Which of the four equilibrium configurations the game is in."""
    H = spec.H
    crit_at_hat = [t_crit(spec, h, spec.t_hat) for h in range(H)]
    if all(_reaches(tc, spec.t_hat[h]) for h, tc in enumerate(crit_at_hat)):
        return EquilibriumCase(CaseTag.ALWAYS_HIGH, spec.t_hat.copy())
    for h, tc in enumerate(crit_at_hat):
        if _reaches(tc, spec.t_max[h]):
            witness = spec.t_hat.copy()
            witness[h] = tc
            return EquilibriumCase(CaseTag.THRESHOLD_UNIQUE, witness)
    if all(not _reaches(t_crit(spec, h, spec.t_max), spec.t_max[h]) for h in range(H)):
        return EquilibriumCase(CaseTag.ALWAYS_LOW, spec.t_hat.copy())
    return EquilibriumCase(CaseTag.BISTABLE, _lexicographic_fill(spec), spec.t_hat.copy())


def household_payoff(spec, h, t_vec):
    """w_h(t_h) + P_SC * delta_v (constants dropped)."""
    return spec.w[h](float(t_vec[h])) + p_sc(spec, t_vec) * spec.delta_v


def shock_degrees(degrees, xi, rng=None):
    """Apply a realised shock to a degree sequence.

    A fraction ``|xi|`` of all agents, drawn from those with degree at least
    two, gains one friend (``xi > 0``) or loses one (``xi < 0``). Returns the
    shocked degrees and the mean pre-shock degree of the agents hit.
    """
    rng = as_generator(rng)
    d = np.array(degrees, dtype=np.int64)
    count = int(round(abs(xi) * d.size))
    eligible = np.flatnonzero(d >= 2)
    if count > eligible.size:
        raise DomainError("shock hits more agents than have degree >= 2")
    if count == 0:
        return d, float("nan")
    hit = rng.choice(eligible, size=count, replace=False)
    d_bar = float(d[hit].mean())
    d[hit] += 1 if xi > 0 else -1
    return d, d_bar
