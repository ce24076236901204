"""Degree distributions p(d | t) and the connectivity function Z(t).

The default family draws degrees from Binomial(D, theta(t)) with a linear link
``theta(t) = theta_min + (theta_max - theta_min) * t``. For that family
``Z(t) = E[d^2] - 2 E[d] = D((D - 1) theta^2 - theta)``, which is strictly
increasing in t whenever ``theta_min >= 1 / (2 (D - 1))`` and crosses zero at
``theta = 1 / (D - 1)``.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import binom

from ._validation import (
    InfeasibleError,
    ValidationError,
    check_probability_vector,
    check_unit_interval,
    check_weights,
)

BINOMIAL = "binomial-link"
TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class DegreePmf:
    """Probability mass function over degrees ``0..max_degree``."""

    probs: np.ndarray

    def __post_init__(self):
        arr = check_probability_vector(self.probs)
        if arr.size - 1 <= 3:
            raise ValidationError(f"max degree must exceed 3, got {arr.size - 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def max_degree(self):
        return self.probs.size - 1

    @property
    def support(self):
        return np.arange(self.probs.size)

    @classmethod
    def point_mass(cls, d, max_degree=6):
        probs = np.zeros(max_degree + 1)
        probs[d] = 1.0
        return cls(probs)

    @classmethod
    def from_dict(cls, mass, max_degree=6):
        probs = np.zeros(max_degree + 1)
        for d, p in mass.items():
            probs[int(d)] = p
        return cls(probs)

    def __eq__(self, other):
        return isinstance(other, DegreePmf) and np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"DegreePmf({np.array2string(self.probs, precision=6)})"


@dataclass(frozen=True)
class DegreeModelSpec:
    """Parametric family t -> p(d | t).

    For ``family="tabulated"`` the PMF at t is the linear interpolation between
    the two neighbouring grid rows, which keeps every interpolated row a valid
    PMF and keeps Z piecewise linear in t.
    """

    max_degree: int = 6
    theta_min: float = 0.13
    theta_max: float = 0.35
    family: str = BINOMIAL
    grid_t: tuple = field(default=(), repr=False)
    grid_pmfs: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.family == BINOMIAL:
            self._validate_binomial()
        elif self.family == TABULATED:
            self._validate_tabulated()
        else:
            raise ValidationError(f"unknown degree family {self.family!r}")

    def _validate_binomial(self):
        D, lo, hi = int(self.max_degree), float(self.theta_min), float(self.theta_max)
        if D <= 3:
            raise ValidationError(f"max_degree must exceed 3, got {D}")
        if not 0.0 < lo < hi < 1.0:
            raise ValidationError("need 0 < theta_min < theta_max < 1")
        if lo < 1.0 / (2 * (D - 1)):
            raise ValidationError(
                f"theta_min={lo} < 1/(2(D-1))={1 / (2 * (D - 1)):.6g}; Z would not be increasing"
            )
        crit = 1.0 / (D - 1)
        if not lo < crit < hi:
            raise InfeasibleError(
                f"theta*=1/(D-1)={crit:.6g} is not strictly inside ({lo}, {hi}); Z has no interior zero"
            )

    def _validate_tabulated(self):
        if len(self.grid_t) < 2 or len(self.grid_t) != len(self.grid_pmfs):
            raise ValidationError("tabulated family needs at least two (t, pmf) rows")
        ts = np.asarray(self.grid_t, dtype=float)
        if ts[0] != 0.0 or ts[-1] != 1.0 or np.any(np.diff(ts) <= 0):
            raise ValidationError("tabulated t grid must increase strictly from 0 to 1")
        sizes = {p.max_degree for p in self.grid_pmfs}
        if len(sizes) != 1:
            raise ValidationError("tabulated PMFs must share one max degree")
        object.__setattr__(self, "max_degree", sizes.pop())
        z = np.array([connectivity_z(p) for p in self.grid_pmfs])
        if np.any(np.diff(z) <= 0):
            raise ValidationError("tabulated Z(t) must be strictly increasing")
        if not z[0] < 0 < z[-1]:
            raise InfeasibleError("tabulated Z(t) does not cross zero inside (0, 1)")
        if any(p.probs[1] <= 0 for p in self.grid_pmfs):
            raise ValidationError("every tabulated PMF needs positive mass at degree one")

    def theta(self, t):
        return self.theta_min + (self.theta_max - self.theta_min) * t

    def pmf_at(self, t):
        return pmf_at(self, t)

    def z(self, t):
        return connectivity_z(pmf_at(self, t))

    @classmethod
    def from_table(cls, rows):
        """Build a tabulated spec from ``(t, probs)`` pairs."""
        rows = sorted(rows, key=lambda r: r[0])
        return cls(
            family=TABULATED,
            grid_t=tuple(float(t) for t, _ in rows),
            grid_pmfs=tuple(DegreePmf(np.asarray(p, dtype=float)) for _, p in rows),
        )


def load_table(path):
    """Read a tabulated spec from lines ``t d0 d1 ... dD`` (``#`` starts a comment)."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [float(x) for x in line.split()]
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from None
        rows.append((vals[0], vals[1:]))
    return DegreeModelSpec.from_table(rows)


def pmf_at(spec, t):
    """Degree PMF for an agent spending time share ``t`` inside the community."""
    t = check_unit_interval(t, "t")
    if spec.family == BINOMIAL:
        D = spec.max_degree
        probs = binom.pmf(np.arange(D + 1), D, spec.theta(t))
        return DegreePmf(probs / probs.sum())
    ts = np.asarray(spec.grid_t)
    j = min(int(np.searchsorted(ts, t, side="right")) - 1, ts.size - 2)
    w = (t - ts[j]) / (ts[j + 1] - ts[j])
    probs = (1 - w) * spec.grid_pmfs[j].probs + w * spec.grid_pmfs[j + 1].probs
    return DegreePmf(probs)


def moments(pmf):
    d = pmf.support
    return float(np.dot(d, pmf.probs)), float(np.dot(d * d, pmf.probs))


def connectivity_z(pmf):
    """E[d^2] - 2 E[d], i.e. sum_d d (d - 2) p_d."""
    d = pmf.support
    return float(np.dot(d * (d - 2), pmf.probs))


def mix_population(entries):
    """Population degree mixture lambda_d = sum_h w_h p_h(d)."""
    entries = list(entries)
    if not entries:
        raise ValidationError("mix_population needs at least one entry")
    weights = check_weights([w for w, _ in entries])
    sizes = {p.max_degree for _, p in entries}
    if len(sizes) != 1:
        raise ValidationError("all PMFs in a mixture must share one max degree")
    probs = sum(w * p.probs for w, (_, p) in zip(weights, entries))
    return DegreePmf(probs / probs.sum())


def critical_t(spec, tol=1e-10):
    """Time share t* in (0, 1) at which Z(t*) = 0, found by bisection."""
    lo, hi = 0.0, 1.0
    z_lo, z_hi = spec.z(lo), spec.z(hi)
    if not z_lo < 0 < z_hi:
        raise InfeasibleError("Z(t) does not bracket zero strictly inside [0, 1]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        z_mid = spec.z(mid)
        if abs(z_mid) <= tol:
            return mid
        if z_mid < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

