"""Exception types and small input-validation helpers shared by every module."""

import numpy as np


class ValidationError(ValueError):
    """Malformed or inconsistent input specification."""


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


class InfeasibleError(ValidationError):
    """A requested root or threshold does not exist inside the admissible range."""


def check_unit_interval(value, name, *, closed_right=True):
    value = float(value)
    upper_ok = value <= 1.0 if closed_right else value < 1.0
    if not (value >= 0.0 and upper_ok):
        bracket = "]" if closed_right else ")"
        raise DomainError(f"{name}={value!r} must lie in [0, 1{bracket}")
    return value


def check_positive(value, name):
    value = float(value)
    if not value > 0.0:
        raise ValidationError(f"{name}={value!r} must be positive")
    return value


def check_probability_vector(probs, name="probs", atol=1e-12):
    """Return ``probs`` as a float array after checking it is a probability vector."""
    arr = np.asarray(probs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a non-empty 1-d array")
    if np.any(~np.isfinite(arr)) or np.any(arr < -atol) or np.any(arr > 1 + atol):
        raise ValidationError(f"{name} entries must lie in [0, 1]")
    total = arr.sum()
    if abs(total - 1.0) > atol:
        raise ValidationError(f"{name} sums to {total!r}, expected 1")
    return np.clip(arr, 0.0, 1.0)


def check_weights(weights, name="weights", atol=1e-12):
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise ValidationError(f"{name} must be non-negative")
    if abs(w.sum() - 1.0) > atol:
        raise ValidationError(f"{name} sum to {w.sum()!r}, expected 1")
    return w
