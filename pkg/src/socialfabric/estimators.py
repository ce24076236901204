"""scikit-learn style wrappers around the analytic core.

These make the closed-form pieces usable in pipelines and parameter searches
(``get_params``/``set_params``, ``clone``). They hold no randomness: ``fit``
validates inputs and stores derived attributes with a trailing underscore.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import ValidationError
from .agents import PreferenceSpec, solve_equilibrium
from .degree_model import DegreeModelSpec, DegreePmf, critical_t
from .percolation import PercolationParams, Regime, chi, thin_pmf


def check_pmf_rows(X):
    """2-D array of PMF rows over degrees 0..D, each summing to one."""
    X = check_array(X, dtype=np.float64)
    if X.shape[1] < 5:
        raise ValidationError("PMF rows need at least five degrees (0..4)")
    if np.any(X < -1e-12) or not np.allclose(X.sum(axis=1), 1.0, atol=1e-9):
        raise ValidationError("every row must be a probability vector")
    return np.clip(X, 0.0, None)


class ThinningTransformer(TransformerMixin, BaseEstimator):
    """Map degree PMFs to their binomially thinned versions (edge survival ``psi``)."""

    def __init__(self, q=0.0):
        self.q = q

    def fit(self, X, y=None):
        X = check_pmf_rows(X)
        self.params_ = PercolationParams(q=self.q)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = check_pmf_rows(X)
        if X.shape[1] != self.n_features_in_:
            raise ValidationError(f"expected {self.n_features_in_} degrees, got {X.shape[1]}")
        return np.vstack([thin_pmf(DegreePmf(row), self.params_.psi).probs for row in X])


class PercolationRegimeClassifier(ClassifierMixin, BaseEstimator):
    """Predict the percolation regime of each PMF row from the sign of chi.

    ``fit`` learns nothing beyond the label set; the rule is analytic.
    """

    def __init__(self, q=0.0, Q=0.0):
        self.q = q
        self.Q = Q

    def fit(self, X, y=None):
        check_pmf_rows(X)
        self.params_ = PercolationParams(q=self.q, Q=self.Q)
        self.classes_ = np.array([Regime.SUBCRITICAL.value, Regime.SUPERCRITICAL.value])
        return self

    def decision_function(self, X):
        check_is_fitted(self, "params_")
        return np.array([chi(DegreePmf(row), self.params_) for row in check_pmf_rows(X)])

    def predict(self, X):
        return np.array([Regime.from_sign(v).value for v in self.decision_function(X)])


class EquilibriumSolver(BaseEstimator):
    """Large-n equilibrium as a function of one swept parameter.

    ``X`` is a single column of ``pi_H`` values (``param="pi_H"``) or high-skill
    shares (``param="f"``). ``transform`` returns the numeric report columns,
    ``predict`` returns the regime labels.
    """

    columns = ("t_hat_H", "t_hat_L", "connectivity", "u_H", "u_L", "v", "gini")

    def __init__(self, param="pi_H", f=0.5, kappa=0.3, pi_L=0.8, pi_H=1.5, max_degree=6,
                 theta_min=0.13, theta_max=0.35):
        self.param = param
        self.f = f
        self.kappa = kappa
        self.pi_L = pi_L
        self.pi_H = pi_H
        self.max_degree = max_degree
        self.theta_min = theta_min
        self.theta_max = theta_max

    def fit(self, X=None, y=None):
        if self.param not in ("pi_H", "f"):
            raise ValidationError("param must be 'pi_H' or 'f'")
        self.preferences_ = PreferenceSpec(kappa=self.kappa, pi_L=self.pi_L, pi_H=self.pi_H)
        self.degree_spec_ = DegreeModelSpec(self.max_degree, self.theta_min, self.theta_max)
        self.critical_t_ = critical_t(self.degree_spec_)
        return self

    def _reports(self, X):
        check_is_fitted(self, "preferences_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 1:
            raise ValidationError("expected a single column")
        out = []
        for x in X[:, 0]:
            if self.param == "pi_H":
                out.append(solve_equilibrium(self.preferences_.replace(pi_H=float(x)), self.degree_spec_, self.f))
            else:
                out.append(solve_equilibrium(self.preferences_, self.degree_spec_, float(x)))
        return out

    def transform(self, X):
        return np.array([[getattr(r, c) for c in self.columns] for r in self._reports(X)])

    def predict(self, X):
        return np.array([r.regime.value for r in self._reports(X)])
