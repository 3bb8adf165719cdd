"""scikit-learn compatible wrappers.

Rows of ``X`` are probability points ``(p2, p3)`` of capital-dependent
games, so the analysis and the simulator drop into pipelines, grid
searches and ``cross_val_score`` like any other estimator.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import DEFAULT_TOL, ProbabilityPoint, classify_point, exact_drift, fairness_ratio
from .engine import run_ensemble
from .model import CapitalGameB


def check_points(X) -> np.ndarray:
    """Validate an (n, 2) array of probabilities in [0, 1]."""
    X = check_array(X, dtype=np.float64)
    if X.shape[1] != 2:
        raise ValueError(f"expected 2 columns (p2, p3), got {X.shape[1]}")
    if np.any(X < 0.0) or np.any(X > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    return X


def _check_m(m) -> int:
    if int(m) != m or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m!r}")
    return int(m)


class ProbabilitySpaceClassifier(ClassifierMixin, BaseEstimator):
    """Label points Winning / Losing / Boundary against the fair curve.

    Nothing is learned: ``fit`` only validates parameters and records
    ``classes_`` and ``n_features_in_``.  ``y`` is accepted and ignored.
    """

    def __init__(self, m=3, tol=DEFAULT_TOL):
        self.m = m
        self.tol = tol

    def fit(self, X, y=None):
        X = check_points(X)
        self.m_ = _check_m(self.m)
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        self.classes_ = np.array(["Boundary", "Losing", "Winning"])
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        """log of the product criterion; positive means winning."""
        check_is_fitted(self)
        X = check_points(X)
        with np.errstate(divide="ignore"):
            return np.log([fairness_ratio(ProbabilityPoint(*row), self.m_) for row in X])

    def predict(self, X):
        check_is_fitted(self)
        X = check_points(X)
        return np.array([classify_point(ProbabilityPoint(*row), self.m_, self.tol).value
                         for row in X])

    def predict_drift(self, X):
        check_is_fitted(self)
        X = check_points(X)
        return np.array([exact_drift(CapitalGameB(row[0], row[1], self.m_)) for row in X])


class CapitalGameSimulator(TransformerMixin, BaseEstimator):
    """Monte Carlo mean capital of the capital game at each row of ``X``.

    ``transform`` returns the mean trajectory, shape (n, games + 1);
    ``predict`` returns the mean final capital.
    """

    def __init__(self, m=3, games=200, trials=10000, seed=0, n_jobs=1):
        self.m = m
        self.games = games
        self.trials = trials
        self.seed = seed
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_points(X)
        self.m_ = _check_m(self.m)
        if self.trials < 1 or self.games < 0:
            raise ValueError("trials must be >= 1 and games >= 0")
        self.n_features_in_ = X.shape[1]
        return self

    def _stats(self, X):
        check_is_fitted(self)
        X = check_points(X)
        return [run_ensemble(CapitalGameB(row[0], row[1], self.m_), self.games, self.trials,
                             self.seed, n_jobs=self.n_jobs) for row in X]

    def transform(self, X):
        return np.vstack([s.mean for s in self._stats(X)])

    def predict(self, X):
        return np.array([s.final_mean for s in self._stats(X)])
