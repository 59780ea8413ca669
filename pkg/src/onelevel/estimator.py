"""scikit-learn style wrapper around the solvers.

The problem has no training data: ``fit`` only validates the hyperparameters
and solves for ``g``.  ``predict`` evaluates ``g`` and ``transform`` evaluates
the optimal test function ``phi`` at the sample positions in ``X``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from . import analysis as an
from .symmetry import SymmetryGroup


class OptimalTestFunction(BaseEstimator):
    """Minimizer of the one-level density functional for a symmetry group.

    Parameters
    ----------
    group : str
        "O", "SO(even)", "SO(odd)" or "Sp" (aliases accepted).
    sigma : float
        Half-width of the support of ``g``; ``phi^`` lives on ``[-2 sigma, 2 sigma]``.
    method : {"closed", "nystrom"}
    n : int
        Nystrom subintervals; ignored by the closed form.
    """

    def __init__(self, group="SO(even)", sigma=1.0, method="closed", n=400):
        self.group = group
        self.sigma = sigma
        self.method = method
        self.n = n

    def _validate_params(self):
        group = SymmetryGroup.parse(self.group)
        method = an.Method.parse(self.method)
        if not (np.isscalar(self.sigma) and np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive finite number, got {self.sigma!r}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        return group, method

    def fit(self, X=None, y=None):
        group, method = self._validate_params()
        result = an.infimum(group, float(self.sigma), method, int(self.n))
        self.g_ = an.solve_g(group, float(self.sigma), method, int(self.n))
        self.infimum_ = result.value
        self.inner_product_ = result.inner_product
        self.residual_ = result.residual
        return self

    @staticmethod
    def _positions(X) -> np.ndarray:
        X = check_array(X, ensure_2d=False, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single feature column, got {X.shape[1]}")
            X = X[:, 0]
        return X

    def predict(self, X) -> np.ndarray:
        """``g`` at the positions in ``X``."""
        check_is_fitted(self, "g_")
        return np.asarray(self.g_(self._positions(X)), dtype=float)

    def transform(self, X) -> np.ndarray:
        """``phi`` at the positions in ``X``, as a column."""
        check_is_fitted(self, "g_")
        xs = self._positions(X)
        return np.array([v for _, v in an.phi_from_g(self.g_, xs)])[:, None]

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)
