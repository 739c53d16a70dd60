"""scikit-learn style front end for the Augustin mean solver."""
import warnings

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils.validation import check_is_fitted

from .augustin import solve_augustin_mean
from .divergence import conditional_from_rows, row_divergences
from .validation import check_measure, check_pair, check_same_length


class AugustinMean(BaseEstimator):
    """Order ``alpha`` Augustin mean of a channel for a fixed input distribution.

    Parameters
    ----------
    alpha : float, default=1.0
        Finite positive Renyi order.
    beta : float or None, default=None
        Tilting order of the fixed-point iteration; ``None`` means
        ``min(1, 1/alpha)``.
    tol : float, default=1e-10
        Total-variation residual at which the iteration stops.
    max_iter : int, default=100000
        Iteration budget.
    init : array-like or None, default=None
        Starting output distribution; ``None`` starts from ``P @ W``.

    Attributes
    ----------
    mean_ : ndarray of shape (n_outputs,)
        The Augustin mean.
    information_ : float
        Augustin information in nats.
    output_distribution_ : ndarray of shape (n_outputs,)
    n_iter_ : int
    residual_tv_ : float
    converged_ : bool
    objective_trace_ : ndarray
    report_ : SolveReport

    Examples
    --------
    >>> from renyi_augustin import AugustinMean, bsc
    >>> est = AugustinMean(alpha=0.5).fit(bsc(0.1), [0.5, 0.5])
    >>> round(est.information_, 6)
    0.223144
    """

    def __init__(self, alpha=1.0, beta=None, tol=1e-10, max_iter=100_000, init=None):
        self.alpha = alpha
        self.beta = beta
        self.tol = tol
        self.max_iter = max_iter
        self.init = init

    def fit(self, W, P=None):
        """Solve for the Augustin mean of channel ``W`` under input ``P``
        (uniform when omitted)."""
        W = np.asarray(W, dtype=float)
        if P is None and W.ndim == 2:
            P = np.full(W.shape[0], 1.0 / W.shape[0])
        P, W = check_pair(P, W)
        report = solve_augustin_mean(self.alpha, P, W, tol=self.tol, max_iter=self.max_iter,
                                     beta=self.beta, init=self.init)
        if not report.converged:
            warnings.warn("Augustin iteration did not converge in %d iterations "
                          "(residual %.3g)" % (report.iterations, report.residual_tv),
                          ConvergenceWarning)
        self.W_, self.P_ = W, P
        self.report_ = report
        self.mean_ = report.mean
        self.information_ = report.information
        self.output_distribution_ = P @ W
        self.n_iter_ = report.iterations
        self.residual_tv_ = report.residual_tv
        self.converged_ = report.converged
        self.objective_trace_ = np.asarray(report.objective_trace)
        return self

    def _objective(self, Q):
        Q = np.atleast_2d(np.asarray(Q, dtype=float))
        on = self.P_ > 0
        out = np.empty(Q.shape[0])
        for i, q in enumerate(Q):
            q = check_measure(q, "Q")
            check_same_length(self.W_, q, ("W", "Q"))
            out[i] = conditional_from_rows(self.P_[on], row_divergences(self.alpha, self.W_[on], q))
        return out

    def transform(self, Q):
        """Excess objective ``D_alpha(W || Q | P) - I_alpha`` of each row of ``Q``."""
        check_is_fitted(self, "mean_")
        return self._objective(Q) - self.information_

    def score(self, Q):
        """Negative mean excess objective of the probe distributions ``Q``."""
        return -float(np.mean(self.transform(Q)))
