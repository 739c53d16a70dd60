"""Augustin mean and Augustin information of a finite channel.

The Augustin information of order ``alpha`` for an input distribution ``P``
is the minimum over output distributions ``Q`` of the conditional Renyi
divergence ``D_alpha(W || Q | P)``; the minimizer is the Augustin mean.
It is computed here as the fixed point of the Augustin operator, iterating
the tilted operator whose steps never increase the objective.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .divergence import _log, _power_terms, conditional_from_rows, row_divergences
from .measures import ONE_TOL, lebesgue_decompose
from .validation import (
    DomainError, PreconditionError, check_channel, check_distribution, check_order, check_pair,
    check_positive_int, check_same_length,
)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of :func:`solve_augustin_mean`.

    ``objective_trace[k]`` is ``D_alpha(W || Q_k | P)`` for the k-th iterate,
    so the last entry equals ``information``.
    """

    mean: np.ndarray
    information: float
    iterations: int
    residual_tv: float
    objective_trace: tuple = field(repr=False)
    converged: bool
    alpha: float
    beta: float

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "mean": [float(v) for v in self.mean],
            "information": self.information,
            "iterations": self.iterations,
            "residual_tv": self.residual_tv,
            "converged": self.converged,
            "objective_trace": list(self.objective_trace),
        }


def _is_one(alpha):
    return abs(alpha - 1.0) <= ONE_TOL


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


# -- unvalidated kernels ----------------------------------------------------

def _tilt_rows(alpha, W, q):
    """Tilted rows and row divergences; inadmissible rows are NaN."""
    if _is_one(alpha):
        div = row_divergences(alpha, W, q)
        rows = np.array(W, dtype=float)
    else:
        logs, div, lse = _power_terms(alpha, W, q)
        with np.errstate(invalid="ignore"):
            rows = np.exp(logs - lse[:, None])
    rows[~np.isfinite(div)] = np.nan
    return rows, div


def _operator(alpha, P, W, q):
    """Augustin operator restricted to rows with P(x) > 0.

    Returns ``(A(q), row divergences at q)``; raises DomainError when some
    row has infinite divergence.
    """
    rows, div = _tilt_rows(alpha, W, q)
    if not np.all(np.isfinite(div)):
        raise DomainError("q is outside the domain: conditional divergence is infinite")
    return P @ rows, div


def _geometric_mix(beta, a, q):
    """Normalized ``a^beta * q^(1 - beta)``."""
    if beta == 1.0:
        return np.array(a, dtype=float)
    pos = (a > 0) & (q > 0)
    if not pos.any():
        raise DomainError("D_beta(A(q) || q) is infinite")
    logs = np.where(pos, beta * _log(np.where(pos, a, 1.0))
                    + (1 - beta) * _log(np.where(pos, q, 1.0)), -np.inf)
    out = np.exp(logs - logsumexp(logs))
    return out


def default_beta(alpha):
    """Tilting order ``min(1, 1/alpha)`` used by the solver."""
    return min(1.0, 1.0 / alpha)


def check_tilting(alpha, beta):
    """Validate a tilting order against the monotone-decrease hypothesis.

    For ``alpha < 1`` any ``beta`` in ``(0, 1]`` works; for ``alpha > 1`` it
    must lie strictly below ``min(1, 1/(alpha - 1))``.
    """
    beta = float(getattr(beta, "beta", beta))
    if not 0 < beta <= 1:
        raise PreconditionError("tilting order must be in (0, 1], got %r" % beta)
    if alpha > 1 and not _is_one(alpha) and beta >= min(1.0, 1.0 / (alpha - 1.0)):
        raise PreconditionError(
            "for alpha=%g the tilting order must be < %g, got %g"
            % (alpha, min(1.0, 1.0 / (alpha - 1.0)), beta))
    return beta


@dataclass(frozen=True)
class TiltingOrder:
    """Exponent of the geometric mixture in the tilted Augustin operator."""

    beta: float

    def __post_init__(self):
        if not 0 < float(self.beta) <= 1:
            raise PreconditionError("tilting order must be in (0, 1], got %r" % self.beta)
        object.__setattr__(self, "beta", float(self.beta))

    def __float__(self):
        return self.beta


# -- public operations ------------------------------------------------------

def output_distribution(P, W):
    """Output distribution ``q_P = P @ W`` induced by ``P``."""
    P, W = check_pair(P, W)
    return _frozen(P @ W)


def output_distribution_tilde(P, W):
    """``sum_x P(x) W_ac(x)`` where ``W_ac(x)`` is the part of row x
    absolutely continuous with respect to ``q_P``.

    On a finite alphabet this coincides with :func:`output_distribution`.
    """
    P, W = check_pair(P, W)
    qP = P @ W
    out = np.zeros_like(qP)
    for px, row in zip(P, W):
        if px > 0:
            out += px * lebesgue_decompose(row, qP)[0]
    return _frozen(out)


def tilted_channel(alpha, W, q):
    """Order ``alpha`` tilted channel of ``W`` around ``q``.

    Row x is ``exp((1 - alpha) D_alpha(W(x) || q)) * W(x)^alpha * q^(1 - alpha)``,
    defined for the admissible inputs whose divergence is finite.

    Returns
    -------
    rows : ndarray, shape (n_admissible, n_outputs)
    admissible : ndarray of int
        Indices of the admissible inputs, in increasing order.
    """
    alpha = check_order(alpha, allow_inf=False)
    W = check_channel(W)
    q = check_distribution(q, "q")
    check_same_length(W, q, ("W", "q"))
    rows, div = _tilt_rows(alpha, W, q)
    admissible = np.flatnonzero(np.isfinite(div))
    if admissible.size == 0:
        raise DomainError("no input has finite divergence from q")
    return _frozen(rows[admissible]), admissible


def augustin_operator(alpha, P, W, q):
    """``A(q) = sum_x P(x) * tilted_channel(alpha, W, q)[x]``."""
    alpha = check_order(alpha, allow_inf=False)
    P, W = check_pair(P, W)
    q = check_distribution(q, "q")
    check_same_length(W, q, ("W", "q"))
    on = P > 0
    return _frozen(_operator(alpha, P[on], W[on], q)[0])


def tilted_augustin_operator(alpha, beta, P, W, q):
    """Normalized geometric mixture ``A(q)^beta * q^(1 - beta)``."""
    alpha = check_order(alpha, allow_inf=False)
    beta = float(getattr(beta, "beta", beta))
    if not 0 < beta <= 1:
        raise PreconditionError("tilting order must be in (0, 1], got %r" % beta)
    P, W = check_pair(P, W)
    q = check_distribution(q, "q")
    check_same_length(W, q, ("W", "q"))
    on = P > 0
    a, _ = _operator(alpha, P[on], W[on], q)
    return _frozen(_geometric_mix(beta, a, q))


def augustin_iterates(alpha, P, W, beta=None, init=None):
    """Yield ``(Q_k, A(Q_k), D_alpha(W || Q_k | P))`` along the tilted iteration.

    The generator is infinite; callers decide when to stop. Arguments are as
    in :func:`solve_augustin_mean`.
    """
    alpha = check_order(alpha)
    if math.isinf(alpha):
        raise ValueError("order alpha=inf is not supported by the Augustin operator")
    P, W = check_pair(P, W)
    beta = default_beta(alpha) if beta is None else check_tilting(alpha, beta)
    on = P > 0
    Pp, Wp = P[on], W[on]
    if init is None:
        Q = Pp @ Wp
    else:
        Q = np.array(check_distribution(init, "init"))
        check_same_length(W, Q, ("W", "init"))
    while True:
        A, div = _operator(alpha, Pp, Wp, Q)
        yield Q, A, conditional_from_rows(Pp, div)
        Q = _geometric_mix(beta, A, Q)


def solve_augustin_mean(alpha, P, W, tol=1e-10, max_iter=100_000, beta=None, init=None):
    """Compute the Augustin mean and information by fixed-point iteration.

    Iterates ``Q_{k+1} = tilted_augustin_operator(alpha, beta, P, W, Q_k)``
    starting from ``init`` (default: the output distribution ``q_P``) until
    ``tv_distance(A(Q_k), Q_k) <= tol``.

    Parameters
    ----------
    alpha : float
        Finite positive order.
    P, W : array-like
        Input distribution and row-stochastic channel.
    tol : float
        Stopping threshold on the total variation residual of the
        (untilted) Augustin operator.
    max_iter : int
        Maximum number of operator updates. Hitting it yields a report with
        ``converged=False``; no exception is raised.
    beta : float, optional
        Tilting order; defaults to ``min(1, 1/alpha)``.
    init : array-like, optional
        Starting distribution. Must give a finite objective.

    Returns
    -------
    SolveReport
    """
    alpha = check_order(alpha)
    if math.isinf(alpha):
        raise ValueError("order alpha=inf is not supported by the Augustin operator")
    P, W = check_pair(P, W)
    if not tol > 0:
        raise ValueError("tol must be positive")
    max_iter = check_positive_int(max_iter, "max_iter", minimum=0)
    beta = default_beta(alpha) if beta is None else check_tilting(alpha, beta)

    on = P > 0
    start = P[on] @ W[on] if init is None else check_distribution(init, "init")
    check_same_length(W, start, ("W", "init"))
    objective = conditional_from_rows(P[on], row_divergences(alpha, W[on], start))
    if math.isinf(objective):
        if init is not None:
            raise DomainError("initial distribution gives an infinite objective")
        return SolveReport(_frozen(start), math.inf, 0, math.nan, (math.inf,), False,
                           alpha, beta)

    trace = []
    converged = False
    for k, (Q, A, value) in enumerate(augustin_iterates(alpha, P, W, beta, init)):
        trace.append(value)
        residual = float(np.abs(A - Q).sum())
        if residual <= tol:
            converged = True
            break
        if k >= max_iter:
            break
    return SolveReport(_frozen(Q), trace[-1], k, residual, tuple(trace), converged, alpha, beta)


def _lemma_orders(alpha, beta):
    if _is_one(alpha):
        raise PreconditionError("the decrease bound needs alpha != 1")
    if alpha < 1:
        if not 0 < beta <= 1:
            raise PreconditionError("for alpha < 1 beta must be in (0, 1], got %r" % beta)
        return 1.0
    if not 0 < beta < min(1.0, 1.0 / (alpha - 1.0)):
        raise PreconditionError("for alpha > 1 beta must be in (0, %g), got %r"
                                % (min(1.0, 1.0 / (alpha - 1.0)), beta))
    return 1.0 + beta * (1.0 - alpha)


def monotonicity_gap(alpha, beta, P, W, q):
    """Terms of the guaranteed decrease of one tilted operator step.

    Returns ``(drop, middle, pinsker_term)`` where ``drop`` is
    ``D(W||q|P) - D(W||A^beta(q)|P)``, ``middle`` is
    ``beta * D_r(A(q)||q) + (1 - beta) * D_beta(A(q)||q)`` with ``r = 1`` for
    ``alpha < 1`` and ``r = 1 + beta (1 - alpha)`` for ``alpha > 1``, and
    ``pinsker_term`` is ``beta (2 - beta max(alpha, 1)) / 2 * ||A(q) - q||^2``.
    They satisfy ``drop >= middle >= pinsker_term >= 0``.
    """
    alpha = check_order(alpha, allow_inf=False)
    beta = float(getattr(beta, "beta", beta))
    r = _lemma_orders(alpha, beta)
    P, W = check_pair(P, W)
    q = check_distribution(q, "q")
    check_same_length(W, q, ("W", "q"))
    on = P > 0
    Pp, Wp = P[on], W[on]
    A, div = _operator(alpha, Pp, Wp, q)
    nxt = _geometric_mix(beta, A, q)
    drop = conditional_from_rows(Pp, div) - conditional_from_rows(
        Pp, row_divergences(alpha, Wp, nxt))
    middle = beta * float(row_divergences(r, A, q)[0])
    if beta < 1:
        middle += (1 - beta) * float(row_divergences(beta, A, q)[0])
    tv = float(np.abs(A - q).sum())
    pinsker = beta * (2 - beta * max(alpha, 1.0)) / 2 * tv ** 2
    return drop, middle, pinsker


def _require_converged(solved):
    if not solved.converged:
        raise PreconditionError("the solve did not converge")


def ehb_sandwich(alpha, P, W, q, solved):
    """Bounds on the excess objective at ``q`` over the Augustin information.

    Returns ``(upper, gap, lower)`` with ``upper = D_{max(1,alpha)}(q* || q)``,
    ``gap = D_alpha(W || q | P) - I_alpha`` and
    ``lower = D_{min(1,alpha)}(q* || q)``; ``upper >= gap >= lower``.
    """
    alpha = check_order(alpha, allow_inf=False)
    _require_converged(solved)
    P, W = check_pair(P, W)
    q = check_distribution(q, "q")
    check_same_length(W, q, ("W", "q"))
    star = solved.mean
    on = P > 0
    value = conditional_from_rows(P[on], row_divergences(alpha, W[on], q))
    gap = value - solved.information
    upper = float(row_divergences(max(1.0, alpha), star, q)[0])
    lower = float(row_divergences(min(1.0, alpha), star, q)[0])
    return upper, gap, lower


def mean_identity_residual(alpha, P, W, solved):
    """Sup-norm violation of the implicit equation for the Augustin mean.

    On ``supp(q_P)`` the mean satisfies
    ``q*/q_P = (sum_x P(x) (W(x)/q_P)^alpha exp((1-alpha) D_alpha(W(x)||q*)))^(1/alpha)``.
    """
    alpha = check_order(alpha, allow_inf=False)
    _require_converged(solved)
    P, W = check_pair(P, W)
    on = P > 0
    Pp, Wp = P[on], W[on]
    qP = Pp @ Wp
    sup = qP > 0
    star = np.asarray(solved.mean)
    div = row_divergences(alpha, Wp, star)
    ratio = Wp[:, sup] / qP[sup]
    weights = Pp * np.exp((1 - alpha) * div)
    rhs = (weights @ ratio ** alpha) ** (1 / alpha)
    return float(np.max(np.abs(star[sup] / qP[sup] - rhs)))
