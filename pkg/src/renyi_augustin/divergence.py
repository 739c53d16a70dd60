"""Renyi divergences of all orders and their conditional (input-averaged) form.

Everything is in nats. The second argument may be any finite measure, not
only a probability vector, so ``D(w || c*q) == D(w || q) - ln c``.
"""
import math

import numpy as np
from scipy.special import logsumexp

from .measures import ONE_TOL
from .validation import (
    DimensionError, check_channel, check_distribution, check_measure, check_order,
    check_same_length,
)


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def row_divergences(alpha, W, q):
    """Divergence of every row of ``W`` from ``q`` (no input validation).

    ``W`` is 2-d with rows in the simplex, ``q`` a non-negative vector. Returns
    a float array, ``inf`` where the divergence is infinite.
    """
    W = np.atleast_2d(W)
    pos = W > 0
    lq = _log(q)
    if math.isinf(alpha):
        ratio = np.where(pos, _log(np.where(pos, W, 1.0)) - lq, -np.inf)
        return ratio.max(axis=1)
    if abs(alpha - 1.0) <= ONE_TOL:
        blocked = (pos & (q <= 0)).any(axis=1)
        with np.errstate(invalid="ignore"):
            terms = np.where(pos & (q > 0), W * (_log(np.where(pos, W, 1.0)) - lq), 0.0)
        out = terms.sum(axis=1)
        out[blocked] = np.inf
        return out
    return _power_terms(alpha, W, q)[1]


def _power_terms(alpha, W, q):
    """Log of ``W^alpha q^(1-alpha)`` entrywise and the row divergences.

    Only for finite ``alpha != 1``. Entries that do not contribute are -inf.
    """
    pos = W > 0
    valid = pos & (q > 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        terms = np.where(valid, alpha * np.log(np.where(pos, W, 1.0))
                         + (1.0 - alpha) * np.log(q), -np.inf)
    lse = logsumexp(terms, axis=1)
    out = lse / (alpha - 1.0)
    if alpha > 1:
        out[(pos & (q <= 0)).any(axis=1)] = np.inf
    else:
        # all terms vanish: ln 0 / (alpha - 1) = +inf
        out[np.isneginf(lse)] = np.inf
    return terms, out, lse


def renyi_divergence(alpha, w, q):
    """Order ``alpha`` Renyi divergence ``D_alpha(w || q)``.

    Parameters
    ----------
    alpha : float or Order
        Order in ``(0, inf]``. Orders within ``1e-12`` of one use the
        Kullback-Leibler formula.
    w : array-like
        Probability vector.
    q : array-like
        Non-negative vector of the same length (need not be normalized).

    Returns
    -------
    float
        The divergence in nats; ``math.inf`` when ``w`` is not absolutely
        continuous in the sense required by the order.
    """
    alpha = check_order(alpha)
    w = check_distribution(w, "w")
    q = check_measure(q, "q")
    check_same_length(w, q, ("w", "q"))
    return float(row_divergences(alpha, w, q)[0])


def conditional_from_rows(P, rows):
    """``sum_x P(x) * rows[x]`` with +inf absorbing on the support of P."""
    on = P > 0
    if np.any(np.isinf(rows[on])):
        return math.inf
    return float(np.dot(P[on], rows[on]))


def conditional_renyi_divergence(alpha, W, q, P):
    """``D_alpha(W || q | P)``, the P-average of the row divergences."""
    alpha = check_order(alpha)
    W = check_channel(W)
    q = check_measure(q, "q")
    P = check_distribution(P)
    if W.shape[0] != P.shape[0]:
        raise DimensionError("P has %d entries but W has %d rows" % (P.shape[0], W.shape[0]))
    check_same_length(W, q, ("W", "q"))
    on = P > 0
    return conditional_from_rows(P[on], row_divergences(alpha, W[on], q))


def pinsker_slack(alpha, w, q):
    """``D_alpha(w || q) - (min(1, alpha) / 2) * ||w - q||^2``.

    Nonnegative for probability vectors; ``inf`` when the divergence is.
    """
    alpha = check_order(alpha)
    w = check_distribution(w, "w")
    q = check_distribution(q, "q")
    check_same_length(w, q, ("w", "q"))
    d = float(row_divergences(alpha, w, q)[0])
    if math.isinf(d):
        return math.inf
    tv = float(np.abs(w - q).sum())
    return d - min(1.0, alpha) / 2.0 * tv ** 2
