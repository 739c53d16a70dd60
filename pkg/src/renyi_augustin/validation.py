"""Input validation helpers shared by every public function.

These mirror the ``check_array`` family in scikit-learn: they accept
array-likes, return read-only float arrays, and raise ``ValueError``
subclasses on bad data instead of silently repairing it.
"""
import math
import numbers

import numpy as np

#: Tolerance on ``sum == 1`` for probability vectors and channel rows.
NORMALIZATION_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when alphabet sizes of two arguments disagree."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operator."""


class ZeroMeasureError(ValueError):
    """Raised when a measure with zero total mass cannot be normalized."""


class PreconditionError(ValueError):
    """Raised when a hypothesis required by an operation does not hold."""


def _frozen(arr):
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


def check_order(alpha, *, allow_inf=True):
    """Validate a divergence order and return it as a float.

    Accepts plain numbers and :class:`~renyi_augustin.measures.Order`.
    """
    alpha = float(getattr(alpha, "value", alpha))
    if math.isnan(alpha) or alpha <= 0:
        raise ValueError("order must be positive, got %r" % alpha)
    if math.isinf(alpha) and not allow_inf:
        raise ValueError("order must be finite for this operation")
    return alpha


def check_measure(q, name="q"):
    """Return ``q`` as a read-only 1-d array of non-negative finite floats."""
    arr = np.asarray(q, dtype=float)
    if arr.ndim != 1:
        raise ValueError("%s must be one-dimensional, got shape %s" % (name, arr.shape))
    if arr.size == 0:
        raise ValueError("%s must be non-empty" % name)
    if not np.all(np.isfinite(arr)):
        raise ValueError("%s contains non-finite entries" % name)
    if np.any(arr < 0):
        raise ValueError("%s has negative entries" % name)
    return _frozen(arr)


def check_distribution(p, name="P", tol=NORMALIZATION_TOL):
    """Return ``p`` as a read-only probability vector.

    Vectors whose total differs from one by more than ``tol`` are rejected;
    they are never renormalized here.
    """
    arr = check_measure(p, name)
    total = arr.sum()
    if abs(total - 1.0) > tol:
        raise ValueError("%s must sum to 1 (got %.17g)" % (name, total))
    return arr


def check_channel(W, name="W", tol=NORMALIZATION_TOL):
    """Return ``W`` as a read-only row-stochastic matrix (inputs x outputs)."""
    arr = np.asarray(W, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("%s must be a non-empty 2-d matrix, got shape %s"
                         % (name, arr.shape))
    if not np.all(np.isfinite(arr)):
        raise ValueError("%s contains non-finite entries" % name)
    bad = np.argwhere(arr < 0)
    if bad.size:
        raise ValueError("%s row %d has a negative entry" % (name, bad[0][0]))
    sums = arr.sum(axis=1)
    off = np.flatnonzero(np.abs(sums - 1.0) > tol)
    if off.size:
        raise ValueError("%s row %d must sum to 1 (got %.17g)"
                         % (name, off[0], sums[off[0]]))
    return _frozen(arr)


def check_same_length(a, b, names=("a", "b")):
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError("%s and %s have different alphabet sizes (%d != %d)"
                             % (names[0], names[1], a.shape[-1], b.shape[-1]))


def check_pair(P, W):
    """Validate an (input distribution, channel) pair."""
    W = check_channel(W)
    P = check_distribution(P)
    if P.shape[0] != W.shape[0]:
        raise DimensionError("P has %d entries but W has %d rows"
                             % (P.shape[0], W.shape[0]))
    return P, W


def check_positive_int(value, name, minimum=1):
    if not isinstance(value, numbers.Integral) or value < minimum:
        raise ValueError("%s must be an integer >= %d, got %r" % (name, minimum, value))
    return int(value)
