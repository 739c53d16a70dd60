"""Finite measures on a finite alphabet.

Measures are plain read-only numpy vectors; ``math.inf`` is the only
representation of an infinite value. Supports are never smoothed: an exact
zero stays an exact zero.
"""
import math
from dataclasses import dataclass

import numpy as np

from .validation import ZeroMeasureError, check_measure, check_order, check_same_length

#: Orders closer than this to one are evaluated with the KL formula.
ONE_TOL = 1e-12


@dataclass(frozen=True)
class Order:
    """A divergence order in ``(0, inf]``."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", check_order(self.value))

    @property
    def is_one(self):
        return abs(self.value - 1.0) <= ONE_TOL

    @property
    def is_infinite(self):
        return math.isinf(self.value)

    def __float__(self):
        return self.value


def tv_distance(a, b):
    """Total variation norm of ``a - b``, i.e. ``sum |a(y) - b(y)|``."""
    a = check_measure(a, "a")
    b = check_measure(b, "b")
    check_same_length(a, b)
    return float(np.abs(a - b).sum())


def lebesgue_decompose(q, ref):
    """Split ``q`` into parts absolutely continuous and singular w.r.t. ``ref``.

    Returns ``(ac, sing)`` with ``ac + sing == q`` exactly.
    """
    q = check_measure(q, "q")
    ref = check_measure(ref, "ref")
    check_same_length(q, ref, ("q", "ref"))
    on = ref > 0
    ac = np.where(on, q, 0.0)
    sing = np.where(on, 0.0, q)
    ac.setflags(write=False)
    sing.setflags(write=False)
    return ac, sing


def normalize(q):
    """Return ``(q / ||q||, ||q||)``; a zero measure raises ZeroMeasureError."""
    q = check_measure(q, "q")
    total = float(q.sum())
    if total <= 0:
        raise ZeroMeasureError("cannot normalize a measure with zero total mass")
    out = q / total
    out.setflags(write=False)
    return out, total


def support(q):
    """Boolean mask of the entries with positive mass."""
    return np.asarray(q) > 0
