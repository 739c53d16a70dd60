"""Brute-force minimizers of ``Q -> D_alpha(W || Q | P)`` over the simplex.

These exist to cross-check the fixed-point solver, so they evaluate the
objective with their own direct power-sum formula rather than the log-space
routines in :mod:`renyi_augustin.divergence`.
"""
import math

import numpy as np

from .validation import check_order, check_pair, check_positive_int

MAX_GRID_OUTPUTS = 4


def batch_objective(alpha, P, W, Q):
    """Conditional divergence for each row of ``Q`` (shape (N, k)).

    ``P`` and ``W`` must already be restricted to inputs with ``P(x) > 0``.
    """
    Q = np.atleast_2d(Q)
    total = np.zeros(Q.shape[0])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for px, w in zip(P, W):
            on = w > 0
            wq, qq = w[on], Q[:, on]
            if math.isinf(alpha):
                d = np.log((wq / qq).max(axis=1))
            elif alpha == 1.0:
                d = (wq * np.log(wq / qq)).sum(axis=1)
            else:
                s = (wq ** alpha * qq ** (1 - alpha)).sum(axis=1)
                d = np.log(s) / (alpha - 1)
            d = np.where(np.isnan(d), np.inf, d)
            total += px * d
    return total


def _compositions(total, parts):
    """All non-negative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        return np.array([[total]])
    if parts == 2:
        i = np.arange(total + 1)
        return np.stack([i, total - i], axis=1)
    return np.concatenate([_prepend(first, _compositions(total - first, parts - 1))
                           for first in range(total + 1)])


def _prepend(value, block):
    return np.column_stack([np.full(block.shape[0], value), block])


def _pick(best, value, q):
    # lower value wins; ties broken by lexicographic order of q
    if best is None or value < best[0] or (value == best[0] and tuple(q) < tuple(best[1])):
        return value, q
    return best


def grid_minimize(alpha, P, W, resolution=1000):
    """Exhaustive search over the lattice ``{k / resolution}`` of the simplex
    restricted to the support of the output distribution.

    Returns ``(q_best, value)``; the value is an upper bound on the
    Augustin information.
    """
    alpha = check_order(alpha)
    P, W = check_pair(P, W)
    resolution = check_positive_int(resolution, "resolution", minimum=10)
    if W.shape[1] > MAX_GRID_OUTPUTS:
        raise ValueError("grid search supports at most %d outputs, got %d"
                         % (MAX_GRID_OUTPUTS, W.shape[1]))
    on = P > 0
    Pp, Wp = P[on], W[on]
    sup = np.flatnonzero(Pp @ Wp > 0)
    Ws = Wp[:, sup]
    k = sup.size

    best = None
    # chunk by the first coordinate to bound memory
    for first in range(resolution + 1):
        if k == 1:
            if first != resolution:
                continue
            lattice = np.array([[resolution]])
        else:
            lattice = _prepend(first, _compositions(resolution - first, k - 1))
        Q = lattice / resolution
        values = batch_objective(alpha, Pp, Ws, Q)
        i = int(np.argmin(values))
        best = _pick(best, float(values[i]), Q[i])
    q = np.zeros(W.shape[1])
    q[sup] = best[1]
    return q, best[0]


def _value_and_gradient(alpha, P, W, Q):
    """Objective and its gradient in ``Q`` (rows of W restricted to P > 0)."""
    pos = W > 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if alpha == 1.0:
            logs = np.where(pos, np.log(np.where(pos, W, 1.0) / Q), 0.0)
            value = float(P @ (W * logs).sum(axis=1))
            return value, -(P @ W) / Q
        T = np.where(pos, W ** alpha * Q ** (-alpha), 0.0)
        s = T @ Q
        value = float(P @ (np.log(s) / (alpha - 1)))
        return value, -(P / s) @ T


def _mirror_descent(alpha, P, W, Q, tol, max_iter, step):
    value, g = _value_and_gradient(alpha, P, W, Q)
    best = (value, Q)
    for k in range(1, max_iter + 1):
        # the gradient blows up like 1/Q near the boundary; scale by its sup norm
        eta = step / (math.sqrt(k) * np.abs(g).max())
        logq = np.log(Q, where=Q > 0, out=np.full_like(Q, -np.inf)) - eta * g
        nxt = np.exp(logq - logq.max())
        nxt /= nxt.sum()
        change = float(np.abs(nxt - Q).sum())
        Q = nxt
        value, g = _value_and_gradient(alpha, P, W, Q)
        if value < best[0]:
            best = (value, Q)
        if change < tol:
            break
    return best


def descent_minimize(alpha, P, W, tol=1e-12, max_iter=20_000, restarts=5, seed=0,
                     restrict=True, step=1.0):
    """Multi-start entropic mirror descent with step ``step / sqrt(k)``
    (relative to the sup norm of the gradient).

    Starts are drawn uniformly from the simplex (numpy PCG64 seeded with
    ``seed``). With ``restrict=True`` the search runs on the support of the
    output distribution, otherwise on the whole simplex.

    Returns ``(q_best, value)``; ties between restarts go to the
    lexicographically smaller ``q``.
    """
    alpha = check_order(alpha, allow_inf=False)
    P, W = check_pair(P, W)
    restarts = check_positive_int(restarts, "restarts")
    max_iter = check_positive_int(max_iter, "max_iter")
    on = P > 0
    Pp, Wp = P[on], W[on]
    if restrict:
        sup = np.flatnonzero(Pp @ Wp > 0)
    else:
        sup = np.arange(W.shape[1])
    Ws = Wp[:, sup]
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        start = rng.dirichlet(np.ones(sup.size))
        value, q = _mirror_descent(alpha, Pp, Ws, start, tol, max_iter, step)
        best = _pick(best, value, q)
    q = np.zeros(W.shape[1])
    q[sup] = best[1]
    return q, best[0]
