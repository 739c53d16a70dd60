"""Channel constructors."""
import math

import numpy as np

from .validation import check_positive_int


def identity(n):
    """Noiseless channel on ``n`` symbols."""
    n = check_positive_int(n, "n")
    return np.eye(n)


def bsc(p):
    """Binary symmetric channel with crossover probability ``p``."""
    p = float(p)
    if not 0 <= p <= 0.5:
        raise ValueError("crossover probability must be in [0, 0.5], got %r" % p)
    return np.array([[1 - p, p], [p, 1 - p]])


def random_channel(nx, ny, seed=None):
    """Channel whose rows are drawn uniformly from the simplex (PCG64)."""
    nx = check_positive_int(nx, "nx")
    ny = check_positive_int(ny, "ny")
    rng = np.random.default_rng(seed)
    W = rng.dirichlet(np.ones(ny), size=nx)
    # dirichlet rows are normalized up to rounding; pin them
    return W / W.sum(axis=1, keepdims=True)


def example1_closed_form(gamma, alpha):
    """Augustin information of the continuous partially noiseless channel
    with uniform input: ``(alpha ln gamma + ln(1 + alpha)) / (1 - alpha)``
    for ``alpha < 1`` and infinity otherwise."""
    if alpha >= 1:
        return math.inf
    return (alpha * math.log(gamma) + math.log1p(alpha)) / (1 - alpha)


def example1_discretized(gamma, n, m):
    """Discretization of the partially noiseless channel.

    The continuous channel maps an input ``x`` in (0, 1) to the output density
    ``(1{y < x} + (y - x)) / gamma`` on (0, 1) plus an atom of mass
    ``(gamma - 0.5) / gamma`` at ``x + 1``.

    Inputs are the ``n`` midpoints ``x_i = (i - 0.5) / n`` with uniform
    weight. Outputs are ``m`` equal bins of (0, 1) followed by the ``n`` atoms
    ``x_i + 1``. Bin masses are exact integrals of the piecewise-linear
    density, so each row sums to one up to rounding.

    Returns
    -------
    W : ndarray, shape (n, m + n)
    P : ndarray, shape (n,)
    """
    gamma = float(gamma)
    if not gamma > 0.5:
        raise ValueError("gamma must exceed 0.5, got %r" % gamma)
    n = check_positive_int(n, "n", minimum=2)
    m = check_positive_int(m, "m", minimum=2)

    x = (np.arange(1, n + 1) - 0.5) / n
    edges = np.linspace(0.0, 1.0, m + 1)
    lo, hi = edges[:-1], edges[1:]
    width = hi - lo
    below = np.clip(x[:, None] - lo[None, :], 0.0, width[None, :])
    linear = (hi ** 2 - lo ** 2)[None, :] / 2 - x[:, None] * width[None, :]
    bins = (below + linear) / gamma

    W = np.zeros((n, m + n))
    W[:, :m] = bins
    W[np.arange(n), m + np.arange(n)] = (gamma - 0.5) / gamma
    P = np.full(n, 1.0 / n)
    return W, P
