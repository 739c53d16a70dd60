"""Randomized property checks for the divergence and Augustin routines.

Each check draws seeded random instances (numpy ``default_rng``, i.e.
PCG64), evaluates an inequality or identity, and records the worst slack
per trial. Slack is ``observed margin`` so that a trial passes iff its slack
is ``>= -tolerance``.
"""
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import augustin, divergence, oracle

RNG_ALGORITHM = "numpy.random.PCG64"
ORDER_GRID = (0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 4.0, math.inf)
SOLVE_ORDERS = (0.3, 0.7, 1.5, 3.0)


@dataclass
class CheckResult:
    name: str
    tolerance: float
    seed: int
    slacks: list = field(default_factory=list)

    @property
    def worst_slack(self):
        return min(self.slacks) if self.slacks else math.inf

    @property
    def passed(self):
        return bool(self.slacks) and self.worst_slack >= -self.tolerance

    @property
    def trials(self):
        return len(self.slacks)


def random_instance(rng, nx, ny):
    """Random full-support input distribution and channel."""
    P = rng.dirichlet(np.ones(nx))
    W = rng.dirichlet(np.ones(ny), size=nx)
    return P, W / W.sum(axis=1, keepdims=True)


def zero_column_instance(rng, nx, ny, zeros=1):
    """Instance whose output distribution misses ``zeros`` output symbols.

    An extra input with zero probability puts mass on the missing symbols.
    """
    live = ny - zeros
    P = np.append(rng.dirichlet(np.ones(nx)), 0.0)
    W = np.zeros((nx + 1, ny))
    W[:nx, :live] = rng.dirichlet(np.ones(live), size=nx)
    W[nx] = rng.dirichlet(np.ones(ny))
    return P, W / W.sum(axis=1, keepdims=True)


def _min_slack(*pairs):
    # each pair is (bigger, smaller); inf >= inf counts as satisfied
    out = math.inf
    for big, small in pairs:
        if math.isinf(big) and big > 0:
            continue
        out = min(out, big - small)
    return out


def check_pinsker(trials=1000, seed=1, size=4, tolerance=1e-12):
    """Pinsker-type lower bound on every order of the grid."""
    rng = np.random.default_rng(seed)
    res = CheckResult("pinsker", tolerance, seed)
    for _ in range(trials):
        w, q = rng.dirichlet(np.ones(size), size=2)
        res.slacks.append(min(divergence.pinsker_slack(a, w, q) for a in ORDER_GRID))
    return res


def check_homogeneity(trials=200, seed=1, size=4, tolerance=1e-12):
    """Scaling the second argument by ``c`` shifts the divergence by ``-ln c``;
    the conditional divergence only sees the normalized absolutely continuous
    part of a sub-probability measure."""
    rng = np.random.default_rng(seed)
    res = CheckResult("homogeneity", tolerance, seed)
    for _ in range(trials):
        w, q = rng.dirichlet(np.ones(size), size=2)
        c = float(np.exp(rng.uniform(-3, 3)))
        worst = 0.0
        for a in ORDER_GRID:
            lhs = divergence.renyi_divergence(a, w, c * q)
            rhs = divergence.renyi_divergence(a, w, q) - math.log(c)
            worst = max(worst, abs(lhs - rhs))
        P, W = zero_column_instance(rng, 3, size)
        qP = P @ W
        sub = rng.dirichlet(np.ones(size)) * rng.uniform(0.2, 1.0)
        ac = sub * (qP > 0)
        mass = ac.sum()
        for a in ORDER_GRID:
            if math.isinf(a):
                continue
            lhs = divergence.conditional_renyi_divergence(a, W, sub, P)
            rhs = divergence.conditional_renyi_divergence(a, W, ac / mass, P) - math.log(mass)
            worst = max(worst, abs(lhs - rhs))
        res.slacks.append(-worst)
    return res


def lemma5_betas(alpha):
    """Tilting orders exercised for ``alpha``: both ends for alpha < 1 and half
    the admissible bound for alpha > 1."""
    if alpha < 1:
        return (0.3, 1.0)
    return (0.5 * min(1.0, 1.0 / (alpha - 1.0)),)


def check_monotonicity(trials=200, seed=1, size=(3, 3), tolerance=1e-10):
    """Guaranteed decrease of one tilted step: drop >= middle >= Pinsker term >= 0."""
    rng = np.random.default_rng(seed)
    res = CheckResult("monotonicity", tolerance, seed)
    orders = (0.2, 0.5, 0.8, 1.3, 2.0, 4.0)
    for t in range(trials):
        alpha = orders[t % len(orders)]
        P, W = random_instance(rng, *size)
        q = rng.dirichlet(np.ones(size[1]))
        worst = math.inf
        for beta in lemma5_betas(alpha):
            drop, middle, pins = augustin.monotonicity_gap(alpha, beta, P, W, q)
            worst = min(worst, drop - middle, middle - pins, pins)
        res.slacks.append(worst)
    return res


def check_sandwich(trials=100, seed=1, size=(3, 3), tolerance=1e-8, tol=1e-10):
    """Excess objective is bracketed by divergences from the Augustin mean."""
    rng = np.random.default_rng(seed)
    res = CheckResult("sandwich", tolerance, seed)
    for t in range(trials):
        alpha = SOLVE_ORDERS[t % len(SOLVE_ORDERS)]
        P, W = random_instance(rng, *size)
        solved = augustin.solve_augustin_mean(alpha, P, W, tol=tol)
        q = rng.dirichlet(np.ones(size[1]))
        upper, gap, lower = augustin.ehb_sandwich(alpha, P, W, q, solved)
        res.slacks.append(_min_slack((upper, gap), (gap, lower)))
    return res


def check_uniqueness(trials=20, seed=1, size=(3, 3), starts=20, tolerance=1e-8,
                     tol=1e-12):
    """Solves from random full-support starts reach the same mean and value.

    Slack is ``min(1e-8 - max pairwise TV, 1e-10 - max value spread)``.
    """
    rng = np.random.default_rng(seed)
    res = CheckResult("uniqueness", 0.0, seed)
    for t in range(trials):
        alpha = SOLVE_ORDERS[t % len(SOLVE_ORDERS)]
        P, W = random_instance(rng, *size)
        reports = [augustin.solve_augustin_mean(alpha, P, W, tol=tol,
                                                init=rng.dirichlet(np.ones(size[1])))
                   for _ in range(starts)]
        tv = max((float(np.abs(a.mean - b.mean).sum()) for a, b in combinations(reports, 2)),
                 default=0.0)
        values = [r.information for r in reports]
        ok = all(r.converged for r in reports)
        slack = min(tolerance - tv, 1e-10 - (max(values) - min(values)))
        res.slacks.append(slack if ok else -math.inf)
    return res


def check_restriction(trials=20, seed=1, size=(3, 4), tolerance=1e-6):
    """Minimizing over the whole simplex or only over distributions dominated
    by the output distribution gives the same value."""
    rng = np.random.default_rng(seed)
    res = CheckResult("restriction", tolerance, seed)
    for t in range(trials):
        alpha = SOLVE_ORDERS[t % len(SOLVE_ORDERS)]
        P, W = zero_column_instance(rng, size[0], size[1])
        s = int(rng.integers(2 ** 31))
        _, full = oracle.descent_minimize(alpha, P, W, restrict=False, seed=s)
        _, restricted = oracle.descent_minimize(alpha, P, W, restrict=True, seed=s)
        res.slacks.append(-abs(full - restricted))
    return res


CHECKS = {
    "pinsker": check_pinsker,
    "monotonicity": check_monotonicity,
    "sandwich": check_sandwich,
    "homogeneity": check_homogeneity,
    "uniqueness": check_uniqueness,
    "restriction": check_restriction,
}
