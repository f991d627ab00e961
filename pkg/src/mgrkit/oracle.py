"""Brute-force checks of p-negative type and generalised roundness.

These work straight from the raw distance matrix and use LAPACK (numpy.linalg)
rather than the solver's Jacobi/LU routines, so they act as an independent
reference for solver output.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .space import MetricSpace

ORACLE_ZERO_TOL = 1e-9
ROUNDNESS_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class NegativeTypeVerdict:
    p: float
    holds: bool
    margin: float
    witness: Optional[np.ndarray] = None


def quadratic_form(space: MetricSpace, p: float, xi) -> float:
    """``sum_ij d(x_i, x_j)^p xi_i xi_j``."""
    xi = np.asarray(xi, dtype=float)
    return float(xi @ (space.distances**p) @ xi)


def negative_type_check(space: MetricSpace, p: float, zero_tol: float = ORACLE_ZERO_TOL) -> NegativeTypeVerdict:
    """Exact test of p-negative type on a finite space.

    The quadratic form of D_p is compressed to the mean-zero hyperplane with
    the centring projector; the space has p-negative type iff the top
    eigenvalue of the compressed matrix is (numerically) non-positive.
    """
    d = np.asarray(space.distances, dtype=float)
    size = d.shape[0]
    d_p = d**p
    centre = np.eye(size) - np.full((size, size), 1.0 / size)
    q = centre @ d_p @ centre
    q = 0.5 * (q + q.T)
    w, v = np.linalg.eigh(q)
    top = float(w[-1])
    if top <= zero_tol * (1.0 + float(np.max(np.abs(q)))):
        return NegativeTypeVerdict(float(p), True, top)
    witness = centre @ v[:, -1]
    witness = witness - witness.mean()
    return NegativeTypeVerdict(float(p), False, top, witness / np.linalg.norm(witness))


@dataclass(frozen=True)
class SimplexSample:
    """Two equal-length index collections; repeats are allowed."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]


def roundness_gap(space: MetricSpace, p: float, sample: SimplexSample) -> float:
    """Left minus right side of the generalised roundness inequality (<= 0 when it holds)."""
    d_p = space.distances**p
    xs, ys = list(sample.xs), list(sample.ys)
    within = d_p[np.ix_(xs, xs)].sum() + d_p[np.ix_(ys, ys)].sum()
    across = 2.0 * d_p[np.ix_(xs, ys)].sum()
    return float(within - across)


def generalised_roundness_check(
    space: MetricSpace, p: float, samples: Iterable[SimplexSample]
) -> tuple[bool, Optional[SimplexSample]]:
    """Evaluate the roundness inequality on each sample.

    Returns ``(True, None)`` if every sample satisfies it, else ``(False, first
    violator)``. Passing says nothing about collections outside ``samples``.
    """
    d_p = space.distances**p
    for sample in samples:
        if len(sample.xs) != len(sample.ys):
            raise ValueError(f"unequal collection sizes in {sample}")
        xs, ys = list(sample.xs), list(sample.ys)
        across = 2.0 * d_p[np.ix_(xs, ys)].sum()
        within = d_p[np.ix_(xs, xs)].sum() + d_p[np.ix_(ys, ys)].sum()
        if within > across + ROUNDNESS_SLACK * (1.0 + abs(across)):
            return False, sample
    return True, None


def exhaustive_samples(size: int, k_max: int):
    """All pairs of index tuples of each length ``1..k_max``."""
    for k in range(1, k_max + 1):
        tuples = list(itertools.product(range(size), repeat=k))
        for xs in tuples:
            for ys in tuples:
                yield SimplexSample(xs, ys)


def random_samples(size: int, k: int, count: int, seed: int):
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(count):
        idx = rng.integers(0, size, size=2 * k)
        yield SimplexSample(tuple(int(i) for i in idx[:k]), tuple(int(i) for i in idx[k:]))


def roundness_samples(size: int, k_max: int = 3, count: int = 20_000, seed: int = 0):
    """Exhaustive for small spaces (k <= 3, at most 6 points), seeded sampling otherwise."""
    if k_max <= 3 and size <= 6:
        return exhaustive_samples(size, k_max)
    return itertools.chain.from_iterable(
        random_samples(size, k, count // k_max, seed + k) for k in range(1, k_max + 1)
    )


def mgr_oracle(
    space: MetricSpace,
    p_min: float = 1e-3,
    p_max: float = 32.0,
    coarse_step: float = 0.05,
    zero_tol: float = ORACLE_ZERO_TOL,
) -> tuple[float, float]:
    """Bracket the mgr by scanning p-negative type on a grid.

    Returns ``(last p that holds, first p that fails)``; ``(p_max, inf)`` if
    nothing fails and ``(0, p_min)`` if ``p_min`` already fails.
    """
    count = int(math.floor((p_max - p_min) / coarse_step + 1e-9))
    grid = [p_min + k * coarse_step for k in range(count + 1)]
    if p_max - grid[-1] > 1e-12:
        grid.append(p_max)
    last_hold = 0.0
    for p in grid:
        if not negative_type_check(space, p, zero_tol).holds:
            return last_hold, p
        last_hold = p
    return p_max, math.inf
