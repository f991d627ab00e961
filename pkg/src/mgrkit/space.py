"""Finite (semi-)metric spaces and the p-dependent matrices built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import InvalidArgument, ValidationError
from .numerics import SignLogDet, det_sign_log

METRIC = "metric"
SEMI_METRIC = "semi-metric"
METRIC_KINDS = (METRIC, SEMI_METRIC)

TRIANGLE_SLACK = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """Labelled points ``x_0..x_n`` with a validated distance matrix.

    Build instances through :func:`validate_space`; the constructor itself
    performs no checks.
    """

    labels: tuple[str, ...]
    distances: np.ndarray
    metric_kind: str = METRIC

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        """Index of the last point (the space has ``n + 1`` points)."""
        return len(self.labels) - 1

    def normalized(self) -> "MetricSpace":
        """Same space with distances divided by the largest one."""
        if self.size < 2:
            return self
        scale = float(np.max(self.distances))
        return MetricSpace(self.labels, _frozen(self.distances / scale), self.metric_kind)

    def relabel(self, order: Sequence[int]) -> "MetricSpace":
        """Reorder the points; ``order[0]`` becomes the Gramian base point."""
        order = list(order)
        if sorted(order) != list(range(self.size)):
            raise InvalidArgument(f"{order} is not a permutation of range({self.size})")
        d = self.distances[np.ix_(order, order)]
        return MetricSpace(tuple(self.labels[i] for i in order), _frozen(d), self.metric_kind)


@dataclass(frozen=True, eq=False)
class PMatrices:
    p: float
    d_p: np.ndarray
    m_p: np.ndarray
    g_p: np.ndarray


def triangle_violations(d: np.ndarray, slack: float = TRIANGLE_SLACK) -> list[tuple[int, int, int]]:
    """Sorted index triples on which the triangle inequality fails."""
    n = d.shape[0]
    bad = set()
    for j in range(n):
        # d[i, k] > d[i, j] + d[j, k], for every i, k at once
        through = d[:, j][:, None] + d[j, :][None, :]
        mask = d > through + slack * np.maximum(through, 1.0)
        for i, k in zip(*np.nonzero(mask)):
            if j not in (i, k):
                bad.add(tuple(sorted((int(i), int(j), int(k)))))
    return sorted(bad)


def validate_space(labels, distances, metric_kind: str = METRIC) -> MetricSpace:
    """Check a distance matrix and wrap it as a :class:`MetricSpace`.

    Raises :class:`ValidationError` listing every violation found.
    """
    if metric_kind not in METRIC_KINDS:
        raise InvalidArgument(f"metric_kind must be one of {METRIC_KINDS}, got {metric_kind!r}")
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvalidArgument(f"distance matrix must be square, got shape {d.shape}")
    size = d.shape[0]
    if size == 0:
        raise InvalidArgument("a space needs at least one point")
    if labels is None:
        labels = [str(i) for i in range(size)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != size:
        raise InvalidArgument(f"{len(labels)} labels for {size} points")
    if len(set(labels)) != size:
        raise InvalidArgument("labels must be distinct")

    violations = []
    finite = np.isfinite(d)
    for i, j in zip(*np.nonzero(~finite)):
        if i <= j:
            violations.append(("non-finite", (int(i), int(j))))
    if violations:
        raise ValidationError(violations)
    for i in range(size):
        if d[i, i] != 0.0:
            violations.append(("nonzero-diagonal", (i, i)))
        for j in range(i + 1, size):
            if d[i, j] != d[j, i]:
                violations.append(("asymmetric", (i, j)))
            if d[i, j] <= 0.0 or d[j, i] <= 0.0:
                violations.append(("non-positive", (i, j)))
    if not violations and metric_kind == METRIC:
        violations.extend(("triangle", t) for t in triangle_violations(d))
    if violations:
        raise ValidationError(violations)
    return MetricSpace(labels, _frozen(d), metric_kind)


def gramian(d_p: np.ndarray) -> np.ndarray:
    """Gramian based at point 0 of a p-distance matrix."""
    to_base = d_p[1:, 0]
    return 0.5 * (to_base[:, None] + to_base[None, :] - d_p[1:, 1:])


def cayley_menger(d_p: np.ndarray) -> np.ndarray:
    size = d_p.shape[0]
    m = np.ones((size + 1, size + 1))
    m[0, 0] = 0.0
    m[1:, 1:] = d_p
    return m


def cayley_menger_det(d_p: np.ndarray) -> SignLogDet:
    """det(M_p) computed from the border of ``d_p / max(d_p)``.

    Scaling D_p by ``1/s`` scales det(M_p) by ``s^-(N-1)`` (N points) without
    changing its sign, and keeps the unit border commensurate with the block.
    """
    size = d_p.shape[0]
    s = float(np.max(d_p)) if size else 0.0
    if s <= 0.0:
        return det_sign_log(cayley_menger(d_p))
    det = det_sign_log(cayley_menger(d_p / s))
    if det.sign == 0:
        return det
    return SignLogDet(det.sign, det.log_magnitude + (size - 1) * math.log(s))


def p_distance_matrix(space: MetricSpace, p: float) -> np.ndarray:
    if not p > 0 or not math.isfinite(p):
        raise InvalidArgument(f"exponent p must be positive and finite, got {p!r}")
    return np.power(space.distances, p)


def p_matrices(space: MetricSpace, p: float) -> PMatrices:
    """D_p, M_p and G_p of ``space`` at exponent ``p``."""
    d_p = p_distance_matrix(space, p)
    return PMatrices(float(p), _frozen(d_p), _frozen(cayley_menger(d_p)), _frozen(gramian(d_p)))


def cm_gram_sign(n: int) -> int:
    """Sign relating det(G_p) to det(M_p) for a space of ``n + 1`` points."""
    return -1 if (n + 1) % 2 else 1


def relative_difference(a: SignLogDet, b: SignLogDet) -> float:
    """``|a - b| / (1 + |a|)`` evaluated without overflowing either determinant."""
    if a.sign == 0:
        return abs(b.value) if b.log_magnitude < 709 else math.inf
    # log(1 + |a|), stable for very large or very small |a|
    log_denominator = a.log_magnitude + math.log1p(math.exp(-a.log_magnitude)) if a.log_magnitude > 0 else math.log1p(
        math.exp(a.log_magnitude)
    )
    if b.sign == 0:
        return math.exp(a.log_magnitude - log_denominator)
    shift = b.log_magnitude - a.log_magnitude
    if shift > 700:
        return math.exp(min(b.log_magnitude - log_denominator, 709.0))
    ratio = (b.sign * a.sign) * math.exp(shift)
    return abs(1.0 - ratio) * math.exp(a.log_magnitude - log_denominator)


def check_cm_gram_identity(pm: PMatrices) -> float:
    """Relative discrepancy in det(G_p) = (-1)^(n+1) 2^-n det(M_p)."""
    n = pm.g_p.shape[0]
    det_g = det_sign_log(pm.g_p)
    det_m = det_sign_log(pm.m_p)
    predicted = SignLogDet(det_m.sign * cm_gram_sign(n), det_m.log_magnitude - n * math.log(2.0))
    return relative_difference(det_g, predicted)
