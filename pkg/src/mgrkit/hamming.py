"""Subsets of the Hamming cube and the exact determinant identity at p = 1.

All computations here are in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidArgument, ValidationError
from .numerics import det_exact_integer
from .space import METRIC, MetricSpace, cayley_menger, validate_space


@dataclass(frozen=True)
class HammingSubset:
    """Points ``x_0 = 0, x_1, ..., x_m`` of ``{0,1}^n``."""

    n: int
    points: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.points) - 1

    @property
    def b_matrix(self) -> list[list[int]]:
        """Rows are ``x_1..x_m``."""
        return [list(x) for x in self.points[1:]]

    def distance_matrix(self) -> list[list[int]]:
        return [[sum(a != b for a, b in zip(x, y)) for y in self.points] for x in self.points]


def make_subset(points) -> HammingSubset:
    """Validate 0/1 vectors and translate so that the first one is zero.

    Translation is XOR with ``points[0]``, which preserves Hamming distances.
    """
    pts = [tuple(int(c) for c in x) for x in points]
    if not pts:
        raise InvalidArgument("empty point list")
    n = len(pts[0])
    for i, x in enumerate(pts):
        if len(x) != n:
            raise InvalidArgument(f"point {i} has length {len(x)}, expected {n}")
        if any(c not in (0, 1) for c in x):
            raise InvalidArgument(f"point {i} is not a 0/1 vector")
    base = pts[0]
    pts = [tuple(a ^ b for a, b in zip(x, base)) for x in pts]
    dupes = []
    seen: dict[tuple[int, ...], int] = {}
    for i, x in enumerate(pts):
        if x in seen:
            dupes.append(("duplicate-point", (seen[x], i)))
        seen.setdefault(x, i)
    if dupes:
        raise ValidationError(dupes)
    return HammingSubset(n, tuple(pts))


def hamming_to_space(subset: HammingSubset) -> MetricSpace:
    labels = ["".join(map(str, x)) for x in subset.points]
    return validate_space(labels, np.array(subset.distance_matrix(), dtype=float), METRIC)


def gram_integer(b: list[list[int]]) -> list[list[int]]:
    """``B B^T`` over the integers."""
    return [[sum(x * y for x, y in zip(r, s)) for s in b] for r in b]


@dataclass(frozen=True)
class IdentityCheck:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def theorem12_check(subset: HammingSubset) -> IdentityCheck:
    """Compare det(M_1) with ``(-1)^(m-1) 2^m det(B B^T)`` exactly."""
    d1 = subset.distance_matrix()
    lhs = det_exact_integer(cayley_menger(np.array(d1, dtype=np.int64)).astype(np.int64).tolist())
    m = subset.m
    sign = -1 if (m - 1) % 2 else 1
    rhs = sign * 2**m * det_exact_integer(gram_integer(subset.b_matrix))
    return IdentityCheck(lhs, rhs)


@dataclass(frozen=True)
class MuruganVerdict:
    affinely_independent: bool

    @property
    def mgr_exceeds_one(self) -> bool:
        return self.affinely_independent


def murugan_criterion(subset: HammingSubset) -> MuruganVerdict:
    """A subset containing 0 has mgr > 1 exactly when it is affinely independent.

    With ``x_0 = 0`` that is linear independence of ``x_1..x_m``, i.e.
    ``det(B B^T) != 0``.
    """
    return MuruganVerdict(det_exact_integer(gram_integer(subset.b_matrix)) != 0)
