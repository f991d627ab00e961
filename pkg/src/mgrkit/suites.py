"""Seeded corpora and the identity suites run by ``mgrkit identity-suite``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .generators import random_hamming, random_semimetric
from .hamming import make_subset, theorem12_check
from .solver import lemma_residual
from .space import check_cm_gram_identity, p_matrices

SUITE_PS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
CM_GRAM_TOL = 1e-9
LEMMA_TOL = 1e-8


@dataclass
class SuiteOutcome:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "worst": self.worst,
            "failures": self.failures[:20],
        }


def semimetric_corpus(count: int = 100, seed: int = 0, min_order: int = 2, max_order: int = 12):
    """``count`` random semi-metrics cycling through orders ``min_order..max_order``."""
    span = max_order - min_order + 1
    for i in range(count):
        order = min_order + i % span
        yield seed + i, random_semimetric(order - 1, seed + i)


def metric_corpus(count: int = 50, seed: int = 0, min_order: int = 3, max_order: int = 10):
    """Random genuine metrics with distances uniform on [1, 2].

    Any such matrix satisfies the triangle inequality, so no sample is rejected.
    """
    span = max_order - min_order + 1
    for i in range(count):
        order = min_order + i % span
        yield seed + i, random_semimetric(order - 1, seed + i, low=1.0, high=2.0, metric=True)


def hamming_exhaustive(max_dim: int = 4, max_m: int = 6):
    """Every subset of ``{0,1}^n`` (n <= max_dim) containing 0 with at most ``max_m`` other points."""
    for n in range(1, max_dim + 1):
        nonzero = [p for p in itertools.product((0, 1), repeat=n) if any(p)]
        for m in range(0, min(max_m, len(nonzero)) + 1):
            for combo in itertools.combinations(nonzero, m):
                yield make_subset([(0,) * n, *combo])


def hamming_random_corpus(count: int = 200, seed: int = 0, max_dim: int = 10, max_m: int = 10):
    for i in range(count):
        n = 1 + i % max_dim
        m = 1 + (i // max_dim) % max_m
        yield random_hamming(n, min(m, 2**n - 1), seed + i)


def cm_gram_suite(count: int = 100, seed: int = 0, ps=SUITE_PS, tol: float = CM_GRAM_TOL) -> SuiteOutcome:
    out = SuiteOutcome("cm_gram_identity")
    for s, space in semimetric_corpus(count, seed):
        for p in ps:
            r = check_cm_gram_identity(p_matrices(space, p))
            out.worst = max(out.worst, r)
            if r <= tol:
                out.passed += 1
            else:
                out.failed += 1
                out.failures.append({"seed": s, "p": p, "residual": r})
    return out


def lemma_suite(count: int = 100, seed: int = 0, ps=SUITE_PS, tol: float = LEMMA_TOL) -> SuiteOutcome:
    out = SuiteOutcome("lemma_det_identity")
    for s, space in semimetric_corpus(count, seed):
        for p in ps:
            r = lemma_residual(space, p)
            if r is None:
                out.skipped += 1
                continue
            out.worst = max(out.worst, r)
            if r <= tol:
                out.passed += 1
            else:
                out.failed += 1
                out.failures.append({"seed": s, "p": p, "residual": r})
    return out


def hamming_suite(count: int = 200, seed: int = 0, exhaustive: bool = True) -> SuiteOutcome:
    out = SuiteOutcome("hamming_cm_identity")
    subsets = hamming_random_corpus(count, seed)
    if exhaustive:
        subsets = itertools.chain(hamming_exhaustive(), subsets)
    for subset in subsets:
        check = theorem12_check(subset)
        if check.equal:
            out.passed += 1
        else:
            out.failed += 1
            out.failures.append({"points": ["".join(map(str, x)) for x in subset.points], "lhs": check.lhs, "rhs": check.rhs})
    return out


def run_all(count: int = 100, seed: int = 0, hamming_count: int = 200) -> list[SuiteOutcome]:
    return [cm_gram_suite(count, seed), lemma_suite(count, seed), hamming_suite(hamming_count, seed)]
