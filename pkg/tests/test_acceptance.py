"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary. Tolerances and runtime budgets are fixed here.
"""

import math
import time

import numpy as np
import pytest

from mgrkit.generators import euclidean_space, family, graph_to_space, random_euclidean, random_tree
from mgrkit.hamming import hamming_to_space, make_subset, murugan_criterion
from mgrkit.numerics import symmetric_min_eigenvalue
from mgrkit.oracle import mgr_oracle, negative_type_check
from mgrkit.solver import (
    AT_LEAST_P_MAX,
    DET_CM,
    DET_GRAM,
    EIG_GRAM,
    FOUND,
    INNER_PRODUCT_ZERO,
    SANCHEZ,
    UNDETERMINED,
    SolverConfig,
    mgr_compute,
    sanchez_evaluate,
)
from mgrkit.space import gramian, p_distance_matrix
from mgrkit.suites import cm_gram_suite, hamming_suite, lemma_suite, metric_corpus

from conftest import ACCEPTANCE_LINES

P_MAX = 32.0


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def metric_results():
    """Criterion-7 corpus: 50 seeded random metrics, orders 3..10, all four methods."""
    rows = []
    for seed, space in metric_corpus(50, seed=1000):
        results = {m: mgr_compute(space, method=m) for m in (EIG_GRAM, DET_CM, DET_GRAM, SANCHEZ)}
        rows.append((seed, space, results))
    return rows


def test_c01_path_closed_form():
    start = time.perf_counter()
    result = mgr_compute(family("path_n", {"n": 3}))
    elapsed = time.perf_counter() - start
    err = abs(result.value - 2.0) if result.status == FOUND else math.inf
    record(1, "mgr(P_3) = 2", err <= 1e-6 and elapsed < 1.0, f"|value-2|={err:.2e}, {elapsed * 1e3:.1f} ms")


def test_c02_hamming_square():
    subset = make_subset(["00", "10", "01", "11"])
    start = time.perf_counter()
    result = mgr_compute(hamming_to_space(subset))
    elapsed = time.perf_counter() - start
    cycle = mgr_compute(family("cycle_n", {"n": 4}))
    err = max(abs(result.value - 1.0), abs(cycle.value - 1.0))
    dependent = not murugan_criterion(subset).affinely_independent
    ok = err <= 1e-6 and elapsed < 1.0 and dependent
    record(2, "mgr({0,e1,e2,e1+e2}) = 1", ok, f"|value-1|={err:.2e}, dependent={dependent}, {elapsed * 1e3:.1f} ms")


def test_c03_unbounded_cases():
    spaces = [family("complete_n", {"n": k}) for k in range(3, 11)]
    spaces.append(euclidean_space([0.0, 1.0]))
    spaces.append(euclidean_space([0.0, 3.7]))
    statuses = [mgr_compute(s, p_max=P_MAX).status for s in spaces]
    ok = all(s == AT_LEAST_P_MAX for s in statuses)
    record(3, "equilateral (3-10 points) and two-point spaces unbounded", ok, f"{statuses.count(AT_LEAST_P_MAX)}/{len(statuses)} at_least_p_max")


def test_c04_cm_gram_identity():
    start = time.perf_counter()
    out = cm_gram_suite(count=110, seed=0)
    elapsed = time.perf_counter() - start
    ok = out.ok and out.passed == 110 * 6 and elapsed < 30.0
    record(4, "Cayley-Menger/Gramian determinant identity", ok, f"{out.passed} points, worst {out.worst:.2e} <= 1e-9, {elapsed:.2f} s")


def test_c05_lemma_identity():
    out = lemma_suite(count=110, seed=0)
    ok = out.ok and out.passed > 0
    record(5, "det(M_p) = -det(D_p)<D_p^-1 1,1>", ok, f"{out.passed} checked, {out.skipped} singular, worst {out.worst:.2e} <= 1e-8")


def test_c06_hamming_exact_identity():
    start = time.perf_counter()
    out = hamming_suite(count=200, seed=0, exhaustive=True)
    elapsed = time.perf_counter() - start
    ok = out.ok and elapsed < 60.0
    record(6, "Hamming det(M_1) identity (exact)", ok, f"{out.passed} subsets equal, {out.failed} unequal, {elapsed:.2f} s")


def _d_singular_before(space, result):
    grid = [p for p in SolverConfig().grid() if p < result.value]
    return any(not sanchez_evaluate(space, p).dp_invertible for p in grid)


def test_c07_method_agreement(metric_results):
    found = 0
    worst = 0.0
    sanchez_checked = 0
    sanchez_worst = 0.0
    ok = True
    for _seed, space, res in metric_results:
        core = [res[m] for m in (EIG_GRAM, DET_CM, DET_GRAM)]
        if not all(r.status == FOUND for r in core):
            ok = ok and all(r.status == core[0].status for r in core)
            continue
        found += 1
        vals = [r.value for r in core]
        worst = max(worst, max(vals) - min(vals))
        if not _d_singular_before(space, res[EIG_GRAM]):
            sanchez_checked += 1
            s = res[SANCHEZ]
            gap = abs(s.value - res[EIG_GRAM].value) if s.status == FOUND else math.inf
            sanchez_worst = max(sanchez_worst, gap)
    ok = ok and found > 0 and worst <= 1e-6 and sanchez_worst <= 1e-6
    record(
        7,
        "eig-gram / det-cm / det-gram / sanchez agree",
        ok,
        f"{found}/50 found, spread {worst:.2e}; sanchez on {sanchez_checked}, gap {sanchez_worst:.2e} (tol 1e-6)",
    )


def test_c08_oracle_bracketing(metric_results):
    bad = []
    checked = 0
    for seed, space, res in metric_results:
        r = res[EIG_GRAM]
        if r.status != FOUND:
            continue
        checked += 1
        v = r.value
        below = negative_type_check(space, v - 0.05).holds
        above = negative_type_check(space, v + 0.05).holds if v + 0.05 <= P_MAX else False
        lo, hi = mgr_oracle(space, p_max=P_MAX)
        if not (below and not above and lo <= v <= hi):
            bad.append(seed)
    record(8, "negative-type oracle brackets every root", not bad and checked > 0, f"{checked} roots checked, failures at seeds {bad}")


def test_c09_dichotomy(metric_results):
    labels = [res[EIG_GRAM].dichotomy for _, _, res in metric_results if res[EIG_GRAM].status == FOUND]
    p3 = mgr_compute(family("path_n", {"n": 3})).dichotomy
    ok = labels and UNDETERMINED not in labels and p3 == INNER_PRODUCT_ZERO
    counts = {k: labels.count(k) for k in sorted(set(labels))}
    record(9, "dichotomy never undetermined; P_3 inner_product_zero", bool(ok), f"{counts}, P_3 -> {p3}")


def test_c10_literature_sanity():
    eig = []
    for seed in range(30):
        space = random_euclidean(4 + seed % 9, 2, seed)
        eig.append(symmetric_min_eigenvalue(gramian(p_distance_matrix(space, 2.0))))
    trees = [negative_type_check(graph_to_space(random_tree(2 + seed % 11, seed)), 1.0).holds for seed in range(30)]
    ok = min(eig) >= -1e-9 and all(trees)
    record(10, "Euclidean lambda_min(G_2) >= -1e-9; trees of 1-negative type", ok, f"min lambda {min(eig):.2e}, trees {sum(trees)}/30")
