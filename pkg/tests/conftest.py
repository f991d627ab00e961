import numpy as np
import pytest

from mgrkit.generators import euclidean_space, family
from mgrkit.hamming import hamming_to_space, make_subset


@pytest.fixture
def p3():
    return family("path_n", {"n": 3})


@pytest.fixture
def c4():
    return family("cycle_n", {"n": 4})


@pytest.fixture
def square_subset():
    return make_subset(["00", "10", "01", "11"])


@pytest.fixture
def two_point():
    return euclidean_space([0.0, 1.0])


def leibniz_det(a):
    """Exact determinant by permutation expansion (test oracle only)."""
    from itertools import permutations

    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= a[i][perm[i]]
        total += term
    return total


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
