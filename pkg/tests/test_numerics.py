import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mgrkit.exceptions import InvalidArgument, SingularMatrixError
from mgrkit.numerics import (
    det_exact_integer,
    det_sign_log,
    solve_linear,
    symmetric_eigh,
    symmetric_min_eigenvalue,
)

from conftest import leibniz_det


def test_det_sign_log_identity():
    d = det_sign_log(np.eye(3))
    assert d.sign == 1
    assert d.log_magnitude == pytest.approx(0.0, abs=1e-15)


def test_det_sign_log_hand_value():
    d = det_sign_log([[2, 1], [1, 2]])
    assert d.sign == 1
    assert d.log_magnitude == pytest.approx(math.log(3.0))


def test_det_sign_log_negative_and_swaps():
    # one row swap, positive pivots
    d = det_sign_log([[0, 1], [1, 0]])
    assert (d.sign, d.value) == (-1, pytest.approx(-1.0))


@pytest.mark.parametrize("m", [[[1, 1], [1, 1]], np.zeros((3, 3)), [[1e-20, 0], [0, 1.0]]])
def test_det_sign_log_singular(m):
    assert det_sign_log(m).sign == 0


@pytest.mark.parametrize("bad", [np.ones((2, 3)), [[1.0, np.nan], [0.0, 1.0]], [1.0, 2.0]])
def test_det_sign_log_rejects(bad):
    with pytest.raises(InvalidArgument):
        det_sign_log(bad)


def test_det_exact_integer_examples():
    assert det_exact_integer(np.eye(4, dtype=int)) == 1
    assert det_exact_integer([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == 2
    m1 = [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 2], [1, 1, 2, 0]]
    assert leibniz_det(m1) == -4
    assert det_exact_integer(m1) == -4


def test_det_exact_integer_needs_pivoting():
    m = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert det_exact_integer(m) == leibniz_det(m) == -1


def test_det_exact_integer_big_values_are_exact():
    m = [[10**20 + 1, 10**20], [10**20, 10**20 - 1]]
    assert det_exact_integer(m) == -1


def test_det_exact_integer_rejects():
    with pytest.raises(InvalidArgument):
        det_exact_integer([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(InvalidArgument):
        det_exact_integer([[1.5]])


int_matrices = st.integers(1, 8).flatmap(
    lambda n: arrays(np.int64, (n, n), elements=st.integers(-9, 9))
)


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_float_and_exact_determinants_agree(m):
    exact = det_exact_integer(m.tolist())
    approx = det_sign_log(m.astype(float))
    if exact == 0:
        # rank-deficient integer matrices should be flagged or tiny
        assert approx.sign == 0 or abs(approx.value) < 1e-6
    else:
        assert approx.sign == (1 if exact > 0 else -1)
        assert approx.value == pytest.approx(exact, rel=1e-9)


def test_small_exact_against_leibniz():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(1, 6))
        m = rng.integers(-9, 10, size=(n, n)).tolist()
        assert det_exact_integer(m) == leibniz_det(m)


@pytest.mark.parametrize(
    "m, expected",
    [([[1, 0.5], [0.5, 1]], 0.5), (np.eye(5), 1.0), ([[1, 2], [2, 1]], -1.0)],
)
def test_symmetric_min_eigenvalue_examples(m, expected):
    assert symmetric_min_eigenvalue(m) == pytest.approx(expected, abs=1e-12)


def test_symmetric_min_eigenvalue_rejects_asymmetric():
    with pytest.raises(InvalidArgument):
        symmetric_min_eigenvalue([[1, 2], [0, 1]])


def test_jacobi_matches_lapack_and_is_deterministic():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 7, 12):
        a = rng.normal(size=(n, n))
        a = a + a.T
        w, v = symmetric_eigh(a)
        scale = 1 + np.max(np.abs(a))
        assert np.max(np.abs(w - np.linalg.eigvalsh(a))) <= 1e-10 * scale
        assert np.allclose(v.T @ v, np.eye(n), atol=1e-12)
        assert np.max(np.abs(a @ v - v * w)) <= 1e-10 * scale
        w2, v2 = symmetric_eigh(a.copy())
        assert np.array_equal(w, w2) and np.array_equal(v, v2)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_psd_min_eigenvalue_non_negative(n, k, seed):
    a = np.random.default_rng(seed).normal(size=(n, k))
    g = a @ a.T
    assert symmetric_min_eigenvalue(g) >= -1e-10 * (1 + np.max(np.abs(g)))


def test_solve_linear_examples():
    assert np.allclose(solve_linear(np.eye(2), [3, 4]), [3, 4])
    assert np.allclose(solve_linear([[2, 0], [0, 4]], [2, 4]), [1, 1])
    with pytest.raises(SingularMatrixError):
        solve_linear([[1, 1], [1, 1]], [1, 2])
    with pytest.raises(InvalidArgument):
        solve_linear(np.eye(2), [1, 2, 3])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_solve_linear_round_trip(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + n * np.eye(n)
    b = rng.normal(size=n)
    x = solve_linear(a, b)
    assert np.linalg.norm(a @ x - b) <= 1e-8 * np.linalg.norm(b) + 1e-300
