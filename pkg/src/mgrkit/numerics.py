"""Small dense linear algebra used by the solver.

Everything here is a pure function of its inputs. Matrices are expected to be
of modest order (tens of rows at most).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .exceptions import InvalidArgument, SingularMatrixError

SINGULAR_TOL = 1e-12
SYMMETRY_TOL = 1e-12

_JACOBI_MAX_SWEEPS = 60
_JACOBI_OFF_TOL = 1e-15


@dataclass(frozen=True)
class SignLogDet:
    """Determinant stored as ``sign * exp(log_magnitude)``.

    ``sign == 0`` means the matrix was judged singular; ``log_magnitude`` is
    then ``-inf`` and carries no information.
    """

    sign: int
    log_magnitude: float

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)


def _as_square(matrix, name="matrix") -> np.ndarray:
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument(f"{name} has non-finite entries")
    return a


def _lu(a: np.ndarray, singular_tol: float):
    """Pivoted LU plus a flag telling whether any pivot is below threshold."""
    with warnings.catch_warnings():
        # exact zero pivots are reported through the threshold test instead
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    scale = float(np.max(np.abs(a)))
    pivots = np.diag(lu)
    singular = scale == 0.0 or bool(np.any(np.abs(pivots) < singular_tol * scale))
    return lu, piv, singular


def det_sign_log(matrix, singular_tol: float = SINGULAR_TOL) -> SignLogDet:
    """Determinant of a square matrix via LU with partial pivoting.

    The sign collects the row interchanges and the signs of the pivots. If any
    pivot is smaller than ``singular_tol * max|a_ij|`` the matrix is reported
    as singular (sign 0).
    """
    a = _as_square(matrix)
    if a.shape[0] == 0:
        return SignLogDet(1, 0.0)
    lu, piv, singular = _lu(a, singular_tol)
    if singular:
        return SignLogDet(0, -math.inf)
    pivots = np.diag(lu)
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    negative = int(np.count_nonzero(pivots < 0))
    sign = -1 if (swaps + negative) % 2 else 1
    return SignLogDet(sign, float(np.sum(np.log(np.abs(pivots)))))


def det_exact_integer(matrix) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidArgument("matrix must be square")
    a = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, (bool, np.bool_)) or not float(x).is_integer():
                raise InvalidArgument(f"non-integer entry {x!r}")
            row.append(int(x))
        a.append(row)
    if n == 0:
        return 1

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _check_symmetric(a: np.ndarray) -> None:
    if a.size and float(np.max(np.abs(a - a.T))) > SYMMETRY_TOL:
        raise InvalidArgument("matrix is not symmetric")


def symmetric_eigh(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs ``(p, q)`` in row-major order, so the result is
    bit-for-bit reproducible for a given input. Returns ascending eigenvalues
    and the matching orthonormal eigenvectors as columns.
    """
    a = _as_square(matrix)
    _check_symmetric(a)
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    if n == 0:
        return np.empty(0), v

    fro = float(np.linalg.norm(a))
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= _JACOBI_OFF_TOL * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def symmetric_min_eigenvalue(matrix) -> float:
    """Smallest eigenvalue of a symmetric matrix (``inf`` for an empty one)."""
    w, _ = symmetric_eigh(matrix)
    return float(w[0]) if w.size else math.inf


def solve_linear(matrix, rhs, singular_tol: float = SINGULAR_TOL) -> np.ndarray:
    """Solve ``matrix @ x = rhs`` with the same pivoted LU as :func:`det_sign_log`.

    Raises :class:`SingularMatrixError` when a pivot is below threshold.
    """
    a = _as_square(matrix)
    b = np.asarray(rhs, dtype=float)
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise InvalidArgument(f"rhs length {b.shape} does not match matrix order {a.shape[0]}")
    if a.shape[0] == 0:
        return np.empty(0)
    lu, piv, singular = _lu(a, singular_tol)
    if singular:
        raise SingularMatrixError("matrix is numerically singular")
    return lu_solve((lu, piv), b, check_finite=False)
