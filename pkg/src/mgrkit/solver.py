"""Maximal generalised roundness of a finite space.

The mgr of a finite space with finite mgr is the smallest p > 0 at which
det(M_p) (equivalently det(G_p)) vanishes. Below that exponent G_p is positive
definite, so the default method tracks the smallest eigenvalue of G_p along a
p-grid and bisects the first sign change. The determinant methods and the
older two-quantity criterion (det(D_p) = 0 or <D_p^{-1} 1, 1> = 0) are kept as
alternatives and for cross-checking.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import InvalidArgument, SingularMatrixError
from .numerics import SignLogDet, det_sign_log, solve_linear, symmetric_eigh, symmetric_min_eigenvalue
from .space import MetricSpace, cayley_menger_det, cm_gram_sign, gramian, p_distance_matrix

EIG_GRAM = "eig-gram"
DET_CM = "det-cm"
DET_GRAM = "det-gram"
SANCHEZ = "sanchez"
METHODS = (EIG_GRAM, DET_CM, DET_GRAM, SANCHEZ)

FOUND = "found"
AT_LEAST_P_MAX = "at_least_p_max"
BELOW_P_MIN = "below_p_min"

D_SINGULAR = "D_singular"
INNER_PRODUCT_ZERO = "inner_product_zero"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SolverConfig:
    method: str = EIG_GRAM
    p_min: float = 1e-3
    p_max: float = 32.0
    scan_step: float = 0.05
    tol: float = 1e-9
    zero_tol: float = 1e-7
    threads: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidArgument(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        for name in ("p_min", "p_max", "scan_step", "tol", "zero_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidArgument(f"{name} must be a positive finite number, got {value!r}")
        if not self.p_min < self.p_max:
            raise InvalidArgument(f"need p_min < p_max, got {self.p_min} >= {self.p_max}")
        if self.threads < 1:
            raise InvalidArgument("threads must be at least 1")

    def grid(self) -> list[float]:
        count = int(math.floor((self.p_max - self.p_min) / self.scan_step + 1e-9))
        pts = [self.p_min + k * self.scan_step for k in range(count + 1)]
        if self.p_max - pts[-1] > 1e-12:
            pts.append(self.p_max)
        return pts


@dataclass
class MgrResult:
    status: str
    method: str
    value: Optional[float] = None
    bracket: Optional[tuple[float, float]] = None
    dichotomy: Optional[str] = None
    crossing: Optional[str] = None
    warning: bool = False
    tangent: Optional[dict] = None
    diagnostics: list[tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["bracket"] = list(self.bracket) if self.bracket else None
        out["diagnostics"] = [[p, _json_float(q)] for p, q in self.diagnostics]
        return out


def _json_float(x: float):
    return x if math.isfinite(x) else None


@dataclass(frozen=True)
class SanchezEvaluation:
    p: float
    det_dp: SignLogDet
    inner_product: Optional[float]

    @property
    def dp_invertible(self) -> bool:
        return self.inner_product is not None


def sanchez_evaluate(space: MetricSpace, p: float) -> SanchezEvaluation:
    """det(D_p) and <D_p^{-1} 1, 1> at exponent ``p``."""
    d_p = p_distance_matrix(space, p)
    det = det_sign_log(d_p)
    ones = np.ones(d_p.shape[0])
    try:
        inner = float(ones @ solve_linear(d_p, ones))
    except SingularMatrixError:
        inner = None
    if det.sign == 0:
        inner = None
    return SanchezEvaluation(float(p), det, inner)


def lemma_residual(space: MetricSpace, p: float) -> Optional[float]:
    """Relative gap in det(M_p) = -det(D_p) <D_p^{-1} 1, 1>; None if D_p is singular."""
    ev = sanchez_evaluate(space, p)
    if not ev.dp_invertible:
        return None
    det_m = cayley_menger_det(p_distance_matrix(space, p)).value
    rhs = -ev.det_dp.value * ev.inner_product
    scale = max(abs(det_m), abs(rhs))
    return 0.0 if scale == 0.0 else abs(det_m - rhs) / scale


# --- sampled quantities -------------------------------------------------------
# Each returns (positive, diagnostic value). "positive" is True strictly below
# the mgr.


def _eig_gram(space: MetricSpace) -> Callable[[float], tuple[bool, float]]:
    def f(p):
        lam = symmetric_min_eigenvalue(gramian(p_distance_matrix(space, p)))
        return lam > 0, lam

    return f


def _det_cm(space: MetricSpace) -> Callable[[float], tuple[bool, float]]:
    sign = cm_gram_sign(space.n)

    def f(p):
        det = cayley_menger_det(p_distance_matrix(space, p))
        return sign * det.sign > 0, det.value

    return f


def _det_gram(space: MetricSpace) -> Callable[[float], tuple[bool, float]]:
    def f(p):
        det = det_sign_log(gramian(p_distance_matrix(space, p)))
        return det.sign > 0, det.value

    return f


def _sanchez(space: MetricSpace, base_sign: int) -> Callable[[float], tuple[bool, float]]:
    def f(p):
        ev = sanchez_evaluate(space, p)
        if ev.det_dp.sign != base_sign or not ev.dp_invertible:
            return False, ev.det_dp.value
        return ev.inner_product > 0, ev.inner_product

    return f


def _evaluate_grid(f, grid, threads):
    """Yield ``(index, p, (positive, value))`` in grid order."""
    if threads <= 1:
        for k, p in enumerate(grid):
            yield k, p, f(p)
        return
    chunk = 4 * threads
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(grid), chunk):
            block = grid[start : start + chunk]
            for offset, res in enumerate(pool.map(f, block)):
                yield start + offset, block[offset], res


def _bisect(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid)[0]:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _scaled_min_eig(space: MetricSpace, p: float) -> float:
    g = gramian(p_distance_matrix(space, p))
    scale = float(np.max(np.abs(g)))
    return symmetric_min_eigenvalue(g) / scale if scale > 0 else 0.0


def _tangent_probe(space, grid, config) -> Optional[dict]:
    scaled = [_scaled_min_eig(space, p) for p in grid]
    k = int(np.argmin(scaled))
    if scaled[k] >= config.zero_tol:
        return None
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    if hi > lo:
        res = minimize_scalar(
            lambda p: _scaled_min_eig(space, p), bounds=(lo, hi), method="bounded", options={"xatol": config.tol}
        )
        p_star, value = float(res.x), float(res.fun)
    else:
        p_star, value = grid[k], scaled[k]
    return {"p": p_star, "scaled_min_eigenvalue": value}


def mgr_compute(space: MetricSpace, config: SolverConfig | None = None, **overrides) -> MgrResult:
    """Smallest p in ``[p_min, p_max]`` at which the chosen quantity stops being positive.

    Keyword overrides are applied on top of ``config`` (or the defaults).
    """
    if config is None:
        config = SolverConfig(**overrides)
    elif overrides:
        config = SolverConfig(**{**asdict(config), **overrides})

    if space.n == 0:
        # one point: no Gramian, no root; reported as unbounded by convention
        return MgrResult(AT_LEAST_P_MAX, config.method)

    if config.method == EIG_GRAM:
        f = _eig_gram(space)
    elif config.method == DET_CM:
        f = _det_cm(space)
    elif config.method == DET_GRAM:
        f = _det_gram(space)
    else:
        base = sanchez_evaluate(space, config.p_min)
        if base.det_dp.sign == 0 or not base.dp_invertible or base.inner_product <= 0:
            return MgrResult(BELOW_P_MIN, config.method, bracket=(0.0, config.p_min))
        f = _sanchez(space, base.det_dp.sign)

    grid = config.grid()
    diagnostics = []
    crossing_at = None
    for k, p, (positive, value) in _evaluate_grid(f, grid, config.threads):
        diagnostics.append((p, float(value)))
        if not positive:
            crossing_at = k
            break

    if crossing_at == 0:
        return MgrResult(BELOW_P_MIN, config.method, bracket=(0.0, config.p_min), diagnostics=diagnostics)

    if crossing_at is None:
        result = MgrResult(AT_LEAST_P_MAX, config.method, diagnostics=diagnostics)
        if config.method == EIG_GRAM:
            probe = _tangent_probe(space, grid, config)
            if probe is not None:
                result.warning = True
                result.tangent = probe
        return result

    lo, hi = _bisect(f, grid[crossing_at - 1], grid[crossing_at], config.tol)
    value = 0.5 * (lo + hi)
    crossing = None
    if config.method == SANCHEZ:
        ev = sanchez_evaluate(space, hi)
        crossing = "det_D" if ev.det_dp.sign != base.det_dp.sign or not ev.dp_invertible else "inner_product"
    return MgrResult(
        FOUND,
        config.method,
        value=value,
        bracket=(lo, hi),
        dichotomy=classify_dichotomy(space, value, config.zero_tol),
        crossing=crossing,
        diagnostics=diagnostics,
    )


def classify_dichotomy(space: MetricSpace, p_root: float, zero_tol: float = 1e-7) -> str:
    """Which case of the dichotomy holds at a computed root.

    Both vanishing tests are first-order: a quantity counts as zero at
    ``p_root`` when a Newton step ``|f / f'|`` along p is at most
    ``zero_tol * max(1, p_root)``, which keeps the decision independent of the
    distance scale and of how steeply the quantity moves near the root.

    * ``D_singular``: the eigenvalue of D_p closest to zero vanishes and its
      eigenvector has zero coordinate sum.
    * ``inner_product_zero``: D_p is invertible and <D_p^{-1} 1, 1> vanishes.
    """
    d_p = p_distance_matrix(space, p_root)
    d_dot = d_p * np.log(np.where(d_p > 0, space.distances, 1.0))
    p_tol = zero_tol * max(1.0, p_root)

    w, v = symmetric_eigh(d_p)
    k = int(np.argmin(np.abs(w)))
    kernel = v[:, k]
    slope = float(kernel @ d_dot @ kernel)
    if abs(w[k]) <= p_tol * abs(slope) and abs(kernel.sum()) <= zero_tol * np.linalg.norm(kernel):
        return D_SINGULAR

    ones = np.ones(d_p.shape[0])
    try:
        u = solve_linear(d_p, ones)
    except SingularMatrixError:
        return UNDETERMINED
    inner = float(u.sum())
    inner_slope = -float(u @ d_dot @ u)
    if abs(inner) <= p_tol * abs(inner_slope):
        return INNER_PRODUCT_ZERO
    return UNDETERMINED


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("MGRKIT_THREADS", "1")))
    except ValueError:
        return 1
