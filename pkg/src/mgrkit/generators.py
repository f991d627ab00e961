"""Test spaces: graph path metrics, classic families and seeded random spaces.

Random generation contract
--------------------------
Every seeded generator draws from ``numpy.random.Generator(PCG64(seed))`` and
consumes only ``Generator.random()`` (one 53-bit double per call). Integers in
``[0, k)`` are taken as ``floor(k * u)``. Draw order is documented on each
function, so a corpus is reproducible from its seed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .exceptions import InvalidArgument
from .hamming import HammingSubset, make_subset
from .space import METRIC, SEMI_METRIC, MetricSpace, triangle_violations, validate_space


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _randint(rng: np.random.Generator, k: int) -> int:
    return min(int(math.floor(k * rng.random())), k - 1)


@dataclass
class GraphSpec:
    """Undirected weighted graph on vertices ``0..vertex_count-1``.

    Parallel edges are merged keeping the smallest weight.
    """

    vertex_count: int
    edges: list[tuple[int, int, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidArgument("graph needs at least one vertex")
        merged: dict[tuple[int, int], float] = {}
        for edge in self.edges:
            u, v = int(edge[0]), int(edge[1])
            w = float(edge[2]) if len(edge) > 2 else 1.0
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidArgument(f"edge ({u}, {v}) out of range")
            if u == v:
                raise InvalidArgument(f"self-loop at vertex {u}")
            if not w > 0 or not math.isfinite(w):
                raise InvalidArgument(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (min(u, v), max(u, v))
            merged[key] = min(w, merged.get(key, math.inf))
        self.edges = [(u, v, w) for (u, v), w in sorted(merged.items())]

    @property
    def connected(self) -> bool:
        return bool(np.all(np.isfinite(self.path_lengths())))

    def path_lengths(self) -> np.ndarray:
        adj = np.zeros((self.vertex_count, self.vertex_count))
        for u, v, w in self.edges:
            adj[u, v] = adj[v, u] = w
        return shortest_path(adj, method="FW", directed=False)


def graph_to_space(spec: GraphSpec) -> MetricSpace:
    """Shortest-path metric of a connected graph."""
    d = spec.path_lengths()
    if not np.all(np.isfinite(d)):
        raise InvalidArgument("graph is disconnected; the path metric is undefined")
    return validate_space(None, d, METRIC)


def path_graph(n: int) -> GraphSpec:
    return GraphSpec(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def cycle_graph(n: int) -> GraphSpec:
    if n < 3:
        raise InvalidArgument("a cycle needs at least 3 vertices")
    return GraphSpec(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def complete_graph(n: int) -> GraphSpec:
    return GraphSpec(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> GraphSpec:
    """Star on ``n`` vertices with centre 0."""
    return GraphSpec(n, [(0, i, 1.0) for i in range(1, n)])


def random_tree(n: int, seed: int) -> GraphSpec:
    """Random recursive tree: vertex ``i`` attaches to ``floor(i * u_i)``."""
    rng = make_rng(seed)
    return GraphSpec(n, [(_randint(rng, i), i, 1.0) for i in range(1, n)])


def random_hamming(n: int, m: int, seed: int) -> HammingSubset:
    """Zero plus ``m`` distinct nonzero points of ``{0,1}^n``.

    Each candidate consumes ``n`` draws (bit ``k`` set when ``u < 0.5``);
    zero or repeated candidates are discarded.
    """
    if n < 1 or m < 0:
        raise InvalidArgument("need n >= 1 and m >= 0")
    if m > 2**n - 1:
        raise InvalidArgument(f"H_{n} has only {2**n - 1} nonzero points")
    rng = make_rng(seed)
    seen = {(0,) * n}
    points = [(0,) * n]
    while len(points) < m + 1:
        candidate = tuple(int(rng.random() < 0.5) for _ in range(n))
        if candidate not in seen:
            seen.add(candidate)
            points.append(candidate)
    return make_subset(points)


def random_semimetric(
    n: int,
    seed: int,
    low: float = 0.5,
    high: float = 2.0,
    metric: bool = False,
    max_tries: int = 10_000,
) -> MetricSpace:
    """Space on ``n + 1`` points with i.i.d. uniform distances in ``[low, high]``.

    The upper triangle is filled row by row, one draw per entry. With
    ``metric=True`` whole matrices are redrawn from the same stream until the
    triangle inequality holds.
    """
    if n < 1:
        raise InvalidArgument("n must be at least 1")
    if not 0 < low <= high:
        raise InvalidArgument(f"need 0 < low <= high, got [{low}, {high}]")
    rng = make_rng(seed)
    size = n + 1
    iu = np.triu_indices(size, 1)
    for _ in range(max_tries):
        d = np.zeros((size, size))
        d[iu] = [low + (high - low) * rng.random() for _ in range(len(iu[0]))]
        d = d + d.T
        if not metric or not triangle_violations(d):
            return validate_space(None, d, METRIC if metric else SEMI_METRIC)
    raise InvalidArgument(f"no metric sample within {max_tries} tries; widen the distribution")


def euclidean_space(points) -> MetricSpace:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    d = np.sqrt(np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1))
    return validate_space(None, d, METRIC)


def random_euclidean(n: int, dim: int, seed: int) -> MetricSpace:
    """``n + 1`` uniform points in ``[0, 1]^dim``, drawn point by point."""
    if n < 1 or dim < 1:
        raise InvalidArgument("need n >= 1 and dim >= 1")
    rng = make_rng(seed)
    pts = [[rng.random() for _ in range(dim)] for _ in range(n + 1)]
    return euclidean_space(pts)


FAMILIES = ("path_n", "cycle_n", "complete_n", "star_n", "random_tree_n", "hamming_random")


def family(name: str, params: dict | None = None, seed: int = 0) -> MetricSpace | HammingSubset:
    """Named test family.

    ``params`` keys: ``n`` (vertex count, or cube dimension for
    ``hamming_random``) and ``m`` (number of nonzero points, hamming only).
    """
    params = dict(params or {})
    builders = {
        "path_n": path_graph,
        "cycle_n": cycle_graph,
        "complete_n": complete_graph,
        "star_n": star_graph,
    }
    if name in builders:
        return graph_to_space(builders[name](int(params["n"])))
    if name == "random_tree_n":
        return graph_to_space(random_tree(int(params["n"]), seed))
    if name == "hamming_random":
        return random_hamming(int(params["n"]), int(params["m"]), seed)
    raise InvalidArgument(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
