"""Reading and writing spaces in the supported file formats.

csv      rows of comma-separated distances
json     {"labels": [...], "distances": [[...]], "metric_kind": "metric"}
graph    header "n m", then m lines "u v [w]" (0-indexed vertices)
hamming  one 0/1 string per line, all of the same length
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

import numpy as np

from .exceptions import ParseError
from .generators import GraphSpec, graph_to_space
from .hamming import HammingSubset, hamming_to_space, make_subset
from .space import METRIC, MetricSpace, validate_space

FORMATS = ("csv", "json", "graph", "hamming")


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in FORMATS:
        return suffix
    if suffix == "txt":
        return "csv"
    raise ParseError(f"cannot infer the format of {path}; pass --format")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_csv(text: str, metric_kind: str = METRIC) -> MetricSpace:
    rows = []
    for lineno, line in _content_lines(text):
        fields = next(csv.reader(io.StringIO(line)))
        try:
            rows.append([float(x) for x in fields])
        except ValueError as exc:
            raise ParseError(f"not a number ({exc})", lineno) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} values, found {len(rows[-1])}", lineno)
    if not rows:
        raise ParseError("empty distance matrix")
    if len(rows) != len(rows[0]):
        raise ParseError(f"matrix has {len(rows)} rows but {len(rows[0])} columns")
    return validate_space(None, np.array(rows), metric_kind)


def parse_json(text: str, metric_kind: str | None = None) -> MetricSpace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(obj, dict) or "distances" not in obj:
        raise ParseError('expected an object with a "distances" array')
    d = obj["distances"]
    if not isinstance(d, list) or not all(isinstance(r, list) and len(r) == len(d) for r in d):
        raise ParseError('"distances" must be a square array')
    try:
        arr = np.array(d, dtype=float)
    except (TypeError, ValueError):
        raise ParseError('"distances" has non-numeric entries') from None
    kind = metric_kind or obj.get("metric_kind", METRIC)
    return validate_space(obj.get("labels"), arr, kind)


def parse_graph(text: str) -> MetricSpace:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header line 'n m'")
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise ParseError("header must be 'n m'", lineno) from None
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}", lineno)
    edges = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError("edge line must be 'u v [w]'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError("bad edge line", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        edges.append((u, v, w))
    return graph_to_space(GraphSpec(n, edges))


def parse_hamming(text: str) -> HammingSubset:
    points = []
    width = None
    for lineno, line in _content_lines(text):
        if set(line) - {"0", "1"}:
            raise ParseError("point must be a 0/1 string", lineno)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ParseError(f"expected length {width}, found {len(line)}", lineno)
        points.append([int(c) for c in line])
    if not points:
        raise ParseError("no points")
    return make_subset(points)


def parse_input(path: str | Path, fmt: str | None = None, metric_kind: str | None = None):
    """Read a file; returns a MetricSpace, or a HammingSubset for ``hamming``."""
    fmt = fmt or guess_format(path)
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "csv":
        return parse_csv(text, metric_kind or METRIC)
    if fmt == "json":
        return parse_json(text, metric_kind)
    if fmt == "graph":
        return parse_graph(text)
    if fmt == "hamming":
        return parse_hamming(text)
    raise ParseError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def as_space(obj) -> MetricSpace:
    return hamming_to_space(obj) if isinstance(obj, HammingSubset) else obj


def space_to_json(space: MetricSpace, extra: dict | None = None) -> dict:
    out = {
        "schema": 1,
        "labels": list(space.labels),
        "distances": space.distances.tolist(),
        "metric_kind": space.metric_kind,
    }
    out.update(extra or {})
    return out


def digest(space: MetricSpace) -> str:
    """SHA-256 of the distance matrix as little-endian float64, prefixed by its order."""
    d = np.ascontiguousarray(space.distances, dtype="<f8")
    h = hashlib.sha256()
    h.update(str(d.shape[0]).encode())
    h.update(d.tobytes())
    return h.hexdigest()
