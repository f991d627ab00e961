"""Command-line front end.

    mgrkit compute  --input space.csv
    mgrkit verify   --input graph.txt --format graph
    mgrkit identity-suite --seed 0
    mgrkit generate --family cycle_n --n 6

Reports are JSON on stdout (or ``--output``); log messages go to stderr.
Exit status: 0 success, 1 invalid input, 2 numerical failure or ambiguity.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from contextlib import contextmanager

import numpy as np

from . import __version__
from .exceptions import InvalidArgument, ParseError, ValidationError
from .generators import FAMILIES, family, random_euclidean, random_semimetric
from .hamming import HammingSubset, murugan_criterion, theorem12_check
from .io import FORMATS, as_space, digest, parse_input, space_to_json
from .oracle import mgr_oracle, negative_type_check
from .solver import FOUND, METHODS, UNDETERMINED, SolverConfig, default_threads, lemma_residual, mgr_compute
from .space import METRIC_KINDS, check_cm_gram_identity, p_matrices
from .suites import SUITE_PS, run_all

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2

log = logging.getLogger("mgrkit")


@contextmanager
def _timed(timing: dict, phase: str):
    start = time.perf_counter()
    yield
    timing[phase] = round(1000.0 * (time.perf_counter() - start), 3)


def _solver_args(p: argparse.ArgumentParser) -> None:
    d = SolverConfig()
    p.add_argument("--input", required=True, help="path to the input space")
    p.add_argument("--format", choices=FORMATS, help="input format (default: from file suffix)")
    p.add_argument("--metric-kind", choices=METRIC_KINDS, help="override the metric kind of csv/json input")
    p.add_argument("--method", choices=METHODS, default=d.method)
    p.add_argument("--p-min", type=float, default=d.p_min)
    p.add_argument("--p-max", type=float, default=d.p_max)
    p.add_argument("--scan-step", type=float, default=d.scan_step)
    p.add_argument("--tol", type=float, default=d.tol)
    p.add_argument("--zero-tol", type=float, default=d.zero_tol)
    p.add_argument("--normalize", action="store_true", help="divide distances by the largest one first")
    p.add_argument("--verify", action="store_true", help="attach oracle and identity checks")
    p.add_argument("--strict", action="store_true", help="exit 2 on any numerical ambiguity")
    p.add_argument("--threads", type=int, default=None, help="grid workers (default: $MGRKIT_THREADS or 1)")
    p.add_argument("--output", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mgrkit", description="Maximal generalised roundness of finite metric spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    _solver_args(sub.add_parser("compute", help="compute the mgr of a space"))
    _solver_args(sub.add_parser("verify", help="compute and cross-check against the oracles"))

    suite = sub.add_parser("identity-suite", help="run the determinant identity suites on seeded corpora")
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--count", type=int, default=100, help="random semi-metric spaces")
    suite.add_argument("--hamming-count", type=int, default=200, help="random Hamming subsets")
    suite.add_argument("--output")

    gen = sub.add_parser("generate", help="emit a generated space as JSON")
    gen.add_argument("--family", required=True, choices=FAMILIES + ("random_semimetric", "random_euclidean"))
    gen.add_argument("--n", type=int, required=True, help="vertices, points minus one, or cube dimension")
    gen.add_argument("--m", type=int, help="nonzero points (hamming_random)")
    gen.add_argument("--dim", type=int, default=2, help="dimension (random_euclidean)")
    gen.add_argument("--low", type=float, default=0.5)
    gen.add_argument("--high", type=float, default=2.0)
    gen.add_argument("--metric", action="store_true", help="random_semimetric: reject non-metric samples")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output")
    return parser


def _write(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, allow_nan=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(space) -> dict:
    d = space.distances
    off = d[~np.eye(space.size, dtype=bool)]
    return {
        "size": space.size,
        "metric_kind": space.metric_kind,
        "max_distance": float(off.max()) if off.size else 0.0,
        "min_distance": float(off.min()) if off.size else 0.0,
    }


def _verification(space, result, config) -> dict:
    bracket = mgr_oracle(space, config.p_min, config.p_max, config.scan_step)
    out = {"oracle_bracket": [bracket[0], bracket[1] if math.isfinite(bracket[1]) else None]}
    consistent = True
    if result.status == FOUND:
        value = result.value
        contains = bracket[0] - config.tol <= value <= bracket[1] + config.tol
        below = negative_type_check(space, value - 0.05).holds if value - 0.05 > 0 else None
        above = negative_type_check(space, value + 0.05).holds if value + 0.05 <= config.p_max else None
        out.update(
            bracket_contains_value=contains,
            negative_type_below=below,
            negative_type_above=above,
            dichotomy=result.dichotomy,
        )
        consistent = contains and below is not False and above is not True
    else:
        consistent = math.isinf(bracket[1]) if result.status == "at_least_p_max" else bracket[0] == 0.0
    ps = list(SUITE_PS) + ([result.value] if result.status == FOUND else [])
    out["cm_gram_residuals"] = [[p, check_cm_gram_identity(p_matrices(space, p))] for p in ps]
    out["lemma_residuals"] = [[p, lemma_residual(space, p)] for p in ps]
    out["consistent"] = bool(consistent)
    return out


def _run_solver(args) -> tuple[dict, int]:
    timing: dict = {}
    with _timed(timing, "parse"):
        obj = parse_input(args.input, args.format, args.metric_kind)
        space = as_space(obj)
        if args.normalize:
            space = space.normalized()
    threads = args.threads if args.threads is not None else default_threads()
    config = SolverConfig(
        method=args.method,
        p_min=args.p_min,
        p_max=args.p_max,
        scan_step=args.scan_step,
        tol=args.tol,
        zero_tol=args.zero_tol,
        threads=threads,
    )
    with _timed(timing, "solve"):
        result = mgr_compute(space, config)
    log.info("%s: %s %s", args.input, result.status, result.value)

    report = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "input_digest": digest(space),
        "space_summary": {**_summary(space), "normalized": bool(args.normalize)},
        "config": {k: v for k, v in vars(config).items() if k != "threads"},
        "result": result.to_dict(),
    }
    if isinstance(obj, HammingSubset):
        with _timed(timing, "hamming"):
            check = theorem12_check(obj)
            report["hamming"] = {
                "n": obj.n,
                "m": obj.m,
                "cm_lhs": str(check.lhs),
                "cm_rhs": str(check.rhs),
                "identity_holds": check.equal,
                "affinely_independent": murugan_criterion(obj).affinely_independent,
            }

    verification = None
    if args.command == "verify" or args.verify:
        with _timed(timing, "verify"):
            verification = _verification(space, result, config)
        report["verification"] = verification
    report["timing_ms"] = timing

    code = EXIT_OK
    if args.strict:
        ambiguous = result.warning or result.dichotomy == UNDETERMINED
        if verification is not None and not verification["consistent"]:
            ambiguous = True
        if ambiguous:
            log.warning("numerical ambiguity detected (strict mode)")
            code = EXIT_NUMERIC
    elif result.warning:
        log.warning("near-tangential minimum of the Gramian spectrum at p=%.6g", result.tangent["p"])
    return report, code


def _run_suite(args) -> tuple[dict, int]:
    start = time.perf_counter()
    outcomes = run_all(args.count, args.seed, args.hamming_count)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "identity-suite",
        "seed": args.seed,
        "suites": [o.to_dict() for o in outcomes],
        "all_passed": all(o.ok for o in outcomes),
        "timing_ms": {"total": round(1000.0 * (time.perf_counter() - start), 3)},
    }
    for o in outcomes:
        log.info("%s: %d passed, %d failed, %d skipped", o.name, o.passed, o.failed, o.skipped)
    return report, EXIT_OK if report["all_passed"] else EXIT_NUMERIC


def _run_generate(args) -> tuple[dict, int]:
    if args.family == "random_semimetric":
        obj = random_semimetric(args.n, args.seed, args.low, args.high, metric=args.metric)
    elif args.family == "random_euclidean":
        obj = random_euclidean(args.n, args.dim, args.seed)
    else:
        params = {"n": args.n}
        if args.family == "hamming_random":
            if args.m is None:
                raise InvalidArgument("hamming_random needs --m")
            params["m"] = args.m
        obj = family(args.family, params, args.seed)
    extra = {"family": args.family, "seed": args.seed}
    if isinstance(obj, HammingSubset):
        extra["points"] = ["".join(map(str, x)) for x in obj.points]
    return space_to_json(as_space(obj), extra), EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    handlers = {"compute": _run_solver, "verify": _run_solver, "identity-suite": _run_suite, "generate": _run_generate}
    try:
        report, code = handlers[args.command](args)
    except (ParseError, ValidationError, InvalidArgument, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    _write(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
