"""Command-line driver: generation, routing, and verification runs.

Every subcommand emits one JSON run report on stdout (except ``export-dot``,
which emits DOT text).  Exit codes: 0 on success, 1 when a verification
came back negative (a failed separator claim, an exhausted search, a failed
selfcheck), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path as FilePath

from .formats import (
    InputFormatError,
    export_dot,
    gadget_labels_json,
    parse_graph_text,
    serialize_graph_text,
)
from .gadgets import BadParamsError, build_counterexample
from .graph import INF, Graph, VertexSet
from .oracle import (
    BudgetExhausted,
    Escapes,
    FoundPaths,
    NoneExists,
    SearchBudget,
    check_gadget_dichotomy,
    find_ball_separator,
    is_ball_separator,
    search_far_paths,
)
from .selfcheck import run_all
from .solver import (
    Center,
    NoPath,
    SolverConfig,
    TwoFarPaths,
    VerificationFailedError,
    solve,
)

USAGE_ERROR = 2
VERIFICATION_NEGATIVE = 1


def _default_workers() -> int:
    env = os.environ.get("COARSE_MENGER_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _load_instance(path: str) -> tuple[Graph, VertexSet, VertexSet]:
    text = FilePath(path).read_text()
    return parse_graph_text(text)


def _report(args, outcome: dict, started: float, seed: int | None = None) -> dict:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "output") and v is not None
    }
    params.pop("command", None)
    return {
        "command": args.command,
        "params": params,
        "outcome": outcome,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
        "seed": seed,
    }


def _emit(args, report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _num(x):
    return None if x == INF else x


def cmd_gen(args) -> int:
    started = time.monotonic()
    gadget = build_counterexample(args.ell, args.depth, args.subdiv)
    text = serialize_graph_text(gadget.graph, gadget.sources, gadget.targets)
    out_path = FilePath(args.output)
    out_path.write_text(text)
    sidecar = out_path.with_suffix(out_path.suffix + ".labels.json")
    sidecar.write_text(gadget_labels_json(gadget))
    _emit(
        args,
        _report(
            args,
            {
                "path": str(out_path),
                "labels": str(sidecar),
                "vertices": gadget.graph.vertex_count,
                "edges": gadget.graph.edge_count,
                "max_degree": gadget.graph.max_degree,
            },
            started,
        ),
    )
    return 0


def cmd_solve(args) -> int:
    started = time.monotonic()
    g, sources, targets = _load_instance(args.input)
    config = SolverConfig(c=args.c, ell=args.ell, self_verify=not args.no_self_verify)
    outcome, trace = solve(g, sources, targets, config)
    if args.trace:
        FilePath(args.trace).write_text(json.dumps(trace.to_dict(), indent=2))
    if isinstance(outcome, TwoFarPaths):
        payload = {
            "outcome": "two_far_paths",
            "paths": [list(outcome.first.vertices), list(outcome.second.vertices)],
            "pairwise_distance": _num(outcome.distance),
        }
    elif isinstance(outcome, Center):
        payload = {"outcome": "center", "vertex": outcome.vertex, "radius": outcome.radius, "verified": True}
    else:
        payload = {"outcome": "no_path"}
    _emit(args, _report(args, payload, started))
    return 0


def cmd_verify_separator(args) -> int:
    started = time.monotonic()
    g, sources, targets = _load_instance(args.input)
    if args.x:
        centers = frozenset(int(part) for part in args.x.split(","))
        result = is_ball_separator(g, sources, targets, centers, args.radius)
        if isinstance(result, Escapes):
            payload = {
                "claim": "separator",
                "outcome": "escapes",
                "witness": list(result.witness.vertices),
            }
            code = VERIFICATION_NEGATIVE
        else:
            payload = {"claim": "separator", "outcome": "separates"}
            code = 0
        payload["centers"] = sorted(centers)
    else:
        hit = find_ball_separator(
            g, sources, targets, max_size=args.max_size, radius=args.radius, workers=args.workers
        )
        if hit is None:
            payload = {"claim": "separator-search", "outcome": "none_exists"}
            code = 0
        else:
            payload = {"claim": "separator-search", "outcome": "found", "centers": sorted(hit)}
            code = 0
    payload["radius"] = args.radius
    _emit(args, _report(args, payload, started))
    return code


def cmd_search_paths(args) -> int:
    started = time.monotonic()
    g, sources, targets = _load_instance(args.input)
    result = search_far_paths(
        g, sources, targets, k=args.k, d=args.d, budget=SearchBudget(max_nodes=args.budget)
    )
    if isinstance(result, FoundPaths):
        payload = {
            "result": "found",
            "paths": [list(p.vertices) for p in result.paths],
            "nodes": result.nodes_used,
        }
        code = 0
    elif isinstance(result, NoneExists):
        payload = {"result": "none_exists", "nodes": result.nodes_used}
        code = 0
    else:
        payload = {"result": "budget_exhausted", "nodes": result.nodes_used}
        code = VERIFICATION_NEGATIVE
    _emit(args, _report(args, payload, started))
    return code


def cmd_verify_construction(args) -> int:
    started = time.monotonic()
    report = check_gadget_dichotomy(args.k)
    payload = {
        "claim": "path-pair-dichotomy",
        "depth": report.depth,
        "pairs_checked": report.pairs_checked,
        "violations": 0 if report.ok else 1,
    }
    if not report.ok:
        p, q = report.first_violation
        payload["first_violation"] = [list(p.vertices), list(q.vertices)]
    _emit(args, _report(args, payload, started))
    return 0 if report.ok else VERIFICATION_NEGATIVE


def cmd_export_dot(args) -> int:
    g, sources, targets = _load_instance(args.input)
    text = export_dot(g, sources, targets)
    if args.output:
        FilePath(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_selftest(args) -> int:
    results = run_all(
        fuzz_count=args.fuzz_count,
        seed=args.seed if args.seed is not None else 20260809,
        workers=args.workers,
        budget_nodes=args.budget,
    )
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else VERIFICATION_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarse-menger",
        description="Far-apart path packing, ball separators, and the radius-161 router.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a counterexample instance")
    p.add_argument("--ell", type=int, required=True, help="target separator radius")
    p.add_argument("--depth", type=int, default=None, help="override tree depth")
    p.add_argument("--subdiv", type=int, default=None, help="override subdivision length")
    p.add_argument("-o", "--output", required=True, help="graph file to write")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run the two-outcome router")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--c", type=int, default=7)
    p.add_argument("--ell", type=int, default=19)
    p.add_argument("--trace", default=None, help="write the full trace JSON here")
    p.add_argument("--no-self-verify", action="store_true")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-separator", help="check or search for ball separators")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--x", default=None, help="candidate centers, e.g. '5' or '5,7'")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=cmd_verify_separator)

    p = sub.add_parser("search-paths", help="exhaustive far-path search")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--budget", type=int, default=100_000_000)
    p.set_defaults(func=cmd_search_paths)

    p = sub.add_parser("verify-construction", help="exhaustive gadget dichotomy check")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_verify_construction)

    p = sub.add_parser("export-dot", help="render an instance as DOT")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--fuzz-count", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=100_000_000)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except BadParamsError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except VerificationFailedError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return VERIFICATION_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
