# harness/cli.py

"""
Command-line entry point: `python -m harness <subcommand>`.

Tables go to standard output, logs to stderr and logs/harness.log, and
machine-readable records are appended to --out as JSON lines.

Exit codes: 0 success, 1 negative verdict, 2 inconclusive or over budget,
3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import pandas as pd
from dotenv import load_dotenv

from blobbing.blobs import format_blobbing, format_model
from blobbing.counting import enumerate_blobbings, g_count, g_count_bound
from blobbing.structure import min_good_pairs
from config import main_config
from graphs.blowup import blowup
from graphs.errors import (
    BudgetExceededError,
    ConfigError,
    FeasibilityError,
    GraphFormatError,
    MinorsError,
    RetriesExhaustedError,
)
from graphs.graph import average_degree
from graphs.graph_io import read_graph, write_graph
from harness import config as harness_config
from harness.bounds import bound_chain_grid, compatibility_probability_bound, union_bound_estimate
from harness.estimate import estimate_minor_probability
from harness.experiment import build_params, load_config, run_experiment
from harness.records import append_json_line
from minors.search import Outcome, SearchBudget, find_minor
from params.constants import lambda_constant, stationarity
from params.derive import ConstructionParams, target_average_degree
from randgen.seeds import resolve_seed
from verify.construction import construct_g0
from verify.star import StarMode, star_union_bound, verify_star

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; here usage errors exit with 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging() -> None:
    logging.basicConfig(
        level=logging.INFO if main_config.VERBOSE_LOGGING else logging.WARNING,
        format="%(asctime)s [%(levelname)s] - %(message)s",
        handlers=[
            logging.FileHandler(harness_config.LOG_FILE),
            logging.StreamHandler(),
        ],
    )


def _print_table(rows: list[dict] | pd.DataFrame, file=None) -> None:
    frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows)
    print(frame.to_string(index=False), file=file)


def _emit(args, payload: dict) -> None:
    if args.out:
        append_json_line(Path(args.out), {"command": args.command, **payload})


def _params(args) -> ConstructionParams:
    return build_params(args.epsilon, args.d, args.t, args.beta, args.p, args.alpha)


# --- Subcommands ---

def cmd_lambda(args) -> int:
    x_star, lam = lambda_constant()
    _print_table([{"x_star": x_star, "lambda": lam, "residual": abs(stationarity(x_star))}])
    _emit(args, {"x_star": x_star, "lambda": lam})
    return EXIT_OK


def cmd_derive_params(args) -> int:
    params = _params(args)
    print(params.to_record(), end="")
    print()
    _print_table([d._asdict() for d in params.diagnostics()])
    print()
    _print_table([target_average_degree(params)._asdict()])
    _emit(args, {"params": params.to_dict()})
    return EXIT_OK


def _star_options(args) -> dict:
    return {
        "budget": args.budget,
        "samples": args.samples,
        "restarts": args.restarts,
        "workers": args.workers,
    }


def cmd_gen_g0(args) -> int:
    params = _params(args)
    seed = resolve_seed(args.seed)
    try:
        g0, verdict, edges, attempts = construct_g0(params, seed, args.mode, args.max_retries, **_star_options(args))
    except RetriesExhaustedError as e:
        logger.error(f"❌ {e}")
        best = e.best_verdict.to_dict() if e.best_verdict is not None else None
        _emit(args, {"status": "retries_exhausted", "attempts": e.attempts, "best_verdict": best})
        return EXIT_NEGATIVE
    if args.graph:
        write_graph(Path(args.graph), g0)
    _print_table([{"d": g0.n, "edges": edges.edges, "edge_threshold": edges.threshold,
                   "star_mode": verdict.mode.value, "star_passed": verdict.passed, "attempts": attempts}])
    _emit(args, {"status": "ok", "seed": seed.to_dict(), "edges": [list(e) for e in g0.edges],
                 "edge_check": edges.to_dict(), "verdict": verdict.to_dict(), "attempts": attempts})
    return EXIT_OK


def cmd_verify_star(args) -> int:
    params = _params(args)
    g0 = read_graph(Path(args.graph))
    seed = resolve_seed(args.seed, stream_id=args.stream_id)
    verdict = verify_star(g0, params, args.mode, seed, **_star_options(args))
    union = star_union_bound(params)
    _print_table([{"mode": verdict.mode.value, "passed": verdict.passed, "proves": verdict.proves,
                   "count": verdict.count, "threshold": float(verdict.threshold),
                   "collections": verdict.trials, "vacuous": verdict.vacuous}])
    print()
    _print_table([union._asdict()])
    _emit(args, {"verdict": verdict.to_dict(), "union_bound": union._asdict()})
    return EXIT_OK if verdict.passed else EXIT_NEGATIVE


def cmd_blowup(args) -> int:
    base = read_graph(Path(args.graph))
    host = blowup(base, args.r)
    write_graph(Path(args.output), host.graph)
    avg = average_degree(host.graph)
    _print_table([{"d": base.n, "r": args.r, "vertices": host.graph.n, "edges": host.graph.edge_count,
                   "average_degree": float(avg)}])
    _emit(args, {"vertices": host.graph.n, "edges": host.graph.edge_count,
                 "average_degree": f"{avg.numerator}/{avg.denominator}"})
    return EXIT_OK


def cmd_minor_test(args) -> int:
    h = read_graph(Path(args.h))
    g = read_graph(Path(args.g))
    result = find_minor(h, g, SearchBudget(args.node_limit, args.time_limit))
    # Model lines alone on stdout, one branch set per vertex of H; the summary goes to stderr.
    _print_table([{"outcome": result.outcome.value, "nodes": result.nodes, "elapsed": result.elapsed}], file=sys.stderr)
    if result.model is not None:
        print(format_model(result.model), end="")
    _emit(args, result.to_dict())
    return {
        Outcome.MODEL: EXIT_OK,
        Outcome.NO_MINOR: EXIT_NEGATIVE,
        Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[result.outcome]


def cmd_g_count(args) -> int:
    count = g_count(args.d, args.t, args.n)
    bound = g_count_bound(args.d, args.n)
    _print_table([{"d": args.d, "t": args.t, "n": args.n, "g": count, "bound_4d_n": bound, "within": count <= bound}])
    _emit(args, {"g": str(count), "bound": str(bound)})
    return EXIT_OK


def cmd_count_blobbings(args) -> int:
    capacity = args.capacity if args.capacity is not None else args.d * args.r
    result = enumerate_blobbings(args.d, args.t, capacity, args.r, budget=args.budget)
    _print_table([{"d": args.d, "t": args.t, "r": args.r, "capacity": capacity, "blobbings": result.count}])
    payload = {"count": result.count}
    if args.g0:
        g0 = read_graph(Path(args.g0))
        if g0.n != args.d:
            raise ValueError(f"--g0 has {g0.n} vertices but --d is {args.d}")
        if args.epsilon is None:
            raise ValueError("--g0 needs --epsilon for the good-pair threshold")
        params = replace(build_params(args.epsilon, args.d, args.t, p=args.p, alpha=args.alpha), r=args.r)
        if args.ell is not None:
            params = replace(params, ell=args.ell)
        minimum = min_good_pairs(g0, params, args.mode, resolve_seed(args.seed), args.samples, args.budget)
        print()
        _print_table([{"mode": args.mode, "examined": minimum.examined, "min_good_pairs": minimum.minimum,
                       "threshold": minimum.threshold, "meets_threshold": minimum.meets_threshold}])
        if minimum.witness is not None:
            print(format_blobbing(minimum.witness), end="")
        payload["good_pairs"] = minimum.to_dict()
    _emit(args, payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    params = _params(args)
    union = union_bound_estimate(params, args.c)
    _print_table([union._asdict()])
    print()
    if args.m is not None and args.q is not None:
        bound = compatibility_probability_bound(params, args.m, args.q)
        _print_table([{**bound._asdict(), "exact_ratio": float(bound.exact_ratio)}])
        grid = None
    else:
        grid = bound_chain_grid(params)
        _print_table(grid)
    _emit(args, {"union": union.to_dict(), "grid": json.loads(grid.to_json(orient="records")) if grid is not None else None})
    return EXIT_OK


def cmd_estimate(args) -> int:
    params = _params(args)
    seed = resolve_seed(args.seed, stream_id=args.stream_id)
    estimate = estimate_minor_probability(
        params,
        args.trials,
        seed,
        SearchBudget(args.node_limit, args.time_limit),
        workers=args.workers,
        mode=args.mode,
        max_retries=args.max_retries,
        samples=args.samples,
        restarts=args.restarts,
    )
    union = union_bound_estimate(params, args.c)
    summary = estimate.summary()
    _print_table([{**summary, "interval": f"[{estimate.interval[0]:.4f}, {estimate.interval[1]:.4f}]",
                   "log_union_bound": union.log_bound, "log_c_t": union.log_c_t}])
    _emit(args, {"seed": seed.to_dict(), "estimate": summary, "trials": [o.to_dict() for o in estimate.outcomes],
                 "union": union.to_dict()})
    return EXIT_INCONCLUSIVE if estimate.inconclusive else EXIT_OK


def cmd_run(args) -> int:
    config = load_config(Path(args.config))
    record = run_experiment(config, Path(args.out) if args.out else None, seed=args.seed)
    if record.estimate:
        _print_table([record.estimate])
    if record.status != "ok":
        for failure in record.failures:
            print(f"FAILED {failure['stage']}: {failure['error_type']}: {failure['message']}", file=sys.stderr)
        budget_like = {"BudgetExceededError", "FeasibilityError"}
        if any(f["error_type"] in budget_like for f in record.failures):
            return EXIT_INCONCLUSIVE
        return EXIT_NEGATIVE
    return EXIT_INCONCLUSIVE if record.estimate and record.estimate["inconclusive"] else EXIT_OK


# --- Parser ---

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help=f"Seed value (falls back to ${main_config.SEED_ENV_VAR}).")
    parser.add_argument("--out", default=None, help="Append a JSON-lines record to this file.")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--d", type=int, required=True)
    parser.add_argument("--t", type=int, required=True)
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--p", type=float, default=None, help="Override the edge probability of G0.")
    parser.add_argument("--alpha", type=float, default=None)


def _add_star(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[m.value for m in StarMode], default=StarMode.SAMPLED.value)
    parser.add_argument("--budget", type=int, default=None, help="Work budget for exhaustive mode.")
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)


def _add_search(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--node-limit", type=int, default=main_config.DEFAULT_NODE_LIMIT)
    parser.add_argument("--time-limit", type=float, default=main_config.DEFAULT_TIME_LIMIT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m harness", description="Extremal minor construction toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lambda", help="Compute x* and lambda.")
    _add_common(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("derive-params", help="Derive construction parameters.")
    _add_common(p)
    _add_params(p)
    p.set_defaults(func=cmd_derive_params)

    p = sub.add_parser("gen-g0", help="Sample G0 and check its edge count and (star).")
    _add_common(p)
    _add_params(p)
    _add_star(p)
    p.add_argument("--max-retries", type=int, default=None)
    p.add_argument("--graph", default=None, help="Write the accepted G0 to this graph file.")
    p.set_defaults(func=cmd_gen_g0)

    p = sub.add_parser("verify-star", help="Check (star) on a graph file.")
    _add_common(p)
    _add_params(p)
    _add_star(p)
    p.add_argument("graph")
    p.add_argument("--stream-id", type=int, default=0)
    p.set_defaults(func=cmd_verify_star)

    p = sub.add_parser("blowup", help="Blow up a graph file.")
    _add_common(p)
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("minor-test", help="Decide whether H is a minor of G.")
    _add_common(p)
    _add_search(p)
    p.add_argument("h")
    p.add_argument("g")
    p.set_defaults(func=cmd_minor_test)

    p = sub.add_parser("g-count", help="Count t-tuples of blobs of total size <= n.")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_g_count)

    p = sub.add_parser("count-blobbings", help="Enumerate blobbings exhaustively.")
    _add_common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--capacity", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--g0", default=None, help="Also report the fewest good pairs over blobbings of this G0 (capacity d*r).")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--ell", type=float, default=None, help="Override the derived ell.")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_count_blobbings)

    p = sub.add_parser("bounds", help="Evaluate the union bound and the compatibility chain.")
    _add_common(p)
    _add_params(p)
    p.add_argument("--c", type=float, default=main_config.DEFAULT_C)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("estimate", help="Estimate P(H is a minor of G).")
    _add_common(p)
    _add_params(p)
    _add_star(p)
    _add_search(p)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--stream-id", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=None)
    p.add_argument("--c", type=float, default=main_config.DEFAULT_C)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("run", help="Run an experiment from a YAML config.")
    _add_common(p)
    p.add_argument("config")
    p.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging()
    try:
        return args.func(args)
    except (ConfigError, GraphFormatError, ValueError, OSError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except (BudgetExceededError, FeasibilityError) as e:
        logger.error(f"❌ {e}")
        return EXIT_INCONCLUSIVE
    except MinorsError as e:
        logger.error(f"❌ {e}")
        return EXIT_NEGATIVE
