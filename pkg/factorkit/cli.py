"""Command-line surface: compute, factor, gen, verify-paper, exceptions, sweep.

Exit codes: 0 when everything passed or the factor exists, 1 when a check
failed or was skipped or the factor does not exist, 2 on usage, input or
cap errors.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .checks import VerifyConfig, verify_claims
from .config import (
    CONSTRUCTION_CAP,
    DEFAULT_JOBS,
    DEFAULT_SEED,
    ENUMERATION_CAP,
    GRAPH_TIME_BUDGET,
    LOG_DATEFMT,
    LOG_FORMAT,
    LOG_LEVEL,
    EnumerationConfig,
)
from .corpus import CORPUS_FAMILIES, CorpusSpec
from .errors import FactorkitError
from .exception_graphs import ORDER, enumerate_exceptions
from .factors import MIN_CYCLE_CHOICES, IsolationViolation, cp_criterion, decide_factor, fractional_tutte
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import describe_set, read_edge_list, serialize_edge_list
from .parameters import Parameter, compute
from .sweep import run_sweep, write_rows

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _enumeration(args) -> EnumerationConfig:
    return EnumerationConfig(cap=args.cap, jobs=args.jobs)


# ---------------------- Commands ----------------------
def cmd_compute(args) -> int:
    g = read_edge_list(args.input)
    result = compute(g, Parameter(args.param), _enumeration(args))
    print(str(result.value))
    print(f"witness: {result.witness_vertices}")
    if args.json:
        _write(args.json, json.dumps(result.to_dict(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_factor(args) -> int:
    g = read_edge_list(args.input)
    config = _enumeration(args)
    if g.order <= CONSTRUCTION_CAP:
        decision = decide_factor(g, args.min_cycle, config)
    else:
        log.warning("order %d above construction cap %d, deciding without a decomposition", g.order, CONSTRUCTION_CAP)
        decision = cp_criterion(g, config) if args.min_cycle == 5 else fractional_tutte(g, config)

    if args.json:
        _write(args.json, json.dumps(decision.to_dict(), sort_keys=True) + "\n")
    if decision.exists:
        print("FACTOR")
        if decision.decomposition is not None:
            print(str(decision.decomposition))
        return EXIT_OK
    v = decision.violation
    print("NO-FACTOR")
    if isinstance(v, IsolationViolation):
        print(f"S = {describe_set(v.vertices)}, iso = {v.iso_count}")
    else:
        print(f"S = {describe_set(v.vertices)}, c_tc = {v.tc_count}")
    return EXIT_NEGATIVE


def cmd_gen(args) -> int:
    spec = GeneratorSpec(args.family, n=args.n, m=args.m, p=args.p, blocks=args.blocks, seed=args.seed)
    g = generate(spec)
    _write(args.output, serialize_edge_list(g) + "\n")
    log.info("wrote %s: order %d, size %d", spec.describe(), g.order, g.size)
    return EXIT_OK


def cmd_verify(args) -> int:
    sizes = tuple(range(5, 10))
    config = VerifyConfig(
        m_max=args.m_max,
        corpus=CorpusSpec(sizes=sizes, count=args.corpus_size // len(sizes), seed=args.seed),
        large_corpus=CorpusSpec(sizes=(16, 17, 18), count=args.large_count, probabilities=(0.7, 0.8, 0.9), seed=args.seed),
        graph_budget=args.budget,
        cap=args.cap,
        jobs=args.jobs,
        exceptions=not args.no_exceptions,
    )
    report = verify_claims(config)
    text = report.render_text()
    print(text, end="")
    if args.output:
        Path(args.output).write_text(text)
    if args.json:
        _write(args.json, report.to_json(timings=args.timings))
    return report.exit_code


def cmd_exceptions(args) -> int:
    classes = enumerate_exceptions(args.order, jobs=args.jobs)
    print("=" * 60)
    print(f"{len(classes)} classes of order-{args.order} graphs with no factor and I' > 4")
    print("=" * 60)
    for c in classes:
        print(f"{c.canonical}  I' = {c.iprime}" + ("" if c.connected else "  (disconnected)"))
        print("  " + " ".join(f"{u}-{v}" for u, v in c.graph.edges()))
    if args.json:
        _write(args.json, json.dumps([c.to_dict() for c in classes], sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = CorpusSpec(sizes=tuple(args.sizes), count=args.count, probabilities=tuple(args.p),
                      seed=args.seed, family=args.family)
    rows = run_sweep(spec, cap=args.cap, jobs=args.jobs)
    if args.output is None or args.output == "-":
        written = write_rows(rows, sys.stdout)
    else:
        with open(args.output, "w") as fh:
            written = write_rows(rows, fh)
    log.info("sweep: %d rows", written)
    return EXIT_OK


# ---------------------- Parser ----------------------
def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=ENUMERATION_CAP, help=f"Enumeration cap on graph order (default: {ENUMERATION_CAP})")
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help=f"Worker processes; results do not depend on it (default: {DEFAULT_JOBS})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Seed for randomized families and corpora (default: {DEFAULT_SEED})")
    common.add_argument("--log-level", default=LOG_LEVEL, help=f"Logging level (default: {LOG_LEVEL})")

    p = argparse.ArgumentParser(prog="factorkit", description="Exact graph vulnerability parameters and {K2, odd cycle}-factors")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="Compute t, I, I' or bind of a graph file")
    c.add_argument("--input", required=True, help="Edge-list graph file")
    c.add_argument("--param", choices=[x.value for x in Parameter], default="t", help="Parameter to compute (default: t)")
    c.add_argument("--json", help="Also write the result as JSON to this file")
    c.set_defaults(handler=cmd_compute)

    f = sub.add_parser("factor", parents=[common], help="Decide and construct a {K2, C_(2i+1)}-factor")
    f.add_argument("--input", required=True, help="Edge-list graph file")
    f.add_argument("--min-cycle", type=int, choices=MIN_CYCLE_CHOICES, default=5, help="Shortest allowed odd cycle (default: 5)")
    f.add_argument("--json", help="Also write the decision and its certificate as JSON to this file")
    f.set_defaults(handler=cmd_factor)

    g = sub.add_parser("gen", parents=[common], help="Write a generated graph as an edge list")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--blocks", type=int)
    g.add_argument("--output", help="Destination file (default: stdout)")
    g.set_defaults(handler=cmd_gen)

    v = sub.add_parser("verify-paper", aliases=["verify-claims"], parents=[common], help="Run the claim verification suite")
    v.add_argument("--m-max", type=int, default=5, help="Largest m for the extremal families (default: 5)")
    v.add_argument("--corpus-size", type=int, default=10000, help="Random graphs over orders 5..9 (default: 10000)")
    v.add_argument("--large-count", type=int, default=2, help="Graphs per order and probability at orders 16..18 (default: 2)")
    v.add_argument("--budget", type=float, default=GRAPH_TIME_BUDGET, help=f"Seconds per large graph (default: {GRAPH_TIME_BUDGET:.0f})")
    v.add_argument("--no-exceptions", action="store_true", help="Skip the order-7 exceptions enumeration")
    v.add_argument("--json", help="Machine-readable report destination")
    v.add_argument("--output", help="Human-readable report destination (also printed)")
    v.add_argument("--timings", action="store_true", help="Include elapsed times in the JSON report")
    v.set_defaults(handler=cmd_verify)

    e = sub.add_parser("exceptions", parents=[common], help="Enumerate order-7 graphs with no factor and I' > 4")
    e.add_argument("--order", type=int, default=ORDER, help=f"Only {ORDER} is supported")
    e.add_argument("--json", help="Also write the classes as JSON to this file")
    e.set_defaults(handler=cmd_exceptions)

    s = sub.add_parser("sweep", parents=[common], help="Write one JSON line of parameters per corpus graph")
    s.add_argument("--family", choices=CORPUS_FAMILIES, default="random")
    s.add_argument("--sizes", type=int, nargs="+", default=[5, 6, 7, 8, 9], help="Graph orders (blocks for cactus)")
    s.add_argument("--count", type=int, default=20, help="Graphs per size for seeded families (default: 20)")
    s.add_argument("--p", type=float, nargs="+", default=[0.3, 0.5, 0.7], help="Edge probability schedule")
    s.add_argument("--output", help="JSON Lines destination (default: stdout)")
    s.set_defaults(handler=cmd_sweep)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    try:
        return args.handler(args)
    except (FactorkitError, OSError) as e:
        log.error("%s: %s", args.command, e)
        return EXIT_ERROR
    except Exception as e:
        log.error("Error during %s: %s", args.command, e, exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
