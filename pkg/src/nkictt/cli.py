"""Command-line front end.

Subcommands: ``sweep``, ``trace``, ``oracle`` and ``plot``. Exit status is
0 on success, 2 for usage errors and 1 for runtime failures.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .errors import CapacityError, ParameterError
from .harness import (ALGORITHMS, ExperimentSpec, derive_seed, initial_configuration,
                      run_moves_trace, run_sweep, run_walker, default_workers)
from .landscape import generate_landscape, make_rng
from .oracle import MAX_ENUMERATION_N, oracle_report
from .search import NODE_SELECTION_MODES, PuParams, SUBUNIT_EVAL_MODES


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _algo_list(text: str) -> tuple[str, ...]:
    names = tuple(x.strip().upper() for x in text.split(",") if x.strip())
    bad = [x for x in names if x not in ALGORITHMS]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown algorithms {bad}; choose from {','.join(a.lower() for a in ALGORITHMS)}")
    return names


def _common(p: argparse.ArgumentParser, steps_default: int) -> None:
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--k", type=_int_list, default=tuple(range(20)),
                   help="comma-separated K values (default 0..19)")
    p.add_argument("--iters", type=int, default=10_000)
    p.add_argument("--steps", type=int, default=steps_default)
    p.add_argument("--tau", type=float, default=0.33)
    p.add_argument("--generations", type=int, default=500)
    p.add_argument("--subunits", type=_int_list, default=(4, 6),
                   help="sub-unit counts for ICTT1 and ICTT1_ALT (default 4,6)")
    p.add_argument("--subunit-eval", choices=SUBUNIT_EVAL_MODES, default="inclusive")
    p.add_argument("--node-selection", choices=NODE_SELECTION_MODES, default="untried",
                   help="how ICTT picks the next node after a rejected flip")
    p.add_argument("--seed", type=int, default=2021)
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--out", type=Path, default=Path("."))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nkictt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="fitness and hamming distance across K")
    _common(sweep, 1000)
    sweep.add_argument("--algos", type=_algo_list, default=ALGORITHMS)
    sweep.add_argument("--records", action="store_true", help="also write records.csv")
    sweep.add_argument("--svg", action="store_true", help="also render charts")

    trace = sub.add_parser("trace", help="ICTT1 moves available per time step")
    _common(trace, 100)
    trace.add_argument("--svg", action="store_true")

    oracle = sub.add_parser("oracle", help="enumerate a small landscape and compare walkers")
    _common(oracle, 1000)
    oracle.set_defaults(k=(2,), n=10)

    plot = sub.add_parser("plot", help="render SVG charts from a summary or trace CSV")
    plot.add_argument("csv", type=Path)
    plot.add_argument("--out", type=Path, default=None)
    return parser


def _spec(args, parser, algorithms=ALGORITHMS) -> ExperimentSpec:
    subunits = args.subunits
    if len(subunits) == 1:
        subunits = (subunits[0], subunits[0])
    if len(subunits) != 2:
        parser.error("--subunits takes one or two values")
    try:
        return ExperimentSpec(
            n=args.n, k_values=args.k, algorithms=algorithms, iterations=args.iters,
            max_steps=args.steps, pu=PuParams(args.tau, args.generations),
            subunits_ictt1=subunits[0], subunits_ictt1_alt=subunits[1],
            master_seed=args.seed, subunit_eval_mode=args.subunit_eval,
            ictt_node_selection=args.node_selection, workers=args.workers,
        )
    except ParameterError as exc:
        parser.error(str(exc))


def cmd_sweep(args, parser) -> int:
    spec = _spec(args, parser, args.algos)
    summary, records = run_sweep(spec)
    args.out.mkdir(parents=True, exist_ok=True)
    io.write_summary(args.out / "summary.csv", summary)
    if args.records:
        io.write_records(args.out / "records.csv", records)
    if args.svg:
        io.render_line_chart(args.out / "summary.csv", args.out)
    return 0


def cmd_trace(args, parser) -> int:
    spec = _spec(args, parser, ("ICTT1",))
    traces = {k: run_moves_trace(spec, k, args.steps) for k in args.k}
    args.out.mkdir(parents=True, exist_ok=True)
    io.write_trace(args.out / "trace.csv", traces)
    if args.svg:
        io.render_line_chart(args.out / "trace.csv", args.out)
    return 0


def cmd_oracle(args, parser) -> int:
    if len(args.k) != 1:
        parser.error("oracle takes a single --k value")
    if args.n > MAX_ENUMERATION_N:
        raise CapacityError(f"enumeration limited to n <= {MAX_ENUMERATION_N}")
    spec = _spec(args, parser)
    k = args.k[0]
    landscape = generate_landscape(args.n, k, args.seed)
    report = oracle_report(landscape)
    print(f"n={args.n} k={k} seed={args.seed} configurations={2 ** args.n}")
    print("global_best=" + "".join(map(str, report.global_best)))
    print(f"global_best_fitness={io.fmt(report.global_best_fitness)}")
    print(f"num_local_optima={report.num_local_optima}")
    init = initial_configuration(spec, k, 0)
    for algorithm in ALGORITHMS:
        outcome = run_walker(spec, algorithm, landscape, init,
                             make_rng(derive_seed(args.seed, algorithm, k, 0)))
        ratio = outcome.best_fitness / report.global_best_fitness
        print(f"{algorithm}: fitness={io.fmt(outcome.best_fitness)} ratio={io.fmt(ratio)}")
    return 0


def cmd_plot(args, parser) -> int:
    out = args.out if args.out is not None else args.csv.parent
    for path in io.render_line_chart(args.csv, out):
        print(path)
    return 0


COMMANDS = {"sweep": cmd_sweep, "trace": cmd_trace, "oracle": cmd_oracle, "plot": cmd_plot}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (OSError, ValueError) as exc:
        print(f"nkictt: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
