"""Command-line front end.

Subcommands: analyze (closed-form table), sweep (Monte-Carlo CSV),
topology (experiment CSVs over graph files), demo (narrated small build).
Exit codes: 0 success, 1 usage, 2 input data failure. Floats print with 6
decimals and outputs are byte-identical across reruns of one command.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, corpus, simulate, topology
from .bitcore import MODE_DOUBLE, MODE_RANDOM
from .yesno import YesNoFilter, YesNoParams

_HASH_MODES = {"random": MODE_RANDOM, "double": MODE_DOUBLE}


class _Parser(argparse.ArgumentParser):
    """argparse reserves exit code 2 for usage; this CLI uses 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _write_output(text: str, destination: str | None) -> None:
    if destination in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def _add_geometry_flags(parser, p, q, r, k, k_prime):
    parser.add_argument("--p", type=int, default=p, help="yes-filter bits")
    parser.add_argument("--q", type=int, default=q, help="bits per no-filter")
    parser.add_argument("--r", type=int, default=r, help="number of no-filters")
    parser.add_argument("--k", type=int, default=k, help="yes-filter hash count")
    parser.add_argument("--k-prime", type=int, default=k_prime,
                        help="no-filter hash count")


def _cmd_analyze(args) -> int:
    shape = analysis.FilterShape(args.m, args.k, args.n)
    f_s_exact = analysis.fp_prob_exact(shape)
    f_s_approx = analysis.fp_prob_approx(shape)
    load = args.n if args.no_filter_load is None else args.no_filter_load
    f_r = analysis.fp_prob_approx(analysis.FilterShape(args.q, args.k_prime, load))
    pr_e = analysis.pr_E(args.pr_s, f_s_exact, f_r, args.pr_r)
    rows = [
        ("f_s_exact", _fmt(f_s_exact), ""),
        ("f_s_approx", _fmt(f_s_approx), ""),
        ("pr_positive", _fmt(analysis.pr_positive(args.pr_s, f_s_exact)), ""),
        ("pr_false_positive", _fmt(analysis.pr_false_positive(args.pr_s, f_s_exact)), ""),
        ("f_r_approx", _fmt(f_r), ""),
        ("pr_E", _fmt(pr_e.value), "OK" if pr_e.consistent else "INCONSISTENT"),
        ("f_E_single_no_filter",
         _fmt(analysis.f_E_single_no_filter(args.p, args.q, args.k, args.k_prime,
                                            args.n, args.no_filter_load)), ""),
        ("expected_fp_count", _fmt(analysis.expected_fp_count(args.t, f_s_exact)), ""),
    ]
    lines = [f"{name:<22}{value}" + (f"  {note}" if note else "")
             for name, value, note in rows]
    if args.p + args.q * args.r != args.m:
        lines.append(f"note: p + q*r = {args.p + args.q * args.r} "
                     f"differs from m = {args.m}; two-stage rows use p and q as given")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    swept = args.var
    if swept == "r":
        swept = "r_fixed_p" if args.mode == "fixed_p" else "r_fixed_m"
    elif args.mode is not None:
        raise ValueError("--mode only applies to --var r")
    config = simulate.SweepConfig(
        swept=swept, start=args.range[0], stop=args.range[1], step=args.range[2],
        p=args.p, q=args.q, r=args.r, k=args.k, k_prime=args.k_prime,
        n=args.n, t=args.t, trials=args.trials, seed=args.seed, k_bf=args.k_bf,
        mode=_HASH_MODES[args.hash_mode],
        allow_false_negatives=args.allow_false_negatives)
    _write_output(simulate.sweep(config).to_csv(), args.output)
    return 0


def _cmd_topology(args) -> int:
    params = YesNoParams.of(args.p, args.q, args.r, args.k, args.k_prime)
    fmt = None if args.format == "auto" else args.format
    path_override = args.path.split(",") if args.path else None
    results = []
    for file_name in args.files:
        try:
            graph = topology.load_graph(file_name, fmt)
            experiment = topology.PathExperiment.from_graph(
                Path(file_name).stem, graph, path=path_override,
                include_reverse=not args.exclude_reverse, params=params,
                k_bf=args.k_bf, allocations=args.allocations)
            results.append(topology.run_topology_experiment(experiment, args.seed))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
    if not results:
        print("error: no topology produced a result", file=sys.stderr)
        return 2
    aggregates, excluded = topology.aggregate_by_length(results)
    if excluded:
        print(f"note: {excluded} topologies with empty T excluded from aggregates",
              file=sys.stderr)
    per_topology = topology.topology_results_to_csv(results)
    aggregate = topology.aggregates_to_csv(aggregates)
    if args.output in (None, "-") and args.aggregate_output in (None, "-"):
        sys.stdout.write(per_topology + "\n" + aggregate)
    else:
        _write_output(per_topology, args.output)
        _write_output(aggregate, args.aggregate_output)
    return 0


def _cmd_demo(args) -> int:
    params = YesNoParams.of(p=20, q=8, r=2, k=3, k_prime=2)
    members = ["frog", "newt", "toad", "axolotl", "olm", "siren"]
    birds = ["heron", "stork", "crane", "egret", "ibis", "spoonbill",
             "pelican", "shoebill", "bittern", "flamingo", "avocet", "godwit"]
    built, report = YesNoFilter.build(params, members, birds, seed=args.seed)
    print(f"two-stage filter: p={params.p} q={params.q} r={params.r} "
          f"k={params.k} k'={params.k_prime} (m={params.m} bits), seed={args.seed}")
    print(f"members stored: {len(members)}; queryable non-members: {len(birds)}")
    print(f"yes-stage false positives found: {report.f_count}; "
          f"recorded in no-filters: {report.r_count}; "
          f"unmitigated: {report.unmitigated}")
    print(f"no-filter loads: {list(report.per_no_filter_load)}")
    print("query outcomes:")
    for element in members + birds:
        print(f"  {element:<10} {built.query(element).value}")
    bits = built.to_bitstring()
    round_trip = YesNoFilter.from_bitstring(params, bits, seed=args.seed) == built
    print(f"serialized to {len(bits)} bits; round-trip intact: {round_trip}")
    shape = analysis.FilterShape(params.p, params.k, len(members))
    expected = analysis.expected_fp_count(len(birds), analysis.fp_prob_exact(shape))
    print(f"analytic yes-stage expectation over these queries: {_fmt(expected)}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="yesnobf",
                     description="Yes-no Bloom filters: analysis, simulation, "
                                 "and topology experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="closed-form probabilities")
    p_an.add_argument("--m", type=int, default=256, help="filter bits")
    p_an.add_argument("--k", type=int, default=6, help="hash count")
    p_an.add_argument("--n", type=int, default=30, help="stored elements")
    p_an.add_argument("--t", type=int, default=100, help="queried non-members")
    p_an.add_argument("--p", type=int, default=160,
                      help="yes-filter bits for the two-stage rows")
    p_an.add_argument("--q", type=int, default=32, help="bits per no-filter")
    p_an.add_argument("--r", type=int, default=3, help="number of no-filters")
    p_an.add_argument("--k-prime", type=int, default=5,
                      help="no-filter hash count")
    p_an.add_argument("--pr-s", type=float, default=0.0, help="membership prior")
    p_an.add_argument("--pr-r", type=float, default=0.0,
                      help="prior of being a recorded false positive")
    p_an.add_argument("--no-filter-load", type=int, default=None,
                      help="elements stored per no-filter (default n)")
    p_an.set_defaults(func=_cmd_analyze)

    p_sw = sub.add_parser("sweep", help="Monte-Carlo sweep to CSV")
    p_sw.add_argument("--var", required=True,
                      choices=["k", "k_prime", "n", "q", "r", "r_fixed_p", "r_fixed_m"])
    p_sw.add_argument("--mode", choices=["fixed_p", "fixed_m"], default=None,
                      help="with --var r: which length stays fixed (default fixed_m)")
    p_sw.add_argument("--range", required=True, metavar="LO:HI[:STEP]",
                      help="inclusive integer range")
    p_sw.add_argument("--trials", type=int, default=10_000)
    p_sw.add_argument("--seed", type=int, default=0)
    _add_geometry_flags(p_sw, p=160, q=32, r=3, k=4, k_prime=5)
    p_sw.add_argument("--n", type=int, default=30)
    p_sw.add_argument("--t", type=int, default=100)
    p_sw.add_argument("--k-bf", type=int, default=6,
                      help="hash count of the analytic m-length baseline "
                           "(ignored when sweeping k or n, which set it per point)")
    p_sw.add_argument("--hash-mode", choices=sorted(_HASH_MODES), default="random")
    p_sw.add_argument("--allow-false-negatives", action="store_true")
    p_sw.add_argument("--output", default=None, metavar="FILE")
    p_sw.set_defaults(func=_cmd_sweep)

    p_tp = sub.add_parser("topology", help="experiments over topology files")
    p_tp.add_argument("files", nargs="+", help="graph files (.graphml or edge list)")
    p_tp.add_argument("--format", choices=["auto", "graphml", "edgelist"],
                      default="auto")
    p_tp.add_argument("--allocations", type=int, default=topology.DEFAULT_ALLOCATIONS)
    p_tp.add_argument("--seed", type=int, default=0)
    p_tp.add_argument("--path", default=None, metavar="A,B,C",
                      help="use this node path instead of the selected one")
    p_tp.add_argument("--exclude-reverse", action="store_true",
                      help="drop reverse-path links from the queryable set")
    _add_geometry_flags(p_tp, p=192, q=32, r=2, k=4, k_prime=3)
    p_tp.add_argument("--k-bf", type=int, default=topology.DEFAULT_K_BF,
                      help="hash count of the classic-BF comparison structure")
    p_tp.add_argument("--output", default=None, metavar="FILE",
                      help="per-topology CSV (default stdout)")
    p_tp.add_argument("--aggregate-output", default=None, metavar="FILE",
                      help="per-length aggregate CSV (default stdout)")
    p_tp.set_defaults(func=_cmd_topology)

    p_dm = sub.add_parser("demo", help="narrated small end-to-end build")
    p_dm.add_argument("--seed", type=int, default=0)
    p_dm.set_defaults(func=_cmd_demo)

    return parser


def _parse_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"range must be LO:HI or LO:HI:STEP, got {text!r}")
    try:
        numbers = [int(part) for part in parts]
    except ValueError:
        raise ValueError(f"range parts must be integers, got {text!r}") from None
    if len(numbers) == 2:
        numbers.append(1)
    return numbers[0], numbers[1], numbers[2]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if getattr(args, "range", None) is not None:
        try:
            args.range = _parse_range(args.range)
        except ValueError as exc:
            print(f"yesnobf: error: {exc}", file=sys.stderr)
            return 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"yesnobf: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"yesnobf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
