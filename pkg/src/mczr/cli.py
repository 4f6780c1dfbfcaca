"""Command-line entry point: ``mczr <command> ...``.

Exit codes: 0 success, 1 error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, io
from .core import GateSeq, PhaseVector
from .layering import depth_lower_bound
from .phasepoly import DEFAULT_TOL, phase_deviation, simulate_diagonal

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _phases_of(path: str) -> PhaseVector:
    if io.document_kind(path) == "phase_vector":
        return io.read_phase_vector(path)
    seq, _ = io.read_circuit(path)
    return simulate_diagonal(seq)


def _cmd_synth(args) -> int:
    alpha = io.read_phase_vector(args.input)
    layering, report = bench.workflow1(alpha, args.iter, fast=args.fast)
    _emit(io.dumps_circuit(layering), args.output)
    print(
        f"gates={report.gate_count} depth={report.depth} lower_bound={report.lower_bound}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_optimize(args) -> int:
    seq, _ = io.read_circuit(args.input)
    report = bench.workflow2(seq, args.iter)
    _emit(io.dumps_circuit(report.layering), args.output)
    print(f"depth={report.depth} lower_bound={report.lower_bound}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    a, b = _phases_of(args.first), _phases_of(args.second)
    if a.n != b.n:
        print(f"qubit counts differ: {a.n} vs {b.n}")
        return EXIT_MISMATCH
    dev = phase_deviation(a, b)
    ok = dev <= args.tol
    print(f"{'equal' if ok else 'different'} up to global phase (max deviation {dev:.3e} rad)")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_lb(args) -> int:
    seq, _ = io.read_circuit(args.input)
    print(depth_lower_bound(seq))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    seq, _ = io.read_circuit(args.input)
    _emit(io.dumps_phase_vector(simulate_diagonal(seq)), args.output)
    return EXIT_OK


def _cmd_bench(family: str):
    def run(args) -> int:
        config = io.read_config(args.config, family=family)
        records = bench.run_experiment_suite(config)
        _emit(bench.records_to_csv(records), args.output)
        for s in bench.aggregate(records):
            print(
                f"n={s.n:<3d} {s.strategy:<7s} count={s.count:<6d} "
                f"depth {s.mean_depth_before:.2f} -> {s.mean_depth_after:.2f} "
                f"({s.mean_reduction_pct:.2f}% reduction) time {s.mean_wall_time:.4f}s",
                file=sys.stderr,
            )
        return EXIT_OK

    return run


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mczr", description="Synthesize and depth-optimise MCZR circuits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="phase vector in, layered circuit out")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--iter", type=int, default=1)
    solver = p.add_mutually_exclusive_group()
    solver.add_argument("--fast", dest="fast", action="store_true", default=True)
    solver.add_argument("--naive", dest="fast", action="store_false")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("optimize", help="circuit in, depth-optimised circuit out")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--iter", type=int, default=1)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("verify", help="compare two circuits or phase vectors up to global phase")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lb", help="print the depth lower bound of a circuit")
    p.add_argument("input")
    p.set_defaults(func=_cmd_lb)

    p = sub.add_parser("simulate", help="circuit in, phase vector out")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_simulate)

    for name, family in (("bench-hermitian", "hermitian"), ("bench-qaoa", "qaoa")):
        p = sub.add_parser(name, help=f"run the {family} sweep described by a config file")
        p.add_argument("config")
        p.add_argument("-o", "--output", help="CSV path (default: stdout)")
        p.set_defaults(func=_cmd_bench(family))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "iter", 1) < 1:
        print("mczr: error: --iter must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (OSError, ValueError, IndexError, RuntimeError) as exc:
        print(f"mczr: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
