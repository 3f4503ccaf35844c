"""Command-line benchmark harness.

Exit status: 0 success, 1 usage error, 2 I/O error, 3 reference
comparison failure.
"""
from __future__ import annotations

import argparse
import sys

from .bench import (EXTREME_DIM_LIMIT, RunSpec, compare_to_reference, emit_csv,
                    emit_json, run_suite)
from .objective import Precision
from .plotting import emit_scaling_plot


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _dims_list(text: str) -> tuple:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed dimension list {text!r}")
    return dims


def build_parser() -> _Parser:
    p = _Parser(prog="leanopt-bench",
                description="Run optimizer benchmark grids on the Griewank function.")
    p.add_argument("--algo", choices=["abo", "abo-opt", "nm"], default="abo-opt",
                   help="optimizer to benchmark (default: abo-opt)")
    p.add_argument("--dims", type=_dims_list, default=(100, 1000, 10000),
                   metavar="D1,D2,...",
                   help="strictly increasing dimension list (default: 100,1000,10000)")
    p.add_argument("--precision", choices=["f32", "f64"], default="f64",
                   help="decision-variable precision (default: f64)")
    p.add_argument("--budget-per-dim", type=int, default=500, metavar="N",
                   help="function evaluations per dimension (default: 500)")
    p.add_argument("--samples-per-coord", type=int, default=10, metavar="K",
                   help="candidates sampled per coordinate per sweep (default: 10)")
    p.add_argument("--shrink", type=float, default=0.5, metavar="G",
                   help="bracket shrink factor per sweep (default: 0.5)")
    p.add_argument("--seed", type=int, default=0, help="run seed (default: 0)")
    p.add_argument("--repeats", type=int, default=1,
                   help="records per cell (default: 1)")
    p.add_argument("--memory-ceiling", type=int, default=2 * 1024 ** 3,
                   metavar="BYTES",
                   help="refuse simplex allocations above this (default: 2 GiB)")
    p.add_argument("--track-memory", choices=["on", "off"], default="off",
                   help="measure peak dynamic-memory bytes per cell (default: off)")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv",
                   help="output format (default: csv)")
    p.add_argument("--plot", metavar="PATH.svg", default=None,
                   help="also write a log-log scaling plot")
    p.add_argument("--compare-reference", action="store_true",
                   help="judge results against the bundled reference tables")
    p.add_argument("--extreme", action="store_true",
                   help=f"allow dimensions above {EXTREME_DIM_LIMIT} "
                        "(hours of runtime at the top end)")
    return p


def parse_args(argv) -> RunSpec:
    """Validated RunSpec from CLI flags; usage errors exit with status 1."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return RunSpec(
            algo=ns.algo.replace("-", "_"),
            dims=ns.dims,
            precision=Precision.SINGLE if ns.precision == "f32" else Precision.DOUBLE,
            fe_budget_per_dim=ns.budget_per_dim,
            seed=ns.seed,
            repeats=ns.repeats,
            memory_ceiling_bytes=ns.memory_ceiling,
            output_path=ns.out,
            format=ns.format,
            samples_per_coordinate=ns.samples_per_coord,
            shrink_factor=ns.shrink,
            track_memory=ns.track_memory == "on",
            plot_path=ns.plot,
            compare_reference=ns.compare_reference,
            extreme=ns.extreme,
        )
    except ValueError as exc:
        parser.error(str(exc))


def main(argv=None) -> int:
    spec = parse_args(sys.argv[1:] if argv is None else argv)
    # Fail on unwritable output before any cell runs.
    if spec.output_path is not None:
        try:
            with open(spec.output_path, "w", encoding="utf-8"):
                pass
        except OSError as exc:
            print(f"cannot write {spec.output_path}: {exc}", file=sys.stderr)
            return 2
    records = run_suite(spec)
    emit = emit_csv if spec.format == "csv" else emit_json
    try:
        emit(records, spec.output_path if spec.output_path is not None else sys.stdout)
        if spec.plot_path is not None:
            emit_scaling_plot(records, spec.plot_path)
    except OSError as exc:
        print(f"output failed: {exc}", file=sys.stderr)
        return 2
    if spec.compare_reference:
        report = compare_to_reference(records)
        print(report.summary(), file=sys.stderr)
        if not report.passed:
            return 3
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
