"""Benchmark harness: runs algorithm x dimension x precision grids,
records one row per cell, serializes CSV/JSON, and judges fresh runs
against the bundled reference tables."""
from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import Decimal, ROUND_HALF_UP

import numpy as np

from . import reference as ref
from .abo import AboConfig, abo_optimize
from .metrics import (Stopwatch, fit_loglog, install_hooks, maybe_track_peak,
                      theoretical_memory)
from .nelder_mead import NmConfig, SimplexMemoryError, nm_optimize
from .objective import BoxBounds, GriewankObjective, Precision
from .result import Termination

ALGOS = ("abo", "abo_opt", "nm")
CSV_HEADER = "algo,dim,precision,fe,wall_s,best_f,theory_kb,peak_kb,termination,seed,timestamp"
EXTREME_DIM_LIMIT = 10 ** 6


@dataclass
class RunSpec:
    algo: str = "abo_opt"
    dims: tuple = (100, 1000, 10000)
    precision: Precision = Precision.DOUBLE
    fe_budget_per_dim: int = 500
    seed: int = 0
    repeats: int = 1
    memory_ceiling_bytes: int = 2 * 1024 ** 3
    output_path: str | None = None
    format: str = "csv"
    samples_per_coordinate: int = 10
    shrink_factor: float = 0.5
    track_memory: bool = False
    plot_path: str | None = None
    compare_reference: bool = False
    extreme: bool = False

    def __post_init__(self):
        if self.algo not in ALGOS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("dims must be a non-empty list of positive integers")
        if any(b >= a for a, b in zip(dims[1:], dims)):
            raise ValueError("dims must be strictly increasing")
        self.dims = dims
        if self.fe_budget_per_dim < 1:
            raise ValueError("fe budget per dimension must be positive")
        if self.fe_budget_per_dim * dims[0] < self.samples_per_coordinate:
            raise ValueError("budget must cover at least one coordinate's samples")
        if self.repeats < 1:
            raise ValueError("repeats must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if not self.extreme and dims[-1] > EXTREME_DIM_LIMIT:
            raise ValueError(
                f"dimensions above {EXTREME_DIM_LIMIT} take hours; pass --extreme "
                "to run them anyway"
            )


@dataclass
class RunRecord:
    algo: str
    dim: int
    precision: str
    fe: int
    wall_s: float
    best_f: float
    theory_kb: float
    peak_kb: float
    termination: str
    seed: int
    timestamp: str


def _float_digits(precision: str) -> int:
    return 9 if precision == Precision.SINGLE.value else 17


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def _run_cell(spec: RunSpec, dim: int) -> RunRecord:
    bounds = BoxBounds.uniform(*GriewankObjective.DOMAIN)
    theory_kb = theoretical_memory(dim, spec.precision) / 1000.0
    budget = spec.fe_budget_per_dim * dim
    label = f"{spec.algo}/d={dim}"
    termination = Termination.BUDGET_EXHAUSTED
    peak_kb = 0.0
    with Stopwatch(label) as sw:
        with maybe_track_peak(label, spec.track_memory) as scope:
            try:
                if spec.algo == "nm":
                    objective = GriewankObjective(dim, spec.precision, incremental=False)
                    config = NmConfig(
                        max_iterations=max(budget // max(dim, 1), 1),
                        seed=spec.seed,
                        memory_ceiling_bytes=spec.memory_ceiling_bytes,
                    )
                    result = nm_optimize(objective, bounds, config)
                else:
                    objective = GriewankObjective(
                        dim, spec.precision, incremental=spec.algo == "abo_opt")
                    config = AboConfig(
                        fe_budget=budget,
                        samples_per_coordinate=spec.samples_per_coordinate,
                        shrink_factor=spec.shrink_factor,
                    )
                    result = abo_optimize(objective, bounds, config)
                fe_used = result.fe_used
                best_f = result.best_f
                termination = result.termination
            except SimplexMemoryError:
                fe_used = 0
                best_f = math.nan
                termination = Termination.MEMORY_REFUSED
    if scope is not None:
        peak_kb = scope.peak_bytes / 1000.0
    if spec.precision is Precision.SINGLE and math.isfinite(best_f):
        best_f = float(np.float32(best_f))
    return RunRecord(
        algo=spec.algo,
        dim=dim,
        precision=spec.precision.value,
        fe=fe_used,
        wall_s=sw.wall_seconds,
        best_f=best_f,
        theory_kb=theory_kb,
        peak_kb=peak_kb,
        termination=termination.value,
        seed=spec.seed,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def run_suite(spec: RunSpec) -> list[RunRecord]:
    """Execute every (dim, repeat) cell serially with isolated counters."""
    if spec.track_memory:
        install_hooks()
    records = []
    for dim in spec.dims:
        for _ in range(spec.repeats):
            records.append(_run_cell(spec, dim))
    return records


def emit_csv(records, path_or_file) -> None:
    """Write the fixed-schema CSV; floats carry full round-trip precision."""
    if not records:
        raise ValueError("no records to write")
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", encoding="utf-8") if own else path_or_file
    try:
        fh.write(CSV_HEADER + "\n")
        for r in records:
            digits = _float_digits(r.precision)
            fh.write(",".join([
                r.algo, str(r.dim), r.precision, str(r.fe),
                _fmt(r.wall_s, 17), _fmt(r.best_f, digits),
                _fmt(r.theory_kb, 17), _fmt(r.peak_kb, 17),
                r.termination, str(r.seed), r.timestamp,
            ]) + "\n")
    except Exception:
        if own:
            fh.close()
            try:
                os.remove(path_or_file)
            except OSError:
                pass
        raise
    finally:
        if own and not fh.closed:
            fh.close()


def parse_csv(path_or_file) -> list[RunRecord]:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "r", encoding="utf-8") if own else path_or_file
    try:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    finally:
        if own:
            fh.close()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or malformed CSV header")
    records = []
    for ln in lines[1:]:
        p = ln.split(",")
        if len(p) != 11:
            raise ValueError(f"malformed CSV row: {ln!r}")
        records.append(RunRecord(
            algo=p[0], dim=int(p[1]), precision=p[2], fe=int(p[3]),
            wall_s=float(p[4]), best_f=float(p[5]), theory_kb=float(p[6]),
            peak_kb=float(p[7]), termination=p[8], seed=int(p[9]), timestamp=p[10],
        ))
    return records


def emit_json(records, path_or_file) -> None:
    """JSON array mirroring the CSV fields one-to-one."""
    if not records:
        raise ValueError("no records to write")
    payload = [dataclasses.asdict(r) for r in records]
    for row in payload:
        if isinstance(row["best_f"], float) and math.isnan(row["best_f"]):
            row["best_f"] = "nan"
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", encoding="utf-8") if own else path_or_file
    try:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    except Exception:
        if own:
            fh.close()
            try:
                os.remove(path_or_file)
            except OSError:
                pass
        raise
    finally:
        if own and not fh.closed:
            fh.close()


@dataclass
class Verdict:
    label: str
    status: str  # pass | fail | skip
    detail: str


@dataclass
class ComparisonReport:
    verdicts: list[Verdict] = field(default_factory=list)

    def add(self, label, status, detail=""):
        self.verdicts.append(Verdict(label, status, detail))

    @property
    def passed(self) -> bool:
        return all(v.status != "fail" for v in self.verdicts)

    def summary(self) -> str:
        n = {"pass": 0, "fail": 0, "skip": 0}
        for v in self.verdicts:
            n[v.status] += 1
        lines = [f"{v.status.upper():4s} {v.label}: {v.detail}" for v in self.verdicts]
        lines.append(
            f"reference comparison: {n['pass']} passed, {n['fail']} failed, "
            f"{n['skip']} skipped -> {'PASS' if self.passed else 'FAIL'}"
        )
        return "\n".join(lines)


def _display_matches(value: float, display: str) -> bool:
    """True when value, rounded to the cell's printed decimals, prints equal."""
    text = display.replace(",", "")
    places = len(text.split(".")[1]) if "." in text else 0
    quantum = Decimal(1).scaleb(-places)
    got = Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP)
    return got == Decimal(text)


def _median(values):
    return float(np.median(values))


def compare_to_reference(records, cells=ref.REFERENCE_CELLS) -> ComparisonReport:
    """Per-cell verdicts at each cell's tolerance class plus series slopes."""
    report = ComparisonReport()
    precision = records[0].precision if records else Precision.DOUBLE.value
    theory_table = "Table I" if precision == Precision.SINGLE.value else "Table II"
    by_dim: dict[int, list[RunRecord]] = {}
    for r in records:
        by_dim.setdefault(r.dim, []).append(r)
    algo = records[0].algo if records else ""

    for dim, rows in sorted(by_dim.items()):
        # Theoretical memory: exact after display rounding.
        cell = next((c for c in cells if c.algo == "theory" and c.dim == dim
                     and c.table == theory_table), None)
        if cell is not None:
            ok = _display_matches(rows[0].theory_kb, cell.display)
            report.add(f"{cell.table} theory_kb d={dim}",
                       "pass" if ok else "fail",
                       f"{rows[0].theory_kb} KB vs printed {cell.display!r}")
        # Objective quality and FE counts: order of magnitude.
        for metric, got in (("best_f", _median([r.best_f for r in rows])),
                            ("fe", _median([r.fe for r in rows]))):
            cell = next((c for c in cells if c.algo == algo and c.dim == dim
                         and c.metric == metric), None)
            if cell is None or cell.tolerance != ref.ORDER_OF_MAGNITUDE:
                continue
            if metric == "best_f":
                if not math.isfinite(got):
                    report.add(f"{cell.table} best_f d={dim}", "skip", "no finite value")
                    continue
                bar = max(10.0 * cell.value, 1e-3)
                ok = got <= bar
                detail = f"{got:.3g} vs reference {cell.display} (bar {bar:.3g})"
            else:
                ok = cell.value / 10.0 <= got <= cell.value * 10.0
                detail = f"{got:.0f} vs reference {cell.display}"
            report.add(f"{cell.table} {metric} d={dim}", "pass" if ok else "fail", detail)

    # Machine-dependent series: judge growth exponent only.
    for metric in ("wall_s", "peak_kb"):
        expected = ref.SLOPE_EXPONENTS.get((algo, metric))
        if expected is None:
            continue
        pts = [(dim, _median([getattr(r, metric) for r in rows]))
               for dim, rows in sorted(by_dim.items()) if dim >= ref.SLOPE_MIN_DIM]
        pts = [(d, m) for d, m in pts if m > 0]
        label = f"{algo} {metric} slope"
        if len(pts) < 3:
            report.add(label, "skip", "needs >= 3 dims at or above "
                       f"{ref.SLOPE_MIN_DIM} with positive measurements")
            continue
        fit = fit_loglog(pts)
        ok = abs(fit.slope - expected) <= ref.SLOPE_TOLERANCE
        report.add(label, "pass" if ok else "fail",
                   f"slope {fit.slope:.2f} vs expected {expected:.1f} "
                   f"+/- {ref.SLOPE_TOLERANCE}")

    if not report.verdicts:
        report.add("reference coverage", "skip", "no run cells match any reference cell")
    return report
