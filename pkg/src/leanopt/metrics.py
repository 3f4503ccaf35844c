"""Resource instrumentation: peak dynamic-memory bytes, wall time, and
the empirical log-log complexity fits used to verify linearity claims.

Byte accounting rides on tracemalloc, which traces every Python-level
dynamic allocation including numpy array buffers.  Scopes may nest; a
scope reports the peak net bytes acquired inside it relative to the
traced total at entry.
"""
from __future__ import annotations

import math
import os
import time
import tracemalloc
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .objective import Precision

ENV_TOGGLE = "LEANOPT_TRACK_MEMORY"


class MemoryHooksUnavailableError(RuntimeError):
    """Raised when byte accounting is requested but hooks are not installed."""


@dataclass(frozen=True)
class MemoryReport:
    theoretical_bytes: int
    measured_peak_bytes: int
    scope_label: str

    @property
    def overhead_bytes(self) -> int:
        return self.measured_peak_bytes - self.theoretical_bytes


@dataclass(frozen=True)
class StopwatchRecord:
    wall_seconds: float
    label: str


@dataclass(frozen=True)
class ComplexityFit:
    slope: float
    intercept: float
    r_squared: float
    points: tuple


def theoretical_memory(d: int, precision: Precision) -> int:
    """Precision bytes times decision variables, exactly."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return precision.nbytes * d


def tracking_enabled() -> bool:
    """Environment toggle; defaults to enabled."""
    return os.environ.get(ENV_TOGGLE, "on").lower() not in ("off", "0", "false")


def install_hooks() -> None:
    if not tracking_enabled():
        raise MemoryHooksUnavailableError(f"{ENV_TOGGLE} is off")
    if not tracemalloc.is_tracing():
        tracemalloc.start()


def uninstall_hooks() -> None:
    if tracemalloc.is_tracing():
        tracemalloc.stop()
    _active_scopes.clear()


def hooks_installed() -> bool:
    return tracemalloc.is_tracing()


# Stack of live track_peak scopes.  tracemalloc keeps a single global
# peak, so every reset folds the running peak into all open scopes first.
_active_scopes: list["track_peak"] = []


def _fold_and_reset_peak() -> None:
    peak = tracemalloc.get_traced_memory()[1]
    for scope in _active_scopes:
        net = peak - scope._base
        if net > scope._peak_net:
            scope._peak_net = net
    tracemalloc.reset_peak()


class track_peak:
    """Context manager measuring peak net bytes acquired within a scope.

    Requires install_hooks() first; never reports silent zeros.
    """

    def __init__(self, label: str, theoretical_bytes: int = 0):
        self.label = label
        self.theoretical_bytes = theoretical_bytes
        self.report: MemoryReport | None = None
        self._base = 0
        self._peak_net = 0

    def __enter__(self) -> "track_peak":
        if not tracemalloc.is_tracing():
            raise MemoryHooksUnavailableError(
                "byte-accounting hooks are not installed; call metrics.install_hooks()"
            )
        _fold_and_reset_peak()
        self._base = tracemalloc.get_traced_memory()[0]
        self._peak_net = 0
        _active_scopes.append(self)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        _fold_and_reset_peak()
        _active_scopes.remove(self)
        self.report = MemoryReport(
            theoretical_bytes=self.theoretical_bytes,
            measured_peak_bytes=max(self._peak_net, 0),
            scope_label=self.label,
        )

    @property
    def peak_bytes(self) -> int:
        if self.report is None:
            raise RuntimeError("scope has not exited yet")
        return self.report.measured_peak_bytes


@contextmanager
def maybe_track_peak(label: str, enabled: bool, theoretical_bytes: int = 0):
    """Zero-cost no-op scope when disabled."""
    if not enabled:
        yield None
        return
    with track_peak(label, theoretical_bytes) as scope:
        yield scope


class Stopwatch:
    """Monotonic-clock wall timer usable as a context manager."""

    def __init__(self, label: str = ""):
        self.label = label
        self._start = None
        self.record: StopwatchRecord | None = None

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        elapsed = time.perf_counter() - self._start
        self.record = StopwatchRecord(wall_seconds=elapsed, label=self.label)

    @property
    def wall_seconds(self) -> float:
        if self.record is None:
            raise RuntimeError("stopwatch has not stopped yet")
        return self.record.wall_seconds


def fit_loglog(points) -> ComplexityFit:
    """Least-squares line on (log size, log measurement); slope is the
    empirical complexity exponent."""
    pts = tuple((float(s), float(m)) for s, m in points)
    if len(pts) < 3:
        raise ValueError("log-log fit needs at least 3 points")
    for s, m in pts:
        if s < 1 or m <= 0 or not (math.isfinite(s) and math.isfinite(m)):
            raise ValueError("sizes must be >= 1 and measurements > 0")
    logx = np.log([s for s, _ in pts])
    logy = np.log([m for _, m in pts])
    slope, intercept = np.polyfit(logx, logy, 1)
    pred = slope * logx + intercept
    ss_res = float(np.sum((logy - pred) ** 2))
    ss_tot = float(np.sum((logy - logy.mean()) ** 2))
    # Constant measurements leave ss_tot at rounding-noise scale; the ratio
    # is then meaningless and the flat line is a perfect fit.
    noise_floor = len(pts) * (1e-12 * max(1.0, float(np.abs(logy).max()))) ** 2
    if ss_tot <= noise_floor:
        r_squared = 1.0
    else:
        r_squared = max(0.0, 1.0 - ss_res / ss_tot)
    return ComplexityFit(slope=float(slope), intercept=float(intercept),
                         r_squared=min(1.0, r_squared), points=pts)
