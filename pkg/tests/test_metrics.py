import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leanopt import metrics
from leanopt.metrics import (
    MemoryHooksUnavailableError,
    Stopwatch,
    fit_loglog,
    maybe_track_peak,
    theoretical_memory,
    track_peak,
)
from leanopt.objective import Precision


class TestTheoreticalMemory:
    @pytest.mark.parametrize("d, precision, expected", [
        (100_000, Precision.SINGLE, 400_000),
        (10 ** 9, Precision.DOUBLE, 8 * 10 ** 9),
        (2, Precision.DOUBLE, 16),
        (1, Precision.SINGLE, 4),
    ])
    def test_exact(self, d, precision, expected):
        assert theoretical_memory(d, precision) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            theoretical_memory(0, Precision.DOUBLE)

    @given(st.integers(1, 10 ** 12), st.sampled_from(list(Precision)))
    @settings(max_examples=100, deadline=None)
    def test_exactly_linear(self, d, precision):
        assert theoretical_memory(2 * d, precision) == 2 * theoretical_memory(d, precision)


class TestFitLoglog:
    def test_perfect_linear(self):
        fit = fit_loglog([(10, 30.0), (100, 300.0), (1000, 3000.0)])
        assert fit.slope == pytest.approx(1.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_perfect_quadratic(self):
        fit = fit_loglog([(10, 100.0), (100, 10_000.0), (1000, 10 ** 6)])
        assert fit.slope == pytest.approx(2.0, abs=1e-12)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            fit_loglog([(10, 1.0), (100, 2.0)])

    def test_nonpositive_measurement(self):
        with pytest.raises(ValueError):
            fit_loglog([(10, 1.0), (100, 0.0), (1000, 2.0)])

    def test_size_below_one(self):
        with pytest.raises(ValueError):
            fit_loglog([(0.5, 1.0), (100, 2.0), (1000, 3.0)])

    @given(
        st.lists(st.tuples(st.integers(1, 10 ** 6),
                           st.floats(1e-6, 1e6, allow_nan=False)),
                 min_size=3, max_size=10, unique_by=lambda p: p[0]),
        st.floats(1e-3, 1e3, allow_nan=False),
    )
    @settings(max_examples=120, deadline=None)
    def test_scale_equivariance(self, pts, c):
        base = fit_loglog(pts)
        scaled = fit_loglog([(s, c * m) for s, m in pts])
        assert scaled.slope == pytest.approx(base.slope, rel=1e-9, abs=1e-9)
        assert scaled.r_squared == pytest.approx(base.r_squared, rel=1e-9, abs=1e-9)


class TestTrackPeak:
    def test_requires_hooks(self):
        metrics.uninstall_hooks()
        with pytest.raises(MemoryHooksUnavailableError):
            with track_peak("no hooks"):
                pass

    def test_known_allocation(self, memory_hooks):
        with track_peak("block") as scope:
            block = np.zeros(10 ** 6)  # 8e6 bytes
            del block
        assert 8 * 10 ** 6 <= scope.peak_bytes < 8 * 10 ** 6 + 64 * 1024

    def test_empty_scope(self, memory_hooks):
        with track_peak("warm"):
            pass
        with track_peak("empty") as scope:
            pass
        assert scope.peak_bytes <= 4096

    def test_report_fields(self, memory_hooks):
        with track_peak("labelled", theoretical_bytes=100) as scope:
            data = bytearray(10_000)
            del data
        report = scope.report
        assert report.scope_label == "labelled"
        assert report.overhead_bytes == report.measured_peak_bytes - 100

    def test_nesting_inner_bounded_by_outer(self, memory_hooks):
        with track_peak("outer") as outer:
            with track_peak("inner") as inner:
                block = np.zeros(50_000)
                del block
        assert inner.peak_bytes <= outer.peak_bytes

    def test_peak_before_exit_is_an_error(self, memory_hooks):
        with track_peak("open") as scope:
            with pytest.raises(RuntimeError):
                scope.peak_bytes

    def test_maybe_disabled_is_noop(self):
        metrics.uninstall_hooks()
        with maybe_track_peak("off", False) as scope:
            pass
        assert scope is None

    def test_env_toggle(self, monkeypatch):
        metrics.uninstall_hooks()
        monkeypatch.setenv(metrics.ENV_TOGGLE, "off")
        assert not metrics.tracking_enabled()
        with pytest.raises(MemoryHooksUnavailableError):
            metrics.install_hooks()


class TestStopwatch:
    def test_measures_elapsed(self):
        with Stopwatch("nap") as sw:
            time.sleep(0.01)
        assert sw.wall_seconds >= 0.009
        assert sw.record.label == "nap"

    def test_before_stop_is_an_error(self):
        sw = Stopwatch()
        with pytest.raises(RuntimeError):
            sw.wall_seconds
