"""Bundled reference values for the benchmark comparison.

Each cell carries its table of origin, the verbatim printed value, a
parsed numeric value (None for cells printed as '-'), and a tolerance
class governing how a fresh run is judged against it:

  exact              -- reproduced bit-for-bit after display rounding
                        (the theoretical-memory column only)
  order_of_magnitude -- pass within a factor of ten
  slope_only         -- only the log-log growth exponent of the series
                        is machine-independent; absolute values are not
  not_reproducible   -- context only; never judged
"""
from __future__ import annotations

from dataclasses import dataclass, field

EXACT = "exact"
ORDER_OF_MAGNITUDE = "order_of_magnitude"
SLOPE_ONLY = "slope_only"
NOT_REPRODUCIBLE = "not_reproducible"

# Known transcription conflicts carried as-is, never resolved here.
NOTES = (
    "The abstract reports 64,485 s for the 1e9-dimension run while the "
    "wall-time table reports 64,489.001 s; cells store the table value.",
    "The wall-time/FE/objective tables are titled 'single precision' while "
    "the surrounding text states the optimized-evaluation runs used double "
    "precision; cells carry the table label as transcribed.",
    "The 1e9-dimension headline run (~18 hours, 7,630 MB RAM) is declared "
    "not reproducible at desk scale and sits behind the --extreme flag.",
)

# Expected log-log growth exponents for slope_only series.
SLOPE_EXPONENTS = {
    ("abo", "wall_s"): 2.0,      # linear FE count times O(d) full evaluation
    ("abo_opt", "wall_s"): 1.0,  # linear FE count times O(1) updates
    ("abo", "peak_kb"): 1.0,
    ("abo_opt", "peak_kb"): 1.0,
    ("nm", "peak_kb"): 2.0,      # quadratic simplex storage
}
SLOPE_TOLERANCE = 0.4
# Process-level constant floors dominate small runs; fit slopes from here up.
SLOPE_MIN_DIM = 1000


@dataclass(frozen=True)
class RefCell:
    table: str
    algo: str
    dim: int
    metric: str        # theory_kb | peak_kb | wall_s | fe | best_f
    display: str       # verbatim printed value
    value: float | None
    tolerance: str
    precision_label: str = ""
    note: str = ""


def _cells(table, metric, precision_label, rows, tolerances):
    out = []
    for dim, columns in rows:
        for algo, (display, value) in columns.items():
            out.append(RefCell(
                table=table, algo=algo, dim=dim, metric=metric,
                display=display, value=value,
                tolerance=NOT_REPRODUCIBLE if value is None else tolerances[algo],
                precision_label=precision_label,
            ))
    return out


_MISSING = ("-", None)


def _v(display, value=None):
    return (display, float(value if value is not None else display.replace(",", "")))


# Measured process RAM (KB); absolute values are OS/machine specific.
_TABLE1_ROWS = [
    (2, {"nm": _v("436"), "abo": _v("436"), "theory": _v("0.01")}),
    (10, {"nm": _v("432"), "abo": _v("438"), "theory": _v("0.04")}),
    (100, {"nm": _v("480"), "abo": _v("436"), "theory": _v("0.4")}),
    (1000, {"nm": _v("4,368", 4368), "abo": _v("432"), "theory": _v("4")}),
    (10000, {"nm": _v("391,332", 391332), "abo": _v("476"), "theory": _v("40")}),
    (100000, {"nm": _v("5,510,120", 5510120), "abo": _v("820"), "theory": _v("400")}),
    (10 ** 6, {"nm": _MISSING, "abo": _v("4,292", 4292), "theory": _v("4,000.00", 4000)}),
    (10 ** 7, {"nm": _MISSING, "abo": _v("39,500", 39500), "theory": _v("40,000.00", 40000)}),
    (10 ** 8, {"nm": _MISSING, "abo": _v("391,052", 391052), "theory": _v("400,000.00", 400000)}),
    (10 ** 9, {"nm": _MISSING, "abo": _v("3,906,688", 3906688), "theory": _v("4,000,000.00", 4000000)}),
]

_TABLE2_ROWS = [
    (2, {"nm": _v("428"), "abo": _v("432"), "theory": _v("0.02")}),
    (10, {"nm": _v("428"), "abo": _v("436"), "theory": _v("0.08")}),
    (100, {"nm": _v("508"), "abo": _v("432"), "theory": _v("0.80")}),
    (1000, {"nm": _v("8,304", 8304), "abo": _v("432"), "theory": _v("8.00", 8)}),
    (10000, {"nm": _v("782,268", 782268), "abo": _v("508"), "theory": _v("80.00", 80)}),
    (100000, {"nm": _v("5,828,688", 5828688), "abo": _v("1,208", 1208), "theory": _v("800.00", 800)}),
    (10 ** 6, {"nm": _MISSING, "abo": _v("8,248", 8248), "theory": _v("8,000.00", 8000)}),
    (10 ** 7, {"nm": _MISSING, "abo": _v("78,512", 78512), "theory": _v("80,000.00", 80000)}),
    (10 ** 8, {"nm": _MISSING, "abo": _v("781,640", 781640), "theory": _v("800,000.00", 800000)}),
    (10 ** 9, {"nm": _MISSING, "abo": _v("7,965,384", 7965384), "theory": _v("8,000,000.00", 8000000)}),
]

_TABLE3_ROWS = [
    (2, {"nm": _v("0.031"), "abo": _v("0.004"), "abo_opt": _v("0.013")}),
    (10, {"nm": _v("4.011"), "abo": _v("0.005"), "abo_opt": _v("0.016")}),
    (100, {"nm": _v("29.187"), "abo": _v("0.121"), "abo_opt": _v("0.014")}),
    (1000, {"nm": _v("59.886"), "abo": _v("4.101"), "abo_opt": _v("0.031")}),
    (10000, {"nm": _MISSING, "abo": _v("376.782"), "abo_opt": _v("0.146")}),
    (100000, {"nm": _MISSING, "abo": _v("33,505.231", 33505.231), "abo_opt": _v("1.127")}),
    (10 ** 6, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("10.969")}),
    (10 ** 7, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("108.532")}),
    (10 ** 8, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("1,068.721", 1068.721)}),
    (10 ** 9, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("64,489.001", 64489.001)}),
]

_TABLE4_ROWS = [
    (2, {"nm": _v("50"), "abo": _v("1000"), "abo_opt": _v("500")}),
    (10, {"nm": _v("20,013", 20013), "abo": _v("5,000", 5000), "abo_opt": _v("2,500", 2500)}),
    (100, {"nm": _v("200,103", 200103), "abo": _v("50,000", 50000), "abo_opt": _v("25,000", 25000)}),
    (1000, {"nm": _v("2,000,985", 2000985), "abo": _v("500,000", 500000), "abo_opt": _v("250,000", 250000)}),
    (10000, {"nm": _MISSING, "abo": _v("5,000,000", 5e6), "abo_opt": _v("2,500,000", 2.5e6)}),
    (100000, {"nm": _MISSING, "abo": _v("50,000,000", 5e7), "abo_opt": _v("25,000,000", 2.5e7)}),
    (10 ** 6, {"nm": _MISSING, "abo": _v("500 million", 5e8), "abo_opt": _v("250,000,000", 2.5e8)}),
    (10 ** 7, {"nm": _MISSING, "abo": _v("5 billion", 5e9), "abo_opt": _v("2,500,000,000", 2.5e9)}),
    (10 ** 8, {"nm": _MISSING, "abo": _v("50 billion", 5e10), "abo_opt": _v("25 billion", 2.5e10)}),
    (10 ** 9, {"nm": _MISSING, "abo": _v("500 billion", 5e11), "abo_opt": _v("250.9 billion", 2.509e11)}),
]

_TABLE5_ROWS = [
    (2, {"nm": _v("11.381"), "abo": _v("0.00", 0.0), "abo_opt": _v("3.841e-14", 3.841e-14)}),
    (10, {"nm": _v("5.59887"), "abo": _v("0.071"), "abo_opt": _v("1.075e-09", 1.075e-9)}),
    (100, {"nm": _v("36.5997"), "abo": _v("0.009"), "abo_opt": _v("5.461e-13", 5.461e-13)}),
    (1000, {"nm": _v("5,625.82", 5625.82), "abo": _v("7.114e-11", 7.114e-11), "abo_opt": _v("2.644e-12", 2.644e-12)}),
    (10000, {"nm": _MISSING, "abo": _v("0.00021"), "abo_opt": _v("8.291e-12", 8.291e-12)}),
    (100000, {"nm": _MISSING, "abo": _v("0.00986"), "abo_opt": _v("6.081e-11", 6.081e-11)}),
    (10 ** 6, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("1.092e-09", 1.092e-9)}),
    (10 ** 7, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("5.4269e-06", 5.4269e-6)}),
    (10 ** 8, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("1.6238e-07", 1.6238e-7)}),
    (10 ** 9, {"nm": _MISSING, "abo": _MISSING, "abo_opt": _v("0.0017705")}),
]


def _build_reference() -> tuple[RefCell, ...]:
    cells: list[RefCell] = []
    cells += _cells("Table I", "peak_kb", "single", _TABLE1_ROWS,
                    {"nm": SLOPE_ONLY, "abo": SLOPE_ONLY, "theory": EXACT})
    cells += _cells("Table II", "peak_kb", "double", _TABLE2_ROWS,
                    {"nm": SLOPE_ONLY, "abo": SLOPE_ONLY, "theory": EXACT})
    cells += _cells("Table III", "wall_s", "single", _TABLE3_ROWS,
                    {"nm": NOT_REPRODUCIBLE, "abo": SLOPE_ONLY, "abo_opt": SLOPE_ONLY})
    cells += _cells("Table IV", "fe", "single", _TABLE4_ROWS,
                    {"nm": NOT_REPRODUCIBLE, "abo": ORDER_OF_MAGNITUDE,
                     "abo_opt": ORDER_OF_MAGNITUDE})
    cells += _cells("Table V", "best_f", "single", _TABLE5_ROWS,
                    {"nm": NOT_REPRODUCIBLE, "abo": ORDER_OF_MAGNITUDE,
                     "abo_opt": ORDER_OF_MAGNITUDE})
    # Fixed-FE CPU/GPU comparison tables: context only, no local runner exists.
    for dim, value in [(100000, 49258.0), (500000, 240820.0), (10 ** 6, 479457.0),
                       (1500000, 727870.0), (3 * 10 ** 6, 1444441.0)]:
        cells.append(RefCell("Table VI", "ma_sw_chains", dim, "wall_s",
                             f"{value:,.0f}", value, NOT_REPRODUCIBLE,
                             precision_label="double"))
    for dim, value in [(100000, 1086.7), (500000, 3460.8), (10 ** 6, 4332.5),
                       (1500000, 5519.2), (3 * 10 ** 6, 8639.8)]:
        cells.append(RefCell("Table VII", "gpu_ma_sw_chains", dim, "wall_s",
                             f"{value:,.1f}", value, NOT_REPRODUCIBLE,
                             precision_label="double"))
    return tuple(cells)


REFERENCE_CELLS: tuple[RefCell, ...] = _build_reference()


def theory_cells() -> list[RefCell]:
    return [c for c in REFERENCE_CELLS if c.algo == "theory"]


def lookup(algo: str, dim: int, metric: str, precision_label: str | None = None):
    for c in REFERENCE_CELLS:
        if c.algo == algo and c.dim == dim and c.metric == metric:
            if precision_label is None or c.precision_label == precision_label:
                return c
    return None
