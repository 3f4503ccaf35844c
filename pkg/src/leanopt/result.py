"""Shared optimizer result types."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Termination(str, Enum):
    BUDGET_EXHAUSTED = "budget_exhausted"
    TOLERANCE_MET = "tolerance_met"
    SWEEP_LIMIT = "sweep_limit"
    DIAMETER_CONVERGED = "diameter_converged"
    ITERATION_LIMIT = "iteration_limit"
    MEMORY_REFUSED = "memory_refused"


def digest_point(x: np.ndarray, edge: int = 8) -> str:
    """Compact first-and-last summary used above the materialization threshold."""
    head = ",".join(f"{float(v):.9g}" for v in x[:edge])
    tail = ",".join(f"{float(v):.9g}" for v in x[-edge:])
    return f"d={x.size};head=[{head}];tail=[{tail}]"


@dataclass
class OptimizationResult:
    best_f: float
    fe_used: int
    wall_seconds: float
    termination: Termination
    best_x: np.ndarray | None = None
    best_x_digest: str | None = None
    sweeps: int = 0
    sweep_peak_bytes: int | None = None
