"""Multi-start downhill simplex baseline.

Standard Nelder-Mead (1965) coefficients with clamping of out-of-box
probes to the boundary.  The (d+1) x d vertex store is the quadratic
memory object; dimensions whose simplex would exceed a configurable
ceiling are refused with an explicit error instead of exhausting RAM.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .objective import BoxBounds, Precision
from .result import OptimizationResult, Termination

DEFAULT_MEMORY_CEILING = 2 * 1024 ** 3  # 2 GiB


class SimplexMemoryError(RuntimeError):
    """Simplex storage would exceed the configured memory ceiling."""


class StepOutcome(str, Enum):
    REFLECTED = "reflected"
    EXPANDED = "expanded"
    CONTRACTED_OUTSIDE = "contracted_outside"
    CONTRACTED_INSIDE = "contracted_inside"
    SHRUNK = "shrunk"


@dataclass
class NmConfig:
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    max_iterations: int = 10_000
    diameter_tol: float = 1e-8
    restarts: int = 4
    seed: int = 0
    memory_ceiling_bytes: int = DEFAULT_MEMORY_CEILING

    def __post_init__(self):
        if self.reflection <= 0:
            raise ValueError("reflection coefficient must be positive")
        if self.expansion <= 1:
            raise ValueError("expansion coefficient must exceed 1")
        if not 0 < self.contraction < 1:
            raise ValueError("contraction coefficient must lie in (0, 1)")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink coefficient must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.diameter_tol <= 0:
            raise ValueError("diameter_tol must be positive")
        if self.restarts < 0:
            raise ValueError("restarts must be non-negative")


class Simplex:
    """(d+1) vertices of dimension d with their objective values, kept ordered.

    A running coordinate sum backs the centroid; axis reductions over the
    whole vertex store are avoided because numpy services them through a
    64 KiB iteration buffer that would pollute peak-memory measurements.
    """

    __slots__ = ("vertices", "values", "order", "coord_sum", "_replacements")

    _SUM_REFRESH = 128  # bound drift of the running coordinate sum

    def __init__(self, vertices: np.ndarray, objective):
        vertices = np.asarray(vertices)
        n, d = vertices.shape
        if n != d + 1:
            raise ValueError("simplex needs exactly d+1 vertices of dimension d")
        self.vertices = vertices
        self.values = np.array([objective.full(v) for v in vertices])
        self.order = np.argsort(self.values, kind="stable")
        self.coord_sum = np.zeros(d)
        self._replacements = 0
        self.refresh_sum()

    def refresh_sum(self) -> None:
        acc = self.coord_sum
        acc[:] = 0.0
        for row in self.vertices:
            np.add(acc, row, out=acc)
        self._replacements = 0

    def replace_vertex(self, index: int, point: np.ndarray, value: float) -> None:
        acc = self.coord_sum
        np.subtract(acc, self.vertices[index], out=acc)
        np.add(acc, point, out=acc)
        self.vertices[index] = point
        self.values[index] = value
        self._replacements += 1
        if self._replacements >= self._SUM_REFRESH:
            self.refresh_sum()

    @classmethod
    def random(cls, objective, bounds: BoxBounds, rng: np.random.Generator,
               dtype=np.float64) -> "Simplex":
        d = objective.dim
        verts = np.empty((d + 1, d), dtype=dtype)
        for j in range(d + 1):
            verts[j] = bounds.random_point(d, rng, dtype)
        return cls(verts, objective)

    def sort(self) -> None:
        self.order = np.argsort(self.values, kind="stable")

    @property
    def best_value(self) -> float:
        return float(self.values[self.order[0]])

    @property
    def best_vertex(self) -> np.ndarray:
        return self.vertices[self.order[0]]


def simplex_bytes(d: int, precision: Precision = Precision.DOUBLE) -> int:
    """Bytes of the vertex store plus the value vector."""
    return (d + 1) * d * precision.nbytes + (d + 1) * precision.nbytes


def simplex_diameter(simplex: Simplex) -> float:
    """Maximum pairwise max-norm distance; equals the largest coordinate range."""
    verts = simplex.vertices
    hi = verts[0].copy()
    lo = verts[0].copy()
    for row in verts[1:]:
        np.maximum(hi, row, out=hi)
        np.minimum(lo, row, out=lo)
    np.subtract(hi, lo, out=hi)
    return float(hi.max())


def _clamp(point: np.ndarray, bounds: BoxBounds | None) -> np.ndarray:
    if bounds is not None:
        np.clip(point, bounds.lo, bounds.hi, out=point)
    return point


def nm_step(simplex: Simplex, objective, config: NmConfig,
            bounds: BoxBounds | None = None) -> StepOutcome:
    """One reflect/expand/contract/shrink transition; best value never worsens."""
    verts = simplex.vertices
    values = simplex.values
    order = simplex.order
    i_best = order[0]
    i_worst = order[-1]
    f_best = values[i_best]
    f_second_worst = values[order[-2]]
    f_worst = values[i_worst]
    worst = verts[i_worst]
    d = verts.shape[1]
    centroid = (simplex.coord_sum - worst) / d

    xr = _clamp(centroid + config.reflection * (centroid - worst), bounds)
    fr = objective.full(xr)
    if fr < f_best:
        xe = _clamp(centroid + config.expansion * (xr - centroid), bounds)
        fe = objective.full(xe)
        if fe < fr:
            simplex.replace_vertex(i_worst, xe, fe)
            outcome = StepOutcome.EXPANDED
        else:
            simplex.replace_vertex(i_worst, xr, fr)
            outcome = StepOutcome.REFLECTED
    elif fr < f_second_worst:
        simplex.replace_vertex(i_worst, xr, fr)
        outcome = StepOutcome.REFLECTED
    else:
        if fr < f_worst:
            xc = _clamp(centroid + config.contraction * (xr - centroid), bounds)
            fc = objective.full(xc)
            accept = fc <= fr
            outcome = StepOutcome.CONTRACTED_OUTSIDE
        else:
            xc = _clamp(centroid + config.contraction * (worst - centroid), bounds)
            fc = objective.full(xc)
            accept = fc < f_worst
            outcome = StepOutcome.CONTRACTED_INSIDE
        if accept:
            simplex.replace_vertex(i_worst, xc, fc)
        else:
            # Shrink every non-best vertex toward the best by the shrink factor.
            best = verts[i_best].copy()
            for j in range(d + 1):
                if j == i_best:
                    continue
                verts[j] = best + config.shrink * (verts[j] - best)
                values[j] = objective.full(verts[j])
            simplex.refresh_sum()
            outcome = StepOutcome.SHRUNK
    simplex.sort()
    return outcome


def nm_optimize(objective, bounds: BoxBounds, config: NmConfig) -> OptimizationResult:
    """Best result across restarts+1 seeded random-start simplex descents."""
    d = objective.dim
    bounds.check_dimension(d)
    precision = getattr(objective, "precision", Precision.DOUBLE)
    need = simplex_bytes(d, precision)
    if need > config.memory_ceiling_bytes:
        raise SimplexMemoryError(
            f"simplex for d={d} needs {need} bytes, over the "
            f"{config.memory_ceiling_bytes}-byte ceiling"
        )
    counter = objective.counter
    base_total = counter.total
    start = time.perf_counter()
    best_f = np.inf
    best_x = None
    termination = Termination.ITERATION_LIMIT
    for restart in range(config.restarts + 1):
        rng = np.random.default_rng([config.seed, restart])
        simplex = Simplex.random(objective, bounds, rng, precision.dtype)
        reason = Termination.ITERATION_LIMIT
        for _ in range(config.max_iterations):
            if simplex_diameter(simplex) < config.diameter_tol:
                reason = Termination.DIAMETER_CONVERGED
                break
            nm_step(simplex, objective, config, bounds)
        if simplex.best_value < best_f:
            best_f = simplex.best_value
            best_x = simplex.best_vertex.copy()
            termination = reason
    wall = time.perf_counter() - start
    return OptimizationResult(
        best_f=float(best_f),
        fe_used=counter.total - base_total,
        wall_seconds=wall,
        termination=termination,
        best_x=best_x,
    )
