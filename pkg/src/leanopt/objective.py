"""Benchmark objective functions.

Provides the Griewank function with two evaluation routes: a full
from-scratch evaluation, and an incremental route that recomputes the
objective after a single-coordinate change in O(1) amortized work using
a cached per-coordinate cosine table and a compensated running sum.
A shifted sphere is included as a convex smoke-test objective.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

DEFAULT_REFRESH_PERIOD = 1 << 20
DEFAULT_ZERO_GUARD = 1e-8


class Precision(str, Enum):
    SINGLE = "single"
    DOUBLE = "double"

    @property
    def nbytes(self) -> int:
        return 4 if self is Precision.SINGLE else 8

    @property
    def dtype(self):
        return np.float32 if self is Precision.SINGLE else np.float64


@dataclass
class EvalCounter:
    """Exact accounting of objective invocations."""

    full_evals: int = 0
    incremental_evals: int = 0

    @property
    def total(self) -> int:
        return self.full_evals + self.incremental_evals


class DecisionVector:
    """The d-dimensional point being optimized; length is fixed for life."""

    __slots__ = ("values", "precision")

    def __init__(self, values, precision: Precision = Precision.DOUBLE):
        arr = np.array(values, dtype=precision.dtype, copy=True)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("decision vector must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("decision vector entries must be finite")
        self.values = arr
        self.precision = precision

    def __len__(self) -> int:
        return self.values.size


class BoxBounds:
    """Box constraints, either one (lo, hi) pair for all coordinates or one per coordinate."""

    __slots__ = ("lo", "hi", "per_dimension")

    def __init__(self, lo, hi, per_dimension: bool = False):
        if per_dimension:
            lo = np.asarray(lo, dtype=np.float64)
            hi = np.asarray(hi, dtype=np.float64)
            if lo.shape != hi.shape or lo.ndim != 1 or lo.size < 1:
                raise ValueError("per-dimension bounds need matching 1-D lo/hi")
            if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
                raise ValueError("bounds must be finite")
            if not np.all(lo < hi):
                raise ValueError("every lo must be strictly below hi")
        else:
            lo = float(lo)
            hi = float(hi)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("bounds must be finite")
            if not lo < hi:
                raise ValueError("lo must be strictly below hi")
        self.lo = lo
        self.hi = hi
        self.per_dimension = per_dimension

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "BoxBounds":
        return cls(lo, hi, per_dimension=False)

    @classmethod
    def per_dim(cls, lo, hi) -> "BoxBounds":
        return cls(lo, hi, per_dimension=True)

    def check_dimension(self, d: int) -> None:
        if self.per_dimension and self.lo.size != d:
            raise ValueError(
                f"bounds have {self.lo.size} dimensions, objective has {d}"
            )

    def center(self, d: int, dtype=np.float64) -> np.ndarray:
        self.check_dimension(d)
        if self.per_dimension:
            return ((self.lo + self.hi) * 0.5).astype(dtype)
        return np.full(d, (self.lo + self.hi) * 0.5, dtype=dtype)

    def random_point(self, d: int, rng: np.random.Generator, dtype=np.float64) -> np.ndarray:
        self.check_dimension(d)
        if self.per_dimension:
            return rng.uniform(self.lo, self.hi).astype(dtype)
        return rng.uniform(self.lo, self.hi, size=d).astype(dtype)


def _as_array(x) -> np.ndarray:
    arr = x.values if isinstance(x, DecisionVector) else np.asarray(x)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("expected a non-empty 1-D point")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point entries must be finite")
    return arr


def griewank_full(x, counter: EvalCounter | None = None) -> float:
    """Full Griewank evaluation: sum(x_i^2)/4000 - prod(cos(x_i/sqrt(i))) + 1.

    The sum term uses exact compensated summation (math.fsum).
    """
    arr = _as_array(x)
    d = arr.size
    s = math.fsum(np.square(arr, dtype=np.float64)) / 4000.0
    p = float(np.prod(np.cos(arr / np.sqrt(np.arange(1.0, d + 1.0)))))
    if counter is not None:
        counter.full_evals += 1
    return s - p + 1.0


def sphere_shifted(x, center: float = 0.0, counter: EvalCounter | None = None) -> float:
    """Sum of squared distances to a common center; convex smoke test."""
    arr = _as_array(x)
    if not math.isfinite(center):
        raise ValueError("center must be finite")
    val = math.fsum((float(v) - center) ** 2 for v in arr)
    if counter is not None:
        counter.full_evals += 1
    return val


class GriewankState:
    """Incremental-evaluation cache bound to one DecisionVector.

    Maintains sum(x_i^2)/4000 with Kahan compensation, a per-coordinate
    cosine cache, and the running cosine product.  The product is kept by
    divide-and-replace with two safety valves: a near-zero divisor guard
    and a periodic full refresh from the cache, both bounding drift.
    """

    __slots__ = (
        "x", "sum_term", "cos_cache", "product",
        "updates_since_refresh", "refresh_period", "zero_guard",
        "counter", "_comp",
    )

    def __init__(self, x: DecisionVector, refresh_period: int, zero_guard: float,
                 counter: EvalCounter | None):
        self.x = x
        self.refresh_period = refresh_period
        self.zero_guard = zero_guard
        self.counter = counter
        self.updates_since_refresh = 0
        self._comp = 0.0
        arr = x.values
        d = arr.size
        # In-place pipeline keeps peak transient memory at one d-length array.
        cache = np.arange(1.0, d + 1.0)
        np.sqrt(cache, out=cache)
        np.divide(arr, cache, out=cache)
        np.cos(cache, out=cache)
        self.cos_cache = cache
        self.sum_term = math.fsum(float(v) * float(v) for v in arr) / 4000.0
        self.product = float(np.prod(cache))
        if counter is not None:
            counter.full_evals += 1

    @property
    def dimension(self) -> int:
        return self.x.values.size

    def value(self) -> float:
        """Current objective, recoverable without any evaluation."""
        return self.sum_term - self.product + 1.0

    def refresh_product(self) -> None:
        self.product = float(np.prod(self.cos_cache))
        self.updates_since_refresh = 0

    def update(self, i: int, new_value: float) -> float:
        """Move coordinate i to new_value and return the updated objective.

        Counts as one incremental evaluation.  An identity update is
        short-circuited and leaves every cached quantity bit-identical.
        """
        xv = self.x.values
        if not 0 <= i < xv.size:
            raise IndexError(f"coordinate index {i} out of range for d={xv.size}")
        if not math.isfinite(new_value):
            raise ValueError("new coordinate value must be finite")
        counter = self.counter
        old = float(xv[i])
        if new_value == old:
            if counter is not None:
                counter.incremental_evals += 1
            return self.sum_term - self.product + 1.0
        xv[i] = new_value
        stored = float(xv[i])  # may round in single precision
        new_c = math.cos(stored / math.sqrt(i + 1.0))
        # Kahan-compensated sum adjustment.
        delta = (stored * stored - old * old) / 4000.0
        y = delta - self._comp
        t = self.sum_term + y
        self._comp = (t - self.sum_term) - y
        self.sum_term = t if t > 0.0 else 0.0
        old_c = float(self.cos_cache[i])
        self.cos_cache[i] = new_c
        self.updates_since_refresh += 1
        if self.updates_since_refresh >= self.refresh_period or abs(old_c) < self.zero_guard:
            self.refresh_product()
        else:
            p = self.product / old_c * new_c
            if p > 1.0:
                p = 1.0
            elif p < -1.0:
                p = -1.0
            self.product = p
        if counter is not None:
            counter.incremental_evals += 1
        return self.sum_term - self.product + 1.0


def griewank_init_state(x: DecisionVector, refresh_period: int = DEFAULT_REFRESH_PERIOD,
                        zero_guard: float = DEFAULT_ZERO_GUARD,
                        counter: EvalCounter | None = None) -> GriewankState:
    """Build the incremental cache from scratch; counts as one full evaluation."""
    if not isinstance(x, DecisionVector):
        x = DecisionVector(x)
    if refresh_period < 1:
        raise ValueError("refresh_period must be >= 1")
    if not 0.0 < zero_guard <= 1e-4:
        raise ValueError("zero_guard must lie in (0, 1e-4]")
    return GriewankState(x, refresh_period, zero_guard, counter)


def griewank_update(state: GriewankState, i: int, new_value: float) -> float:
    return state.update(i, new_value)


class GriewankObjective:
    """Griewank objective handle for the optimizers.

    When ``incremental`` is set, an optimizer may attach an update cache
    and probe single-coordinate moves at O(1) cost per move.
    """

    DOMAIN = (-600.0, 600.0)

    def __init__(self, dim: int, precision: Precision = Precision.DOUBLE,
                 incremental: bool = True,
                 refresh_period: int = DEFAULT_REFRESH_PERIOD,
                 zero_guard: float = DEFAULT_ZERO_GUARD):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        self.precision = precision
        self.supports_incremental = incremental
        self.refresh_period = refresh_period
        self.zero_guard = zero_guard
        self.counter = EvalCounter()

    def full(self, x) -> float:
        return griewank_full(x, counter=self.counter)

    def attach(self, x: DecisionVector) -> GriewankState:
        if not self.supports_incremental:
            raise RuntimeError("objective configured without incremental support")
        return griewank_init_state(x, self.refresh_period, self.zero_guard, self.counter)

    def default_bounds(self) -> BoxBounds:
        return BoxBounds.uniform(*self.DOMAIN)


class SphereObjective:
    """Shifted sphere; full evaluation only."""

    def __init__(self, dim: int, center: float = 0.0,
                 precision: Precision = Precision.DOUBLE):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        self.center = center
        self.precision = precision
        self.supports_incremental = False
        self.counter = EvalCounter()

    def full(self, x) -> float:
        return sphere_shifted(x, self.center, counter=self.counter)
