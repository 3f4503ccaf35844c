"""Memory-lean large-scale derivative-free optimization and benchmark harness."""

from .abo import AboConfig, AboState, InitialPointMode, abo_optimize, abo_sweep, abo_termination_check
from .metrics import (ComplexityFit, MemoryReport, Stopwatch, fit_loglog,
                      install_hooks, theoretical_memory, track_peak)
from .nelder_mead import (NmConfig, Simplex, SimplexMemoryError, StepOutcome,
                          nm_optimize, nm_step, simplex_diameter)
from .objective import (BoxBounds, DecisionVector, EvalCounter, GriewankObjective,
                        GriewankState, Precision, SphereObjective, griewank_full,
                        griewank_init_state, griewank_update, sphere_shifted)
from .result import OptimizationResult, Termination

__version__ = "0.1.0"

__all__ = [
    "AboConfig", "AboState", "InitialPointMode", "abo_optimize", "abo_sweep",
    "abo_termination_check", "ComplexityFit", "MemoryReport", "Stopwatch",
    "fit_loglog", "install_hooks", "theoretical_memory", "track_peak",
    "NmConfig", "Simplex", "SimplexMemoryError", "StepOutcome", "nm_optimize",
    "nm_step", "simplex_diameter", "BoxBounds", "DecisionVector", "EvalCounter",
    "GriewankObjective", "GriewankState", "Precision", "SphereObjective",
    "griewank_full", "griewank_init_state", "griewank_update", "sphere_shifted",
    "OptimizationResult", "Termination", "__version__",
]
