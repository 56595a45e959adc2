"""optbench: hard optimization benchmarks with verified optima and
reference derivative-free solvers."""

from .benchmarks import (
    FloorParams,
    GridPeaksParams,
    HyperboloidParams,
    IntegralParams,
    IsolatedParams,
    KinkParams,
    NoisyParams,
    PathParams,
    RopeParams,
    VibrationParams,
    get_problem,
    problem_ids,
)
from .core import (
    Combinator,
    ContractViolation,
    Curve,
    Direction,
    FeasibleRegion,
    FlatRegions,
    GapReport,
    Manifold,
    PointSet,
    Problem,
    evaluate,
    is_feasible,
    optimum_gap,
)
from .harness import RunConfig, TrialTable, emit_report, run_trials, verify_suite
from .noise import NoiseKey, NoisePolicy, uniform, uniform_vector
from .numerics import (
    OdeSamples,
    Path,
    PathFunctional,
    QuadratureResult,
    analytic_step_response,
    closed_form_integral,
    functional_gradient,
    oscillatory_integral,
    path_energy,
    path_length,
    path_length_residual,
    rk4_step_response,
)
from .solvers import (
    SolveResult,
    SolverConfig,
    augmented_lagrangian_path,
    differential_evolution,
    feasibility_compare,
    nelder_mead_polish,
    simulated_annealing,
)

__version__ = "0.1.0"

__all__ = [
    "Combinator",
    "ContractViolation",
    "Curve",
    "Direction",
    "FeasibleRegion",
    "FlatRegions",
    "FloorParams",
    "GapReport",
    "GridPeaksParams",
    "HyperboloidParams",
    "IntegralParams",
    "IsolatedParams",
    "KinkParams",
    "Manifold",
    "NoiseKey",
    "NoisePolicy",
    "NoisyParams",
    "OdeSamples",
    "Path",
    "PathFunctional",
    "PathParams",
    "PointSet",
    "Problem",
    "QuadratureResult",
    "RopeParams",
    "RunConfig",
    "SolveResult",
    "SolverConfig",
    "TrialTable",
    "VibrationParams",
    "analytic_step_response",
    "augmented_lagrangian_path",
    "closed_form_integral",
    "differential_evolution",
    "emit_report",
    "evaluate",
    "feasibility_compare",
    "functional_gradient",
    "get_problem",
    "is_feasible",
    "nelder_mead_polish",
    "optimum_gap",
    "oscillatory_integral",
    "path_energy",
    "path_length",
    "path_length_residual",
    "problem_ids",
    "rk4_step_response",
    "run_trials",
    "simulated_annealing",
    "uniform",
    "uniform_vector",
    "verify_suite",
]
