"""swbench: analytic shallow-water benchmarks, reference solver, error harness."""

from .core import (
    G,
    H_DRY,
    Chezy,
    CriticalityDiagnostics,
    DarcyWeisbach,
    FlowField,
    FlowField2D,
    FrictionLaw,
    Grid1D,
    Grid2D,
    LaminarTurbulent,
    LinearDrag,
    Manning,
    critical_height,
    eigenvalues,
    friction_slope,
    froude,
    integrate_ode,
    solve_bracketed,
)

__version__ = "0.1.0"

__all__ = [
    "G", "H_DRY", "Grid1D", "Grid2D", "FlowField", "FlowField2D",
    "Manning", "DarcyWeisbach", "Chezy", "LinearDrag", "LaminarTurbulent",
    "FrictionLaw", "CriticalityDiagnostics", "froude", "critical_height",
    "eigenvalues", "friction_slope", "solve_bracketed", "integrate_ode",
    "__version__",
]
