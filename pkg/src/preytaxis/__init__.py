"""Finite-volume simulator for a diffusive predator-prey system with prey-taxis.

The package covers the model layer (parameters, equilibria, stabilization
certificates), a cell-centered zero-flux grid, the explicit time stepper,
entropy/energy diagnostics, reference solutions for validation, scenario
configuration, and a batch runner with sweeps.
"""

from .config import (
    ConfigError,
    InitialCondition,
    ParseError,
    RunConfig,
    ValidationError,
    build_config,
    initial_state,
    parse_config,
    parse_items,
    scenario_items,
)
from .diagnostics import (
    DiagnosticsRecord,
    EnergyDecayReport,
    RunContext,
    check_energy_decay,
    csv_header,
    dissipation,
    energy,
    entropy_integral,
    entropy_lower_bound_residual,
    format_csv,
    record,
    write_csv,
)
from .dynamics import (
    BlowUp,
    ExcessiveClamping,
    SchemeConfig,
    State,
    StepAccounting,
    TaxisScheme,
    flux_u,
    reaction_rates,
    rhs,
    run_to_time,
    stable_dt,
    step,
)
from .grid import (
    Field,
    Grid,
    cell_gradient_sq,
    divergence,
    face_gradient,
    integrate,
    laplacian_neumann,
    read_snapshot,
    write_snapshot,
)
from .model import (
    ConditionViolated,
    Degenerate,
    InvalidTarget,
    ModelParams,
    Regime,
    StabilizationCertificate,
    SteadyState,
    certify,
    check_stabilization_condition,
    logistic_comparison,
    steady_states,
    taxis_mobility,
    waiting_time,
)
from .oracle import (
    DegenerateInput,
    OdeTrajectory,
    heat_eigenmode_error,
    homogeneous_ode,
    refinement_order,
)
from .runner import RunResult, execute, run_scenario, sweep

__version__ = "0.1.0"

__all__ = [
    "BlowUp",
    "ConditionViolated",
    "ConfigError",
    "Degenerate",
    "DegenerateInput",
    "DiagnosticsRecord",
    "EnergyDecayReport",
    "ExcessiveClamping",
    "Field",
    "Grid",
    "InitialCondition",
    "InvalidTarget",
    "ModelParams",
    "OdeTrajectory",
    "ParseError",
    "Regime",
    "RunConfig",
    "RunContext",
    "RunResult",
    "SchemeConfig",
    "StabilizationCertificate",
    "State",
    "SteadyState",
    "StepAccounting",
    "TaxisScheme",
    "ValidationError",
    "build_config",
    "cell_gradient_sq",
    "certify",
    "check_energy_decay",
    "check_stabilization_condition",
    "csv_header",
    "dissipation",
    "divergence",
    "face_gradient",
    "energy",
    "entropy_integral",
    "entropy_lower_bound_residual",
    "execute",
    "flux_u",
    "format_csv",
    "heat_eigenmode_error",
    "homogeneous_ode",
    "initial_state",
    "integrate",
    "laplacian_neumann",
    "logistic_comparison",
    "parse_config",
    "parse_items",
    "reaction_rates",
    "read_snapshot",
    "record",
    "refinement_order",
    "rhs",
    "run_scenario",
    "run_to_time",
    "scenario_items",
    "stable_dt",
    "steady_states",
    "step",
    "sweep",
    "taxis_mobility",
    "waiting_time",
    "write_csv",
    "write_snapshot",
]
