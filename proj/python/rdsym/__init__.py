"""Python bindings for the rdsym C++ core."""

from ._rdsym import (
    ConfigError,
    DomainError,
    ExactSolution,
    NumericsError,
    RdsymError,
    SpectralData,
    ToleranceError,
    admissible_intervals,
    alpha2_constraint,
    build_exact,
    linear_reaction_terms,
    quartic_roots_companion,
    quartic_spectrum,
    run_config,
    simulate_exact,
    solve_p_ode,
    steady_state,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "ExactSolution",
    "NumericsError",
    "RdsymError",
    "SpectralData",
    "ToleranceError",
    "admissible_intervals",
    "alpha2_constraint",
    "build_exact",
    "linear_reaction_terms",
    "quartic_roots_companion",
    "quartic_spectrum",
    "run_config",
    "simulate_exact",
    "solve_p_ode",
    "steady_state",
]
