"""Nonstatic Fock-state light waves in a static medium: wave functions,
geometric/dynamical/total phases, the Hannay angle, and the nonstaticity
measure, every closed form backed by an independent numerical oracle."""

from .envelope import (
    EnvelopeParams,
    f,
    f_dot,
    f_ddot,
    f_range,
    make_params,
    nonstaticity_measure,
    ode_residual,
)
from .errors import DomainError, NonPositiveF, QuadratureError
from .numerics import (
    QuadratureGrid,
    TimeGrid,
    hermite_weighted,
    make_grid,
    unwrap_atan,
)
from .phases import (
    GIntegrals,
    PhaseRecord,
    dynamical_phase,
    g_integrals,
    geometric_phase,
    hannay_angle,
    phase_rate,
    phase_record,
    total_phase,
)
from .wavefunction import (
    WaveSample,
    density,
    density_surface,
    eigenfunction,
    full_wavefunction,
    packet_width,
)
from .oracle import (
    ValidationReport,
    berry_integrand_numeric,
    g_integrals_numeric,
    hamiltonian_expectation_numeric,
    ode_solve_f,
    recommended_q_grid,
    run_validation,
    schrodinger_residual,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "EnvelopeParams", "GIntegrals", "NonPositiveF", "PhaseRecord",
    "QuadratureError", "QuadratureGrid", "TimeGrid", "ValidationReport", "WaveSample",
    "berry_integrand_numeric", "density", "density_surface", "dynamical_phase",
    "eigenfunction", "f", "f_ddot", "f_dot", "f_range", "full_wavefunction",
    "g_integrals", "g_integrals_numeric", "geometric_phase",
    "hamiltonian_expectation_numeric", "hannay_angle", "hermite_weighted",
    "make_grid", "make_params", "nonstaticity_measure", "ode_residual",
    "ode_solve_f", "packet_width", "phase_rate", "phase_record",
    "recommended_q_grid", "run_validation", "schrodinger_residual",
    "total_phase", "unwrap_atan",
]
