"""Matrix mechanics of a particle in a 1D infinite square well.

Closed-form truncated operator matrices in the energy eigenbasis,
Heisenberg-picture time evolution, wave-packet collapse/revival
diagnostics, Ehrenfest checks, and a second-quantized Fock layer for
many particles in the same well.
"""

from .dynamics import (
    RunReport,
    ShortTimeResiduals,
    StateVector,
    TimeGrid,
    dispersion,
    ehrenfest_report,
    expectation,
    force_matrix,
    gaussian_packet,
    project_wavefunction,
    projection_capture,
    revival_time,
    short_time_expansion_check,
    spread_report,
    xt_x0_commutator,
)
from .errors import (
    ConfigError,
    InvariantViolation,
    MatrixwellError,
    NonConvergentDerivative,
    ProjectionError,
)
from .fock import (
    FockAlgebraReport,
    FockBasis,
    FockOperator,
    FockState,
    Statistics,
    annihilator,
    check_algebra,
    completeness_defect,
    condensate_state,
    creator,
    density_expectation,
    field_operator,
    heisenberg_field,
    many_body_hamiltonian,
    number_operator,
)
from .operators import (
    BasisTag,
    CommutatorReport,
    InteriorBlockSpec,
    OperatorMatrix,
    build_hamiltonian,
    build_momentum,
    build_position,
    canonical_commutator_report,
    commutator,
    commutator_trace,
    evolve,
    hamilton_derivative,
    identity,
)
from .well import (
    WellConfig,
    eigen_energy,
    eigenfunction,
    mode_frequency,
    momentum_element,
    position_element,
    wavenumber,
)

__version__ = "0.1.0"

__all__ = [
    "BasisTag",
    "CommutatorReport",
    "ConfigError",
    "FockAlgebraReport",
    "FockBasis",
    "FockOperator",
    "FockState",
    "InteriorBlockSpec",
    "InvariantViolation",
    "MatrixwellError",
    "NonConvergentDerivative",
    "OperatorMatrix",
    "ProjectionError",
    "RunReport",
    "ShortTimeResiduals",
    "StateVector",
    "Statistics",
    "TimeGrid",
    "WellConfig",
    "annihilator",
    "build_hamiltonian",
    "build_momentum",
    "build_position",
    "canonical_commutator_report",
    "check_algebra",
    "commutator",
    "commutator_trace",
    "completeness_defect",
    "condensate_state",
    "creator",
    "density_expectation",
    "dispersion",
    "ehrenfest_report",
    "eigen_energy",
    "eigenfunction",
    "evolve",
    "expectation",
    "field_operator",
    "force_matrix",
    "gaussian_packet",
    "hamilton_derivative",
    "heisenberg_field",
    "identity",
    "many_body_hamiltonian",
    "mode_frequency",
    "momentum_element",
    "number_operator",
    "position_element",
    "project_wavefunction",
    "projection_capture",
    "revival_time",
    "short_time_expansion_check",
    "spread_report",
    "wavenumber",
    "xt_x0_commutator",
]
