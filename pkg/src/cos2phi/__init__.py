"""Numerical laboratory for interference-based cos(2phi) superconducting qubits.

Charge-basis diagonalization of a two-junction SQUID with first and second
Josephson harmonics, decay/dephasing estimates under 1/f flux noise, 1/f
charge noise and dielectric loss, finite-temperature multilevel rate
reduction, Josephson-harmonics catalog of candidate implementations, and
parameter-space sweeps with T2 optimization.
"""

from .chargebasis import (
    ChargeOperator,
    charge_number_operator,
    cos_m_phi_operator,
    sin_m_phi_operator,
)
from .circuit import (
    CircuitParams,
    build_hamiltonian,
    charge_coupling_operator,
    flux_coupling_operator,
)
from .elements import MatrixElementReport, matrix_elements, parity_weights, symmetry_metric
from .errors import (
    ConvergenceError,
    Cos2PhiError,
    DegenerateTransitionError,
    EigensolverError,
    GradientConsistencyError,
    PoleError,
    SingularReductionError,
)
from .noise import (
    CoherenceReport,
    NoiseSpec,
    coherence_report,
    t1_dielectric,
    t1_flux,
    tphi_1f,
)
from .semiclassics import TwoLevelModel, kappa, sweetness, two_level_f01
from .spectrum import (
    GradientResult,
    Spectrum,
    charge_dispersion,
    converge_truncation,
    eigensystem,
    frequency_gradient,
    lowest_energies,
    spectrum_of,
    transition_frequency,
)
from .sweep import SweepGrid, SweepResult, default_grid, log_axis, optimize_t2, run_sweep
from .thermal import RateMatrix, build_rate_matrix, effective_qubit_rates

__version__ = "0.1.0"

__all__ = [
    "ChargeOperator",
    "charge_number_operator",
    "cos_m_phi_operator",
    "sin_m_phi_operator",
    "CircuitParams",
    "build_hamiltonian",
    "flux_coupling_operator",
    "charge_coupling_operator",
    "Spectrum",
    "GradientResult",
    "eigensystem",
    "spectrum_of",
    "lowest_energies",
    "transition_frequency",
    "charge_dispersion",
    "frequency_gradient",
    "converge_truncation",
    "MatrixElementReport",
    "matrix_elements",
    "parity_weights",
    "symmetry_metric",
    "NoiseSpec",
    "CoherenceReport",
    "tphi_1f",
    "t1_flux",
    "t1_dielectric",
    "coherence_report",
    "RateMatrix",
    "build_rate_matrix",
    "effective_qubit_rates",
    "TwoLevelModel",
    "kappa",
    "sweetness",
    "two_level_f01",
    "SweepGrid",
    "SweepResult",
    "log_axis",
    "default_grid",
    "run_sweep",
    "optimize_t2",
    "Cos2PhiError",
    "DegenerateTransitionError",
    "ConvergenceError",
    "GradientConsistencyError",
    "SingularReductionError",
    "PoleError",
    "EigensolverError",
]
