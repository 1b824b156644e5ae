"""Polar-Lambda qutrit coupled to a single oscillator mode.

Analytic multiphoton-resonance solutions, RK4 time evolution of the full
truncated Hamiltonian, low-lying spectra and ground-state entanglement.
"""

from .dynamics import (ObservableSeries, coherent_initial_state, dominant_frequency, evolve,
                       inversion, mandel_q, photon_distribution)
from .errors import (ConfigError, ConvergenceError, DegenerateDerivative, DimensionError, DomainError,
                     InvalidDensityMatrix, NormDriftError, PolarLambdaError, StabilityError,
                     TruncationError)
from .model import (HamiltonianMatrix, LConfigParams, ModelParams, TruncationScheme, apply_hamiltonian,
                    build_hamiltonian, build_l_hamiltonian, default_truncation, map_l_to_polar_lambda)
from .resonant import (InitialState, ResonantEigensystem, collapse_time, inversion_coherent,
                       inversion_fock, lower_manifold, rabi_frequency, resonance_detuning,
                       resonant_eigensystem, resonant_evolution, transition_matrix_element)
from .special import displaced_fock_coeffs, laguerre_fn, laguerre_poly
from .spectrum import (EigenResult, GroundStateReport, eigen_spectrum, entropy3, entropy_sweep,
                       ground_state_report, level_sweep, reduced_density)
from .state import StateVector

__version__ = "0.1.0"

__all__ = [
    "apply_hamiltonian",
    "build_hamiltonian",
    "build_l_hamiltonian",
    "coherent_initial_state",
    "collapse_time",
    "ConfigError",
    "ConvergenceError",
    "default_truncation",
    "DegenerateDerivative",
    "DimensionError",
    "DomainError",
    "displaced_fock_coeffs",
    "dominant_frequency",
    "eigen_spectrum",
    "EigenResult",
    "entropy3",
    "entropy_sweep",
    "evolve",
    "ground_state_report",
    "GroundStateReport",
    "HamiltonianMatrix",
    "InitialState",
    "InvalidDensityMatrix",
    "inversion",
    "inversion_coherent",
    "inversion_fock",
    "laguerre_fn",
    "laguerre_poly",
    "LConfigParams",
    "level_sweep",
    "lower_manifold",
    "mandel_q",
    "map_l_to_polar_lambda",
    "ModelParams",
    "NormDriftError",
    "ObservableSeries",
    "photon_distribution",
    "PolarLambdaError",
    "rabi_frequency",
    "reduced_density",
    "resonance_detuning",
    "resonant_eigensystem",
    "resonant_evolution",
    "ResonantEigensystem",
    "StabilityError",
    "StateVector",
    "transition_matrix_element",
    "TruncationError",
    "TruncationScheme",
]
