"""Closed-form solution at an exact n-photon resonance.

Near omega_eg = n omega the ladders |g1,N^(->, |g2,N^(+)> and |e,N-n> are
degenerate and the transition coupling splits each such manifold into a
triplet.  Everything here works in the per-manifold basis

    (|g1, N^(-)>, |g2, N^(+)>, |e, N-n>)

where N^(-)/N^(+) are Fock states displaced by +mu/omega and -mu/omega.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from math import pi, sqrt

import numpy as np

from .errors import DegenerateDerivative, DomainError
from .model import ModelParams
from .special import displaced_fock_coeffs, laguerre_fn, poisson_weights
from .state import StateVector

DETUNING_WARN = 0.1  # |delta_n| / omega
COUPLING_WARN = 0.1  # |V_N| / omega


@dataclass(frozen=True)
class ResonanceSpec:
    n: int
    detuning: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("resonance order n must be >= 1")


@dataclass(frozen=True)
class ResonantEigensystem:
    """Energies and states of manifold N.

    ``states[a]`` holds the coefficients of state a over the manifold basis.
    Full triplets list (E1, E2, E3) as in the closed-form solution; the
    two-state variant (N < n) lists the two degenerate displaced states.
    """

    manifold_n: int
    n: int
    energies: np.ndarray
    v_n: float
    states: np.ndarray

    @property
    def phase(self) -> float:
        return pi if self.v_n < 0 else 0.0

    @property
    def is_triplet(self) -> bool:
        return len(self.energies) == 3


def resonance_detuning(params: ModelParams, n: int) -> float:
    """delta_n = omega0 + mu^2/omega - n omega."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return params.omega_eg - n * params.omega


def resonance_spec(params: ModelParams, n: int) -> ResonanceSpec:
    spec = ResonanceSpec(n, resonance_detuning(params, n))
    if abs(spec.detuning) >= DETUNING_WARN * params.omega:
        warnings.warn(f"detuning {spec.detuning:g} is not small compared to omega", RuntimeWarning, stacklevel=2)
    return spec


def transition_matrix_element(params: ModelParams, manifold_n: int, n: int) -> float:
    """Signed V_N(n) = <g1,N^(-)| V |e,N-n>."""
    N = manifold_n
    if n < 1:
        raise DomainError("n must be >= 1")
    if N < n:
        raise DomainError(f"manifold N={N} lies below the resonance order n={n}")
    alpha = (params.mu / params.omega) ** 2
    lo = N - n
    return params.lam * (sqrt(lo) * laguerre_fn(lo - 1, N, alpha)
                         + sqrt(lo + 1) * laguerre_fn(lo + 1, N, alpha))


def rabi_frequency(params: ModelParams, manifold_n: int, n: int) -> float:
    """Multiphoton vacuum Rabi frequency 2 sqrt(2) |V_N(n)|."""
    return 2 * sqrt(2) * abs(transition_matrix_element(params, manifold_n, n))


def _unperturbed(params: ModelParams, N: int) -> float:
    return params.eps_g + params.omega * (N + 0.5) - params.mu**2 / params.omega


def resonant_eigensystem(params: ModelParams, manifold_n: int, n: int) -> ResonantEigensystem:
    v = transition_matrix_element(params, manifold_n, n)
    if abs(v) > COUPLING_WARN * params.omega:
        warnings.warn(f"|V_N|/omega = {abs(v) / params.omega:.3g}: resonant approximation is poor",
                      RuntimeWarning, stacklevel=2)
    e1 = _unperturbed(params, manifold_n)
    split = sqrt(2) * abs(v)
    s = (-1.0) ** n
    ph = np.sign(v) if v != 0 else 1.0  # e^{-i phi} for real V
    r2 = 1 / sqrt(2)
    states = np.array([
        [r2, -s * r2, 0.0],
        [0.5, 0.5 * s, ph * r2],
        [0.5, 0.5 * s, -ph * r2],
    ])
    return ResonantEigensystem(manifold_n, n, np.array([e1, e1 + split, e1 - split]), v, states)


def lower_manifold(params: ModelParams, manifold_n: int, n: int) -> ResonantEigensystem:
    """Two-state variant for 0 <= N < n: uncoupled displaced states."""
    if not 0 <= manifold_n < n:
        raise DomainError("lower manifolds have 0 <= N < n")
    e1 = _unperturbed(params, manifold_n)
    states = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    return ResonantEigensystem(manifold_n, n, np.array([e1, e1]), 0.0, states)


def inversion_fock(params: ModelParams, n: int, t_grid) -> np.ndarray:
    """W(t) = cos(Omega_n(n) t) for the |e,0> start."""
    return np.cos(rabi_frequency(params, n, n) * np.asarray(t_grid, dtype=float))


def inversion_coherent(params: ModelParams, n: int, nbar: float, t_grid, tail_eps: float = 1e-12) -> np.ndarray:
    """Poisson-weighted sum of Rabi cosines for a coherent-field start."""
    t = np.asarray(t_grid, dtype=float)
    weights = poisson_weights(nbar, tail_eps)
    freqs = np.array([rabi_frequency(params, N + n, n) for N in range(weights.size)])
    return np.cos(np.multiply.outer(t, freqs)) @ weights


def collapse_time(params: ModelParams, n: int, nbar: float) -> float:
    """Collapse-time estimate pi / (2 sqrt(nbar) dOmega/dN).

    The slope is the centred difference (Omega_{N+1} - Omega_{N-1}) / 2 at
    N = round(nbar) + n.
    """
    if nbar < 10:
        warnings.warn("collapse-time estimate assumes nbar >> sqrt(nbar)", RuntimeWarning, stacklevel=2)
    N = int(round(nbar)) + n
    lo = max(N - 1, n)
    slope = (rabi_frequency(params, N + 1, n) - rabi_frequency(params, lo, n)) / (N + 1 - lo)
    if abs(slope) < 1e-15 * params.omega:
        raise DegenerateDerivative(f"dOmega/dN = {slope:g} at N={N}")
    return pi / (2 * sqrt(nbar) * abs(slope))


class InitialState(Enum):
    EXCITED_VACUUM = "excited-vacuum"
    EXCITED_COHERENT = "excited-coherent"


@dataclass
class ResonantTrajectory:
    """Dressed-picture amplitudes over time.

    ``amps[t, k, :]`` are the coefficients on (|g1,N^(-)>, |g2,N^(+)>,
    |e,N-n>) of manifold ``manifolds[k]``.
    """

    params: ModelParams
    n: int
    t: np.ndarray
    manifolds: np.ndarray
    amps: np.ndarray

    def inversion(self) -> np.ndarray:
        p = np.abs(self.amps) ** 2
        return np.sum(p[..., 2] - p[..., 0] - p[..., 1], axis=1)

    def norm(self) -> np.ndarray:
        return np.sum(np.abs(self.amps) ** 2, axis=(1, 2))

    def to_fock(self, index: int, n_max: int) -> StateVector:
        """Reassemble sample ``index`` in the bare Fock basis up to n_max."""
        beta = self.params.mu / self.params.omega
        out = np.zeros((n_max + 1, 3), dtype=complex)
        for k, N in enumerate(self.manifolds):
            c = self.amps[index, k]
            if c[0] != 0:
                out[:, 0] += c[0] * displaced_fock_coeffs(N, beta, n_max).coeffs
            if c[1] != 0:
                out[:, 1] += c[1] * displaced_fock_coeffs(N, -beta, n_max).coeffs
            m = N - self.n
            if c[2] != 0 and m <= n_max:
                out[m, 2] += c[2]
        return StateVector(out.ravel())


def resonant_evolution(params: ModelParams, n: int, initial=InitialState.EXCITED_VACUUM,
                       t_grid=(0.0,), nbar: float = 0.0, tail_eps: float = 1e-12) -> ResonantTrajectory:
    """Evolve |e> x (vacuum or coherent field) in the dressed basis.

    Each bare state |e,M> lies in manifold N = M + n; its projection onto the
    triplet eigenstates is propagated with phases exp(-i E t).
    """
    initial = InitialState(initial)
    t = np.asarray(t_grid, dtype=float)
    if initial is InitialState.EXCITED_VACUUM:
        field_amps = np.ones(1)
    else:
        field_amps = np.sqrt(poisson_weights(nbar, tail_eps))
    manifolds = np.arange(field_amps.size) + n
    amps = np.zeros((t.size, manifolds.size, 3), dtype=complex)
    for k, N in enumerate(manifolds):
        es = resonant_eigensystem(params, int(N), n)
        c0 = np.array([0.0, 0.0, field_amps[k]])
        proj = es.states @ c0
        phases = np.exp(-1j * np.multiply.outer(t, es.energies))
        amps[:, k, :] = (phases * proj) @ es.states
    return ResonantTrajectory(params, n, t, manifolds, amps)


