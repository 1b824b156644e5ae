"""Model parameters and the truncated block-tridiagonal Hamiltonian.

Units: hbar = 1.  Basis ordering is |g1,0>, |g2,0>, |e,0>, |g1,1>, ... so the
amplitude of (level s, photon number N) sits at index 3*N + s.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import ceil, isfinite, sqrt

import numpy as np

from .errors import DimensionError, DomainError

G1, G2, E = 0, 1, 2
LEVELS = {"g1": G1, "g2": G2, "e": E}

# qutrit operators in the (g1, g2, e) basis
S_L = np.diag([-1.0, 1.0, 0.0])
S_T = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, -1.0, 0.0]])
SIGMA_Z = np.diag([-1.0, -1.0, 1.0])


@dataclass(frozen=True)
class ModelParams:
    """Couplings and energies of the qutrit + single mode system (hbar = 1)."""

    omega: float = 1.0
    eps_g: float = 0.0
    eps_e: float = 2.0
    delta: float = 0.0
    mu: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        for name in ("omega", "eps_g", "eps_e", "delta", "mu", "lam"):
            if not isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.omega <= 0:
            raise DomainError("omega must be positive")
        if self.eps_e < self.eps_g:
            raise DomainError("eps_e - eps_g must be >= 0")

    @classmethod
    def from_ratios(cls, lam=0.0, mu=0.0, omega0=2.0, delta=0.0):
        """Dimensionless parameters with omega = 1 and eps_g = 0."""
        return cls(omega=1.0, eps_g=0.0, eps_e=float(omega0), delta=float(delta),
                   mu=float(mu), lam=float(lam))

    @classmethod
    def at_resonance(cls, n, lam=0.0, mu=0.0, delta=0.0):
        """omega = 1 and omega0 chosen so that omega0 + mu^2 = n exactly."""
        return cls.from_ratios(lam=lam, mu=mu, omega0=n - mu * mu, delta=delta)

    @property
    def omega0(self) -> float:
        return self.eps_e - self.eps_g

    @property
    def omega_eg(self) -> float:
        """Excited-ladder offset including the mu^2/omega displacement shift."""
        return self.omega0 + self.mu**2 / self.omega

    @property
    def energy_offset(self) -> float:
        """Reference energy eps_g + omega/2 used for reported spectra."""
        return self.eps_g + 0.5 * self.omega

    @property
    def regime_ok(self) -> bool:
        """Whether |Delta| << omega < omega0 holds (factor-10 reading of <<)."""
        return 10 * abs(self.delta) <= self.omega < self.omega0

    def replace(self, **changes) -> "ModelParams":
        values = {k: getattr(self, k) for k in ("omega", "eps_g", "eps_e", "delta", "mu", "lam")}
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True)
class TruncationScheme:
    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise DimensionError(f"n_max must be an integer >= 1, got {self.n_max}")

    @property
    def dimension(self) -> int:
        return 3 * (self.n_max + 1)

    def doubled(self) -> "TruncationScheme":
        return TruncationScheme(2 * self.n_max)


def default_truncation(params: ModelParams, n: int = 0) -> TruncationScheme:
    """Starting cutoff for spectral work, refined later by doubling."""
    r = abs(params.mu) / params.omega
    return TruncationScheme(max(200, ceil(10 * r * r + 10 * r + 5 * n)))


def _as_trunc(trunc) -> TruncationScheme:
    if isinstance(trunc, TruncationScheme):
        return trunc
    return TruncationScheme(int(trunc))


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Real symmetric block-tridiagonal matrix with 3x3 blocks.

    ``diag_blocks[N]`` is the (N, N) block and ``off_blocks[N]`` the (N, N+1)
    block; the (N+1, N) block is its transpose.
    """

    diag_blocks: np.ndarray
    off_blocks: np.ndarray
    params: object = field(default=None, compare=False)

    @property
    def n_max(self) -> int:
        return self.diag_blocks.shape[0] - 1

    @property
    def dimension(self) -> int:
        return 3 * self.diag_blocks.shape[0]

    def to_dense(self) -> np.ndarray:
        d = self.dimension
        h = np.zeros((d, d))
        for N, blk in enumerate(self.diag_blocks):
            h[3 * N:3 * N + 3, 3 * N:3 * N + 3] = blk
        for N, blk in enumerate(self.off_blocks):
            h[3 * N:3 * N + 3, 3 * N + 3:3 * N + 6] = blk
            h[3 * N + 3:3 * N + 6, 3 * N:3 * N + 3] = blk.T
        return h

    def gershgorin(self) -> tuple[float, float]:
        """Interval [lo, hi] containing the spectrum."""
        diag = np.concatenate([np.diag(b) for b in self.diag_blocks])
        radius = np.abs(self.diag_blocks).sum(axis=2).ravel() - np.abs(diag)
        off = np.abs(self.off_blocks)
        radius[:-3] += off.sum(axis=2).ravel()
        radius[3:] += off.sum(axis=1).ravel()
        return float(np.min(diag - radius)), float(np.max(diag + radius))

    def spectral_radius_bound(self, shift: float = 0.0) -> float:
        """Gershgorin bound on the spectral radius of H - shift."""
        lo, hi = self.gershgorin()
        return max(abs(lo - shift), abs(hi - shift))

    def expectation(self, amps) -> float:
        amps = np.asarray(getattr(amps, "amps", amps))
        return float(np.real(np.vdot(amps, _matvec(self, amps))))


def build_hamiltonian(params: ModelParams, trunc) -> HamiltonianMatrix:
    """Fock-basis matrix of the polar-Lambda Hamiltonian.

    Diagonal entries eps_sigma + omega (N + 1/2), tunnelling Delta between g1
    and g2 inside each block, and (mu S_L + lam S_t) (a^+ + a) linking block N
    to N+1 with weight sqrt(N+1).
    """
    trunc = _as_trunc(trunc)
    n_max = trunc.n_max
    Ns = np.arange(n_max + 1)
    h_qutrit = np.array([[params.eps_g, params.delta, 0.0],
                         [params.delta, params.eps_g, 0.0],
                         [0.0, 0.0, params.eps_e]])
    diag = np.repeat(h_qutrit[None], n_max + 1, axis=0)
    diag += (params.omega * (Ns + 0.5))[:, None, None] * np.eye(3)[None]
    coupling = params.mu * S_L + params.lam * S_T
    off = np.sqrt(Ns[:-1] + 1.0)[:, None, None] * coupling[None]
    return HamiltonianMatrix(diag, off, params)


@dataclass(frozen=True)
class LConfigParams:
    """L-configuration qutrit: g1 <-> g2 and g2 <-> e dipole couplings."""

    eps_g1: float
    eps_g2: float
    eps_e: float
    g12: float
    g2e: float
    omega: float = 1.0

    def __post_init__(self):
        for name in ("eps_g1", "eps_g2", "eps_e", "g12", "g2e", "omega"):
            if not isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.omega <= 0:
            raise DomainError("omega must be positive")


def map_l_to_polar_lambda(lp: LConfigParams) -> ModelParams:
    """Polar-Lambda parameters unitarily equivalent to an L configuration."""
    return ModelParams(
        omega=lp.omega,
        eps_g=0.5 * (lp.eps_g1 + lp.eps_g2),
        eps_e=lp.eps_e,
        delta=0.5 * (lp.eps_g1 - lp.eps_g2),
        mu=lp.g12,
        lam=-lp.g2e / sqrt(2.0),
    )


def build_l_hamiltonian(lp: LConfigParams, trunc) -> HamiltonianMatrix:
    trunc = _as_trunc(trunc)
    n_max = trunc.n_max
    Ns = np.arange(n_max + 1)
    h_qutrit = np.diag([lp.eps_g1, lp.eps_g2, lp.eps_e])
    diag = np.repeat(h_qutrit[None], n_max + 1, axis=0)
    diag += (lp.omega * (Ns + 0.5))[:, None, None] * np.eye(3)[None]
    s12 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    s2e = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    coupling = lp.g12 * s12 + lp.g2e * s2e
    off = np.sqrt(Ns[:-1] + 1.0)[:, None, None] * coupling[None]
    return HamiltonianMatrix(diag, off, lp)


def _matvec(h: HamiltonianMatrix, v: np.ndarray) -> np.ndarray:
    x = v.reshape(-1, 3)
    y = np.einsum("nij,nj->ni", h.diag_blocks, x)
    y[:-1] += np.einsum("nij,nj->ni", h.off_blocks, x[1:])
    y[1:] += np.einsum("nji,nj->ni", h.off_blocks, x[:-1])
    return y.reshape(v.shape)


def apply_hamiltonian(h: HamiltonianMatrix, v):
    """H @ v in O(dimension) work; accepts an array or a StateVector."""
    amps = getattr(v, "amps", v)
    amps = np.asarray(amps)
    if amps.ndim != 1 or amps.size != h.dimension:
        raise DimensionError(f"vector of length {amps.size} does not match dimension {h.dimension}")
    out = _matvec(h, amps)
    if amps is not v:
        return type(v)(out)
    return out


def check_regime(params: ModelParams) -> None:
    if not params.regime_ok:
        warnings.warn(
            f"parameters outside |Delta| << omega < omega0 (Delta={params.delta}, "
            f"omega={params.omega}, omega0={params.omega0})",
            RuntimeWarning,
            stacklevel=2,
        )
