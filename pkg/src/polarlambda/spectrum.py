"""Low-lying spectrum, ground-state statistics and qutrit entanglement.

Small problems go to LAPACK (``scipy.linalg.eigh`` restricted to the lowest
k pairs).  Above ``DENSE_LIMIT`` a block Lanczos iteration with full
reorthogonalization is used; a block of width >= 3 resolves the exact
degeneracies that occur in this model (the g1/g2 displaced ladders).
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .dynamics import mandel_q, photon_distribution
from .errors import ConvergenceError, InvalidDensityMatrix
from .model import (HamiltonianMatrix, ModelParams, TruncationScheme, _matvec, build_hamiltonian,
                    default_truncation)
from .state import StateVector

log = logging.getLogger(__name__)

DENSE_LIMIT = 2000
RESIDUAL_TOL = 1e-9
CERTIFICATE_TOL = 1e-8
DEGENERACY_TOL = 1e-8
EIG_CLAMP = 1e-12


@dataclass
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray  # columns
    residuals: np.ndarray
    method: str = "dense"
    iterations: int = 0

    def state(self, i: int) -> StateVector:
        return StateVector(self.vectors[:, i])


def _residuals(h: HamiltonianMatrix, values, vectors) -> np.ndarray:
    hv = np.column_stack([_matvec(h, vectors[:, i]) for i in range(vectors.shape[1])])
    return np.linalg.norm(hv - vectors * values, axis=0)


def _dense(h: HamiltonianMatrix, k: int) -> EigenResult:
    w, v = sla.eigh(h.to_dense(), subset_by_index=[0, k - 1])
    return EigenResult(w, v, _residuals(h, w, v), "dense")


def lanczos(h: HamiltonianMatrix, k: int, block: int = 4, tol: float = RESIDUAL_TOL,
            max_basis: int | None = None, seed: int = 0) -> EigenResult:
    """Block Lanczos with full reorthogonalization for the k lowest pairs.

    Rayleigh-Ritz is done on the whole orthonormal Krylov basis every few
    blocks; iteration stops once all k residuals are below ``tol``.
    """
    dim = h.dimension
    block = max(block, 1)
    if max_basis is None:
        max_basis = min(dim, max(40 * k, 1500))
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((dim, block)))
    basis = np.empty((dim, 0))
    hbasis = np.empty((dim, 0))
    check_every = max(1, 24 // block)
    it = 0
    res = None
    while True:
        hq = np.column_stack([_matvec(h, Q[:, j]) for j in range(Q.shape[1])])
        basis = np.hstack([basis, Q])
        hbasis = np.hstack([hbasis, hq])
        it += 1
        m = basis.shape[1]
        exhausted = m >= max_basis
        if m >= k and (it % check_every == 0 or exhausted):
            T = basis.T @ hbasis
            T = 0.5 * (T + T.T)
            theta, S = np.linalg.eigh(T)
            theta, S = theta[:k], S[:, :k]
            vecs = basis @ S
            res = np.linalg.norm(hbasis @ S - vecs * theta, axis=0)
            if np.all(res <= tol):
                return EigenResult(theta, vecs, _residuals(h, theta, vecs), "lanczos", it)
        if exhausted:
            raise ConvergenceError(
                f"block Lanczos did not converge within {m} basis vectors",
                iterations=it, basis_size=m, residuals=None if res is None else res.tolist(),
            )
        # next block: H Q minus its projection on the basis, twice for stability
        W = hq
        for _ in range(2):
            W = W - basis @ (basis.T @ W)
        Q, R = np.linalg.qr(W)
        keep = np.abs(np.diag(R)) > 1e-10 * max(1.0, np.abs(R).max())
        Q = Q[:, keep]
        if Q.shape[1] == 0:
            # invariant subspace found; restart with a fresh random direction
            W = rng.standard_normal((dim, block))
            for _ in range(2):
                W = W - basis @ (basis.T @ W)
            Q, _ = np.linalg.qr(W)


def eigen_spectrum(h: HamiltonianMatrix, k: int, method: str = "auto") -> EigenResult:
    """The k lowest eigenpairs, ascending."""
    if not 1 <= k <= h.dimension:
        raise ValueError(f"k must lie in [1, {h.dimension}]")
    if method == "auto":
        method = "dense" if h.dimension <= DENSE_LIMIT else "lanczos"
    if method == "dense":
        out = _dense(h, k)
    elif method == "lanczos":
        out = lanczos(h, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    bad = out.residuals > RESIDUAL_TOL * _omega(h)
    if np.any(bad):
        raise ConvergenceError("eigenpair residuals above tolerance", residuals=out.residuals.tolist())
    return out


def _omega(h) -> float:
    return float(getattr(h.params, "omega", 1.0))


def reduced_density(psi) -> np.ndarray:
    """Qutrit density matrix after tracing out the field."""
    c = np.asarray(getattr(psi, "amps", psi)).reshape(-1, 3)
    return c.T @ c.conj()


def entropy3(rho) -> float:
    """von Neumann entropy in base 3 of a 3x3 density matrix."""
    rho = np.asarray(rho)
    if rho.shape != (3, 3):
        raise InvalidDensityMatrix("expected a 3x3 matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise InvalidDensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise InvalidDensityMatrix(f"trace {np.trace(rho).real} != 1")
    p = np.linalg.eigvalsh(rho)
    if p.min() < -EIG_CLAMP:
        raise InvalidDensityMatrix(f"negative eigenvalue {p.min():.3e}")
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log(p)) / np.log(3)))


@dataclass
class GroundStateReport:
    energy: float
    p_n: np.ndarray
    mean_photons: float
    q: float
    rho_r: np.ndarray
    entropy_s3: float
    n_max: int
    degeneracy: int
    certificate: float  # |E0(n_max) - E0(n_max/2)|
    state: StateVector = field(repr=False)
    params: ModelParams | None = None


def _position_matrix(vectors: np.ndarray) -> np.ndarray:
    """<v_i| a + a^+ |v_j> for block-ordered columns."""
    c = vectors.reshape(-1, 3, vectors.shape[1])
    s = np.sqrt(np.arange(1, c.shape[0]))[:, None, None]
    x = np.zeros_like(c)
    x[:-1] += s * c[1:]
    x[1:] += s * c[:-1]
    return vectors.T @ x.reshape(vectors.shape)


def ground_state(h: HamiltonianMatrix, degeneracy_tol: float = DEGENERACY_TOL, k: int = 4):
    """Lowest energy and a representative ground state.

    When several levels lie within ``degeneracy_tol`` of the lowest one (the
    parity doublet of the displaced ladders), the returned vector is the
    combination with the largest <a + a^+>, i.e. the state localized on one
    displaced ladder rather than an arbitrary mix picked by the solver.
    """
    res = eigen_spectrum(h, min(k, h.dimension))
    sel = res.values - res.values[0] < degeneracy_tol * _omega(h)
    vecs = res.vectors[:, sel]
    if vecs.shape[1] == 1:
        psi = vecs[:, 0]
    else:
        _, xv = np.linalg.eigh(_position_matrix(vecs))
        psi = vecs @ xv[:, -1]
    psi = psi / np.linalg.norm(psi)
    # deterministic global sign
    j = np.argmax(np.abs(psi))
    psi = psi * np.sign(psi[j])
    return float(res.values[0]), StateVector(psi), int(sel.sum())


def ground_state_report(params: ModelParams, trunc=None, *, offset: bool = True,
                        tol: float = CERTIFICATE_TOL, max_doublings: int = 3,
                        degeneracy_tol: float = DEGENERACY_TOL) -> GroundStateReport:
    """Ground energy, photon statistics and qutrit entropy.

    The cutoff is doubled until the ground energy moves by at most ``tol``
    (in units of omega); the finer of the last two solves is reported.
    """
    if trunc is None:
        trunc = default_truncation(params)
    elif not isinstance(trunc, TruncationScheme):
        trunc = TruncationScheme(int(trunc))
    e_prev, _, _ = ground_state(build_hamiltonian(params, trunc), degeneracy_tol)
    for _ in range(max_doublings):
        trunc = trunc.doubled()
        e0, psi, deg = ground_state(build_hamiltonian(params, trunc), degeneracy_tol)
        shift = abs(e0 - e_prev)
        if shift <= tol * params.omega:
            break
        e_prev = e0
    else:
        raise ConvergenceError(
            f"ground energy not converged in n_max (last shift {shift:.3e})",
            n_max=trunc.n_max, shift=shift,
        )
    p = photon_distribution(psi)
    rho = reduced_density(psi)
    N = np.arange(p.size)
    return GroundStateReport(
        energy=e0 - (params.energy_offset if offset else 0.0),
        p_n=p,
        mean_photons=float(p @ N),
        q=mandel_q(p),
        rho_r=rho,
        entropy_s3=entropy3(rho),
        n_max=trunc.n_max,
        degeneracy=deg,
        certificate=shift,
        state=psi,
        params=params,
    )


AXES = {"lambda": "lam", "lam": "lam", "mu": "mu"}


def _point(base: ModelParams, axis: str, value: float) -> ModelParams:
    try:
        name = AXES[axis]
    except KeyError:
        raise ValueError(f"sweep axis must be 'lambda' or 'mu', got {axis!r}") from None
    return base.replace(**{name: float(value)})


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or not np.all(np.isfinite(grid)):
        raise ValueError("sweep grid must be a finite 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("sweep grid must be ascending")
    return grid


def _ordered_map(fn, items, workers):
    workers = workers or os.cpu_count() or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


@dataclass
class LevelTable:
    axis: str
    grid: np.ndarray
    energies: np.ndarray  # (len(grid), k)
    n_max: int


def level_sweep(base: ModelParams, axis: str, grid, k: int, trunc=None, *,
                offset: bool = True, workers: int | None = None) -> LevelTable:
    """k lowest levels at every grid point of the coupling ``axis``."""
    grid = _check_grid(grid)
    if trunc is None:
        trunc = default_truncation(_point(base, axis, grid[-1]) if axis == "mu" else base)
    elif not isinstance(trunc, TruncationScheme):
        trunc = TruncationScheme(int(trunc))

    def one(value):
        p = _point(base, axis, value)
        vals = eigen_spectrum(build_hamiltonian(p, trunc), k).values
        return vals - (p.energy_offset if offset else 0.0)

    rows = _ordered_map(one, grid, workers)
    return LevelTable(axis, grid, np.vstack(rows), trunc.n_max)


@dataclass
class EntropyTable:
    axis: str
    grid: np.ndarray
    s3: np.ndarray
    reports: list = field(repr=False)


def entropy_sweep(base: ModelParams, axis: str, grid, trunc=None, *,
                  workers: int | None = None) -> EntropyTable:
    grid = _check_grid(grid)

    def one(value):
        return ground_state_report(_point(base, axis, value), trunc)

    reports = _ordered_map(one, grid, workers)
    return EntropyTable(axis, grid, np.array([r.entropy_s3 for r in reports]), reports)
