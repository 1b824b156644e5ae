"""Generalized Laguerre polynomials, Laguerre functions and displaced Fock states.

The Laguerre function

    I_{s,s'}(a) = sqrt(s'!/s!) exp(-a/2) a^{(s-s')/2} L_{s'}^{s-s'}(a)

gives the Fock-basis matrix elements of the real displacement operator,
<M| exp(b (a^+ - a)) |N> = I_{M,N}(b^2) for b >= 0.  It obeys
I_{s,s'} = (-1)^{s-s'} I_{s',s}, which is how the s < s' half is evaluated
(the polynomial is only ever evaluated with a nonnegative upper index).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, lgamma, log, sqrt

import numpy as np

from .errors import DomainError, TruncationError

# tail mass allowed beyond the requested cutoff
TAIL_TOL = 1e-10


def laguerre_poly(n: int, l: int, alpha: float) -> float:
    """L_n^l(alpha) by the forward three-term recurrence in n."""
    if n < 0:
        raise DomainError(f"Laguerre degree must be >= 0, got {n}")
    alpha = float(alpha)
    prev, cur = 0.0, 1.0
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + l - alpha) * cur - (k + l) * prev) / (k + 1)
    return cur


def _log_prefactor(s: int, sp: int, alpha: float) -> float:
    # log of sqrt(s'!/s!) e^{-a/2} a^{(s-s')/2}, for s >= s' and alpha > 0
    return 0.5 * (lgamma(sp + 1) - lgamma(s + 1)) - 0.5 * alpha + 0.5 * (s - sp) * log(alpha)


def laguerre_fn(s: int, s_prime: int, alpha: float) -> float:
    """Laguerre function I_{s,s'}(alpha); zero if either index is negative."""
    if s < 0 or s_prime < 0:
        return 0.0
    alpha = float(alpha)
    if alpha < 0 or not np.isfinite(alpha):
        raise DomainError(f"alpha must be finite and >= 0, got {alpha}")
    if s < s_prime:
        sign = -1.0 if (s_prime - s) % 2 else 1.0
        return sign * laguerre_fn(s_prime, s, alpha)
    if alpha == 0.0:
        return 1.0 if s == s_prime else 0.0
    poly = laguerre_poly(s_prime, s - s_prime, alpha)
    if poly == 0.0:
        return 0.0
    # fold the (possibly huge/tiny) prefactor in through log space
    mag = _log_prefactor(s, s_prime, alpha) + log(abs(poly))
    return float(np.copysign(exp(mag), poly))


def laguerre_fn_column(n: int, m_max: int, alpha: float) -> np.ndarray:
    """Vector [I_{M,n}(alpha) for M = 0..m_max], vectorized over M."""
    if n < 0 or m_max < 0:
        raise DomainError("indices must be nonnegative")
    alpha = float(alpha)
    out = np.zeros(m_max + 1)
    if alpha == 0.0:
        if n <= m_max:
            out[n] = 1.0
        return out
    big = np.arange(max(n, 0), m_max + 1)
    if big.size:
        # M >= n: L_n^{M-n}, fixed degree, vector of upper indices
        l = (big - n).astype(float)
        prev, cur = np.zeros_like(l), np.ones_like(l)
        for k in range(n):
            prev, cur = cur, ((2 * k + 1 + l - alpha) * cur - (k + l) * prev) / (k + 1)
        logpre = np.array([_log_prefactor(int(M), n, alpha) for M in big])
        with np.errstate(divide="ignore"):
            out[big] = np.sign(cur) * np.exp(logpre + np.log(np.abs(cur)))
    small = np.arange(0, min(n, m_max + 1))
    if small.size:
        # M < n: I_{M,n} = (-1)^{n-M} I_{n,M}, degree M varies, upper index n-M
        l = (n - small).astype(float)
        prev, cur = np.zeros_like(l), np.ones_like(l)
        vals = np.empty_like(l)
        for k in range(small.size):
            vals[k] = cur[k]
            prev, cur = cur, ((2 * k + 1 + l - alpha) * cur - (k + l) * prev) / (k + 1)
        logpre = np.array([_log_prefactor(n, int(M), alpha) for M in small])
        sign = np.where((n - small) % 2, -1.0, 1.0)
        with np.errstate(divide="ignore"):
            out[small] = sign * np.sign(vals) * np.exp(logpre + np.log(np.abs(vals)))
    return out


@dataclass(frozen=True)
class DisplacedFockCoeffs:
    """Expansion of exp(beta (a^+ - a)) |source_n> over Fock states 0..m_max."""

    source_n: int
    beta: float
    coeffs: np.ndarray

    @property
    def m_max(self) -> int:
        return self.coeffs.size - 1

    @property
    def tail_mass(self) -> float:
        return max(0.0, 1.0 - float(np.sum(self.coeffs**2)))


def displaced_fock_coeffs(source_n: int, beta: float, m_max: int) -> DisplacedFockCoeffs:
    """Fock amplitudes of the displaced Fock state D(beta)|source_n>.

    Positive ``beta`` gives I_{M,N}(beta^2), negative gives I_{N,M}(beta^2).
    Raises TruncationError when more than 1e-10 of the norm lies above
    ``m_max``.
    """
    beta = float(beta)
    col = laguerre_fn_column(source_n, m_max, beta * beta)
    if beta < 0:
        col = col * np.where((np.arange(m_max + 1) - source_n) % 2, -1.0, 1.0)
    out = DisplacedFockCoeffs(source_n, beta, col)
    if out.tail_mass > TAIL_TOL:
        raise TruncationError(
            f"displaced Fock state N={source_n}, beta={beta}: tail mass "
            f"{out.tail_mass:.3e} beyond m_max={m_max}"
        )
    return out


def coherent_amplitudes(nbar: float, m_max: int) -> np.ndarray:
    """Poisson-amplitude vector e^{-nbar/2} nbar^{M/2} / sqrt(M!)."""
    m = np.arange(m_max + 1)
    if nbar == 0:
        return (m == 0).astype(float)
    logs = -0.5 * nbar + 0.5 * m * log(nbar) - 0.5 * np.array([lgamma(k + 1) for k in m])
    return np.exp(logs)


def poisson_weights(nbar: float, tail_eps: float = 1e-12) -> np.ndarray:
    """Poisson(nbar) probabilities truncated where the remaining tail < tail_eps."""
    if nbar < 0:
        raise DomainError("nbar must be >= 0")
    if nbar == 0:
        return np.ones(1)
    weights = []
    cum = 0.0
    N = 0
    while True:
        w = exp(-nbar + N * log(nbar) - lgamma(N + 1))
        weights.append(w)
        cum += w
        if N > nbar and 1.0 - cum < tail_eps:
            break
        # past the mode the terms decrease; stop once negligible or underflowed
        if N > nbar and (w == 0.0 or (N > nbar + 10 * sqrt(nbar) + 50 and w < tail_eps * 1e-3)):
            break
        N += 1
    return np.array(weights)
