"""Independent reference implementations used by the tests."""

from fractions import Fraction
from math import factorial

import mpmath
import numpy as np


def displacement_element(s: int, sp: int, alpha: float) -> float:
    """<s| exp(b(a^+ - a)) |s'> with b = sqrt(alpha), from the factorial sum.

    The polynomial part is summed exactly in rationals; only the sqrt and exp
    prefactors use (60-digit) floating point.
    """
    a = Fraction(alpha)
    half, odd = divmod(s + sp, 2)
    poly = sum(Fraction((-1) ** (sp - k), factorial(k) * factorial(s - k) * factorial(sp - k)) * a ** (half - k)
               for k in range(min(s, sp) + 1))
    with mpmath.workdps(60):
        pre = mpmath.sqrt(factorial(s) * factorial(sp)) * mpmath.exp(-mpmath.mpf(alpha) / 2)
        if odd:
            pre *= mpmath.sqrt(mpmath.mpf(alpha))
        return float(pre * mpmath.mpf(poly.numerator) / poly.denominator)


def dense_hamiltonian(params, n_max: int) -> np.ndarray:
    """Entry-by-entry construction in the |sigma, N> basis, index 3N + sigma."""
    dim = 3 * (n_max + 1)
    H = np.zeros((dim, dim))
    eps = (params.eps_g, params.eps_g, params.eps_e)
    dipole = {(0, 0): -params.mu, (1, 1): params.mu, (0, 2): params.lam, (2, 0): params.lam,
              (1, 2): -params.lam, (2, 1): -params.lam}
    for N in range(n_max + 1):
        for s in range(3):
            H[3 * N + s, 3 * N + s] = eps[s] + params.omega * (N + 0.5)
        H[3 * N, 3 * N + 1] = H[3 * N + 1, 3 * N] = params.delta
        if N < n_max:
            for (s, s2), d in dipole.items():
                H[3 * N + s, 3 * (N + 1) + s2] = d * np.sqrt(N + 1)
                H[3 * (N + 1) + s2, 3 * N + s] = d * np.sqrt(N + 1)
    return H


def displaced_vector(N: int, beta: float, n_max: int) -> np.ndarray:
    """D(beta)|N> by exponentiating the truncated generator on a larger space."""
    from scipy.linalg import expm

    big = n_max + 60
    a = np.diag(np.sqrt(np.arange(1, big + 1)), 1)
    D = expm(beta * (a.T - a))
    return D[: n_max + 1, N]
