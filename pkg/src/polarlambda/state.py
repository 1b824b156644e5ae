"""State vectors over the product basis {g1, g2, e} x Fock."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .model import LEVELS


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes C_{sigma,N}, stored flat at index 3*N + sigma."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size % 3:
            raise DimensionError("state length must be a multiple of 3")
        object.__setattr__(self, "amps", amps)

    @property
    def n_max(self) -> int:
        return self.amps.size // 3 - 1

    @property
    def dimension(self) -> int:
        return self.amps.size

    def blocks(self) -> np.ndarray:
        """View of shape (n_max + 1, 3): rows are photon numbers."""
        return self.amps.reshape(-1, 3)

    def norm2(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    @classmethod
    def basis(cls, level, N: int, n_max: int) -> "StateVector":
        amps = np.zeros(3 * (n_max + 1), dtype=complex)
        amps[3 * N + _level_index(level)] = 1.0
        return cls(amps)


def _level_index(level) -> int:
    if isinstance(level, str):
        return LEVELS[level]
    return int(level)
