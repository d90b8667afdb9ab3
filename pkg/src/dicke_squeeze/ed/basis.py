"""Truncated boson (x) spin-1/2^N product basis bookkeeping.

Basis states are |n, s> with n the boson occupation (0..n_max, hard cutoff)
and s an N-bit mask, bit i set meaning spin i points up. Flat index =
n * 2^N + s, so the boson occupation is the major axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BasisDescriptor:
    n_spins: int
    n_max: int

    def __post_init__(self):
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise ValueError("n_spins must be an integer >= 1")
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError("n_max must be an integer >= 0")

    @property
    def spin_dim(self) -> int:
        return 1 << self.n_spins

    @property
    def boson_dim(self) -> int:
        return self.n_max + 1

    @property
    def dim(self) -> int:
        return self.boson_dim * self.spin_dim

    def index(self, n: int, spins: int) -> int:
        """Flat index of |n, spin-bitmask>."""
        if not (0 <= n <= self.n_max):
            raise ValueError(f"boson occupation {n} outside 0..{self.n_max}")
        if not (0 <= spins < self.spin_dim):
            raise ValueError(f"spin bitmask {spins} outside 0..{self.spin_dim - 1}")
        return n * self.spin_dim + spins

    def occupation(self, index: int) -> tuple[int, int]:
        """Inverse of ``index``: (boson occupation, spin bitmask)."""
        if not (0 <= index < self.dim):
            raise ValueError(f"index {index} outside 0..{self.dim - 1}")
        return divmod(index, self.spin_dim)


def build_basis(n_spins: int, n_max: int) -> BasisDescriptor:
    return BasisDescriptor(n_spins=n_spins, n_max=n_max)


def parity_diagonal(basis: BasisDescriptor) -> np.ndarray:
    """Diagonal (+-1) of the conserved parity (-1)^(n + number of up spins).

    All Hamiltonians built here (ideal, disordered, Ising-coupled) commute
    with it: the coupling flips one spin while shifting n by one, and the
    Ising term flips spins in pairs.
    """
    idx = np.arange(basis.dim, dtype=np.uint64)
    n = idx >> np.uint64(basis.n_spins)
    spins = idx & np.uint64(basis.spin_dim - 1)
    ups = np.bitwise_count(spins)
    return np.where((n + ups) % 2 == 0, 1.0, -1.0)
