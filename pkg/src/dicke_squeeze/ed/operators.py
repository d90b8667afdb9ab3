"""Sparse operator primitives on the boson and spin factors.

Everything is kept real: Hamiltonian pieces are exactly symmetric matrices,
momentum-like quadratures are represented by exactly antisymmetric generators
M (the observable being i*M). Spin operators act on N-bit masks, bit i set
meaning spin i up; S_z|up> = +1/2|up>.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def boson_annihilation(n_max: int) -> sp.csr_matrix:
    """a with the hard cutoff a'|n_max> = 0; <n-1|a|n> = sqrt(n)."""
    root = np.sqrt(np.arange(1, n_max + 1))
    return sp.diags(root, offsets=1, format="csr")


def boson_number(n_max: int) -> sp.csr_matrix:
    return sp.diags(np.arange(n_max + 1, dtype=float), format="csr")


def boson_x(n_max: int) -> sp.csr_matrix:
    """a + a' (symmetric)."""
    root = np.sqrt(np.arange(1, n_max + 1))
    return sp.diags([root, root], offsets=[1, -1], format="csr")


def boson_momentum_generator(n_max: int) -> sp.csr_matrix:
    """a' - a (antisymmetric); the quadrature i(a'-a) is i times this."""
    root = np.sqrt(np.arange(1, n_max + 1))
    return sp.diags([root, -root], offsets=[-1, 1], format="csr")


def spin_z_values(n_spins: int, weights=None) -> np.ndarray:
    """Diagonal of sum_i w_i S_z^i over the 2^N spin basis."""
    if weights is None:
        weights = np.ones(n_spins)
    weights = np.asarray(weights, dtype=float)
    s = np.arange(1 << n_spins, dtype=np.uint64)
    diag = np.zeros(s.size)
    for i in range(n_spins):
        bit = ((s >> np.uint64(i)) & np.uint64(1)).astype(float)
        diag += weights[i] * (bit - 0.5)
    return diag


def spin_x_total(n_spins: int, weights=None) -> sp.csr_matrix:
    """sum_i w_i S_x^i: flips spin i with amplitude w_i/2 (symmetric)."""
    if weights is None:
        weights = np.ones(n_spins)
    weights = np.asarray(weights, dtype=float)
    dim = 1 << n_spins
    s = np.arange(dim)
    rows, cols, data = [], [], []
    for i in range(n_spins):
        rows.append(s)
        cols.append(s ^ (1 << i))
        data.append(np.full(dim, 0.5 * weights[i]))
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    mat.sum_duplicates()
    return mat


def spin_flip_total(n_spins: int, weights=None) -> sp.csr_matrix:
    """sum_i w_i (S_+^i + S_-^i): flips spin i with amplitude w_i (symmetric).

    This is the combination whose collective bosonization carries unit weight
    (sum_i (S_+^i + S_-^i) -> sqrt(N)(b' + b) near the polarized state), so it
    is what the spin-boson coupling terms are built from.
    """
    return 2.0 * spin_x_total(n_spins, weights)


def spin_pm_total(n_spins: int) -> sp.csr_matrix:
    """S_+ - S_- summed over sites (antisymmetric): +1 on an up-flip of any
    site, -1 on the corresponding down-flip."""
    dim = 1 << n_spins
    s = np.arange(dim)
    rows, cols, data = [], [], []
    for i in range(n_spins):
        bit = 1 << i
        down = s[(s & bit) == 0]
        # S_+ entry |s or bit><s|, S_- entry is minus its transpose
        rows.append(down | bit)
        cols.append(down)
        data.append(np.ones(down.size))
        rows.append(down)
        cols.append(down | bit)
        data.append(-np.ones(down.size))
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    mat.sum_duplicates()
    return mat


def ising_xx_ring(n_spins: int) -> sp.csr_matrix:
    """sum_n S_x^n S_x^{n+1} with periodic wrap: flips each adjacent pair with
    amplitude 1/4 (for N = 2 the single bond is counted twice, matching the
    literal ring sum)."""
    if n_spins < 2:
        raise ValueError("the ring term needs n_spins >= 2")
    dim = 1 << n_spins
    s = np.arange(dim)
    rows, cols, data = [], [], []
    for n in range(n_spins):
        mask = (1 << n) | (1 << ((n + 1) % n_spins))
        rows.append(s)
        cols.append(s ^ mask)
        data.append(np.full(dim, 0.25))
    mat = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    mat.sum_duplicates()
    return mat
