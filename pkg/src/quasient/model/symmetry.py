"""Spatial reflection and spin-flip parity in the σᶻ product basis."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from quasient.exceptions import InputError


def _basis_indices(n: int) -> np.ndarray:
    if n < 1:
        raise InputError(f"Need at least one site, got n={n}")
    return np.arange(1 << n, dtype=np.int64)


def reversed_bits(n: int) -> np.ndarray:
    """Basis index of the mirrored configuration for every basis state."""
    states = _basis_indices(n)
    mirrored = np.zeros_like(states)
    for bit in range(n):
        mirrored |= ((states >> bit) & 1) << (n - 1 - bit)
    return mirrored


def reflection_matrix(n: int) -> sp.csr_matrix:
    """Permutation R mapping site j to site n−1−j."""
    states = _basis_indices(n)
    ones = np.ones(states.size)
    return sp.csr_matrix((ones, (reversed_bits(n), states)), shape=(states.size, states.size))


def popcount(states: np.ndarray, n: int) -> np.ndarray:
    """Number of down spins (set bits) in each basis index."""
    counts = np.zeros_like(states)
    for bit in range(n):
        counts += (states >> bit) & 1
    return counts


def parity_matrix(n: int) -> sp.csr_matrix:
    """Diagonal P = Π σᶻ; bit value 1 is a down spin."""
    states = _basis_indices(n)
    signs = 1.0 - 2.0 * (popcount(states, n) & 1)
    return sp.diags(signs, format="csr")


def marshall_signs(n: int) -> np.ndarray:
    """(−1)^(number of down spins on odd sites) for every basis state."""
    states = _basis_indices(n)
    odd = np.zeros_like(states)
    for site in range(1, n, 2):
        odd += (states >> (n - 1 - site)) & 1
    return 1.0 - 2.0 * (odd & 1)
