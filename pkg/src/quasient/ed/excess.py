"""Excess-of-entanglement tables from exact diagonalization."""

from __future__ import annotations

import logging

from quasient.ed.eigensolver import DEFAULT_SEED, lowest_eigenstates, symmetry_rotate
from quasient.ed.models import EigenState, ExcessRow
from quasient.ed.schmidt import schmidt_spectrum
from quasient.model.hamiltonians import build_spin_matrix
from quasient.model.models import XY, SpinChainModel
from quasient.model.symmetry import parity_matrix, reflection_matrix

logger = logging.getLogger(__name__)


def symmetric_eigenstates(
    model: SpinChainModel, M: int, *, seed: int = DEFAULT_SEED
) -> list[EigenState]:
    """Lowest M eigenstates rotated into reflection (and, for XY, parity) eigenstates."""
    H = build_spin_matrix(model)
    states = lowest_eigenstates(H, M, seed=seed)
    P = parity_matrix(model.n) if isinstance(model.kind, XY) else None
    return symmetry_rotate(states, reflection_matrix(model.n), P)


def excess_table(
    model: SpinChainModel, M: int, *, cut: int | None = None, seed: int = DEFAULT_SEED
) -> list[ExcessRow]:
    """One row per eigenstate with its half-chain entropy relative to the ground state."""
    states = symmetric_eigenstates(model, M, seed=seed)
    entropies = [schmidt_spectrum(state, cut).entropy for state in states]
    ground = entropies[0]
    if states[0].reflection_eig not in (1, None):
        logger.warning("Ground state of %s is reflection odd", model.describe())
    return [
        ExcessRow(
            index=i,
            energy=state.energy,
            reflection=state.reflection_eig,
            parity=state.parity_eig,
            entropy=entropy,
            dS=entropy - ground,
        )
        for i, (state, entropy) in enumerate(zip(states, entropies, strict=True))
    ]
