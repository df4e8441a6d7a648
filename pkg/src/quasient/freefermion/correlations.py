"""Majorana correlation matrices of the vacuum and of quasiparticle excitations."""

from __future__ import annotations

import numpy as np

from quasient.exceptions import InputError
from quasient.freefermion.models import CorrelationMatrix, ExcitationSpec, QuasiparticleBasis


def _check_subsystem(basis: QuasiparticleBasis, L: int) -> None:
    if not 1 <= L <= basis.n:
        raise InputError(f"Subsystem size L={L} outside [1, {basis.n}]")


def _check_mode(basis: QuasiparticleBasis, k: int) -> None:
    if not 0 <= k < basis.n:
        raise InputError(f"Mode index {k} outside [0, {basis.n})")


def correlation_ground(basis: QuasiparticleBasis, L: int) -> CorrelationMatrix:
    """Γ^Ω = i(u* u^T − u u^H) = 2 Im(u u^H) with u the top 2L rows of V."""
    _check_subsystem(basis, L)
    u = basis.V[: 2 * L]
    gamma = 2.0 * np.imag(u @ u.conj().T)
    return CorrelationMatrix(Gamma=gamma, L=L, source="ground")


def chi(basis: QuasiparticleBasis, k: int, L: int) -> np.ndarray:
    """Rank-2 update χ_k = 2i(v* v^T − v v^H) = 4 Im(v v^H) on the top 2L rows.

    For a mode fully inside the subsystem iχ has eigenvalues ±2, so
    tr[(iχ)²] = 8; in general tr[(iχ)²] = 8(|v|⁴ − |v·v|²).
    """
    _check_subsystem(basis, L)
    _check_mode(basis, k)
    v = basis.V[: 2 * L, k]
    update = 4.0 * np.imag(np.outer(v, v.conj()))
    return 0.5 * (update - update.T)


def correlation_excited(
    basis: QuasiparticleBasis, spec: ExcitationSpec, L: int
) -> CorrelationMatrix:
    """Γ^Φ = Γ^Ω − Σ_{κ∈K} χ_κ for Φ = Π_{κ∈K} b†_κ |Ω⟩."""
    spec.validate(basis.n)
    ground = correlation_ground(basis, L)
    if spec.is_ground:
        return ground
    gamma = np.array(ground.Gamma)
    for k in spec.occupied:
        gamma -= chi(basis, k, L)
    return CorrelationMatrix(Gamma=gamma, L=L, source=spec.describe())


def half_chain_mode_weight(basis: QuasiparticleBasis, k: int, L: int) -> float:
    """⟨Ω| b†_{k;L} b_{k;L} |Ω⟩ = Σ_l |u_k · u_l|² for the mode cut to the first L sites."""
    _check_subsystem(basis, L)
    _check_mode(basis, k)
    u = basis.V[: 2 * L]
    overlaps = u[:, k] @ u
    return float(np.sum(np.abs(overlaps) ** 2))
