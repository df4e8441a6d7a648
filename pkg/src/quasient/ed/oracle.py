"""Cross-checks of the free-fermion machinery against explicit many-body states."""

from __future__ import annotations

import logging

import numpy as np
import scipy.sparse as sp

from quasient.ed.eigensolver import DEFAULT_SEED, cluster_tolerance, energy_clusters
from quasient.ed.excess import symmetric_eigenstates
from quasient.ed.models import OracleReport
from quasient.ed.schmidt import schmidt_spectrum
from quasient.exceptions import SizeCapError
from quasient.freefermion.correlations import correlation_excited
from quasient.freefermion.entropy import spectrum_from_gamma
from quasient.freefermion.models import (
    DEFAULT_TOLERANCES,
    CorrelationMatrix,
    ExcitationSpec,
    QuasiparticleBasis,
    Tolerances,
)
from quasient.freefermion.solver import diagonalize
from quasient.model.hamiltonians import build_spin_matrix, build_xy_majorana
from quasient.model.jordan_wigner import majorana_operators
from quasient.model.models import DEFAULT_SPIN_CAP, SpinChainModel
from quasient.model.symmetry import parity_matrix, reflection_matrix

logger = logging.getLogger(__name__)


def annihilation_operators(
    basis: QuasiparticleBasis, majoranas: list[sp.csr_matrix] | None = None
) -> list[sp.csr_matrix]:
    """Explicit b_k = (1/√2) Σ_i V*_ik ŵ_i on the 2^n spin space."""
    ops = majoranas if majoranas is not None else majorana_operators(basis.n)
    result: list[sp.csr_matrix] = []
    for k in range(basis.n):
        coefficients = basis.V[:, k].conj() / np.sqrt(2.0)
        b = sp.csr_matrix(ops[0].shape, dtype=complex)
        for c, w in zip(coefficients, ops, strict=True):
            if c != 0:
                b = b + c * w
        result.append(b.tocsr())
    return result


def quasiparticle_vacuum(
    basis: QuasiparticleBasis,
    annihilators: list[sp.csr_matrix] | None = None,
    *,
    seed: int = DEFAULT_SEED,
) -> np.ndarray:
    """The state annihilated by every b_k, obtained as Π_k (1 − n_k) applied to a random vector."""
    bs = annihilators if annihilators is not None else annihilation_operators(basis)
    dim = 1 << basis.n
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    for b in bs:
        psi = psi - b.conj().T @ (b @ psi)
    return psi / np.linalg.norm(psi)


def quasiparticle_state(
    basis: QuasiparticleBasis,
    spec: ExcitationSpec,
    annihilators: list[sp.csr_matrix] | None = None,
    vacuum: np.ndarray | None = None,
) -> np.ndarray:
    """Explicit b†_{κ1} ··· b†_{κm} |Ω⟩."""
    spec.validate(basis.n)
    bs = annihilators if annihilators is not None else annihilation_operators(basis)
    psi = quasiparticle_vacuum(basis, bs) if vacuum is None else vacuum
    for k in reversed(spec.occupied):
        psi = bs[k].conj().T @ psi
    return psi / np.linalg.norm(psi)


def majorana_correlations(
    vector: np.ndarray, L: int, majoranas: list[sp.csr_matrix] | None = None
) -> CorrelationMatrix:
    """Γ_ij = Im ⟨ψ|ŵ_i ŵ_j|ψ⟩ for the first 2L Majoranas."""
    n = int(vector.size).bit_length() - 1
    ops = majoranas if majoranas is not None else majorana_operators(n)
    images = np.column_stack([ops[a] @ vector for a in range(2 * L)])
    expectations = images.conj().T @ images
    gamma = np.imag(expectations)
    np.fill_diagonal(gamma, 0.0)
    return CorrelationMatrix(Gamma=gamma, L=L, source="ed")


def compare_quasiparticle_states(
    model: SpinChainModel,
    L: int | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OracleReport:
    """Compare the vacuum and every single excitation against explicit states.

    Each state is built by applying Jordan-Wigner images of b†_κ to the explicit
    vacuum. Entropies, correlation matrices, energies and symmetry labels are
    checked against the free-fermion formulas.
    """
    n = model.n
    L = n // 2 if L is None else L
    basis = diagonalize(build_xy_majorana(model), tolerances)
    H = build_spin_matrix(model).matrix
    R = reflection_matrix(n)
    P = parity_matrix(n)
    ops = majorana_operators(n)
    bs = annihilation_operators(basis, ops)
    vacuum = quasiparticle_vacuum(basis, bs)
    vacuum_reflection = float(np.real(np.vdot(vacuum, R @ vacuum)))

    report = OracleReport(model=model.describe(), n=n, L=L)
    specs = [ExcitationSpec()] + [ExcitationSpec.of(k) for k in range(n)]
    for spec in specs:
        psi = quasiparticle_state(basis, spec, bs, vacuum)
        ff_corr = correlation_excited(basis, spec, L)
        ed_corr = majorana_correlations(psi, L, ops)
        s_ff = spectrum_from_gamma(ff_corr, tolerances).entropy
        s_ed = schmidt_spectrum(psi, L).entropy
        energy = float(np.real(np.vdot(psi, H @ psi)))
        report.record(
            entropy_error=abs(s_ff - s_ed),
            energy_error=abs(energy - basis.energy(spec.occupied)),
            gamma_error=float(np.abs(ff_corr.Gamma - ed_corr.Gamma).max(initial=0.0)),
        )
        parity = float(np.real(np.vdot(psi, P @ psi)))
        reflection = float(np.real(np.vdot(psi, R @ psi))) * vacuum_reflection
        expected_reflection = basis.reflection_label(spec.occupied)
        if abs(parity - basis.parity_label(spec.occupied)) > 1e-8 or (
            expected_reflection != 0 and abs(reflection - expected_reflection) > 1e-8
        ):
            report.label_mismatches += 1
    return report


def _subset_energies(basis: QuasiparticleBasis) -> tuple[np.ndarray, np.ndarray]:
    n = basis.n
    if n > DEFAULT_SPIN_CAP:
        raise SizeCapError(f"n={n} exceeds the ED cap", size=n, cap=DEFAULT_SPIN_CAP)
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    return basis.ground_energy + bits @ basis.epsilon, masks


def compare_eigenstates(
    model: SpinChainModel,
    n_states: int,
    L: int | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    *,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Match the lowest ED eigenstates to free-fermion occupations by energy.

    States in degenerate ED clusters, or whose energy is shared by several
    occupation sets, are skipped. Reflection labels are compared relative to
    the ground state.
    """
    n = model.n
    L = n // 2 if L is None else L
    basis = diagonalize(build_xy_majorana(model), tolerances)
    states = symmetric_eigenstates(model, n_states, seed=seed)
    energies, masks = _subset_energies(basis)
    ground_reflection = states[0].reflection_eig or 1

    report = OracleReport(model=model.describe(), n=n, L=L)
    for cluster in energy_clusters(states):
        if len(cluster) > 1:
            report.states_skipped += len(cluster)
            continue
        state = states[cluster[0]]
        candidates = np.flatnonzero(
            np.abs(energies - state.energy) <= cluster_tolerance(state.energy)
        )
        if candidates.size != 1:
            logger.info(
                "E=%.10f matches %d occupation sets; skipped", state.energy, candidates.size
            )
            report.states_skipped += 1
            continue
        mask = int(masks[candidates[0]])
        spec = ExcitationSpec(occupied=tuple(k for k in range(n) if mask >> k & 1))
        s_ff = spectrum_from_gamma(correlation_excited(basis, spec, L), tolerances).entropy
        s_ed = schmidt_spectrum(state, L).entropy
        report.record(
            entropy_error=abs(s_ff - s_ed),
            energy_error=abs(float(energies[candidates[0]]) - state.energy),
        )
        expected_reflection = basis.reflection_label(spec.occupied)
        reflection = (state.reflection_eig or 0) * ground_reflection
        if state.parity_eig != basis.parity_label(spec.occupied) or (
            expected_reflection != 0 and reflection != expected_reflection
        ):
            report.label_mismatches += 1
    return report
