"""Diagonalization of quadratic Majorana Hamiltonians.

iA = ¼ (V diag(ε) V^H − V* diag(ε) V^T) with ε_k = 4λ_k, λ_k the nonnegative
eigenvalues of iA, and Ĥ = Σ_k ε_k b†_k b_k − ½ Σ_k ε_k.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la

from quasient.exceptions import SizeCapError
from quasient.freefermion.models import DEFAULT_TOLERANCES, QuasiparticleBasis, Tolerances
from quasient.model.models import MajoranaQuadraticForm

logger = logging.getLogger(__name__)

# Normalization between iA eigenvalues and quasiparticle energies
ENERGY_SCALE = 4.0

MANY_BODY_CAP = 20
# Below this fraction of the largest λ, eigh mixes the ±λ eigenvectors
SOFT_MODE_FRACTION = 1e-4


def majorana_reflection(n: int) -> np.ndarray:
    """Reflection acting on Majorana coefficient vectors.

    The x-component on site j moves to the y-component on site n−1−j, and the
    y-component moves to minus the x-component. O is real, O^T = −O, O² = −I.
    """
    O = np.zeros((2 * n, 2 * n))
    for j in range(n):
        m = n - 1 - j
        O[2 * m + 1, 2 * j] = 1.0
        O[2 * m, 2 * j + 1] = -1.0
    return O


def _clusters(values: np.ndarray, tol: float) -> list[np.ndarray]:
    """Group ascending values into runs separated by more than ``tol``."""
    if values.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(values) > tol) + 1
    return np.split(np.arange(values.size), breaks)


def _reflection_rotate(
    X: np.ndarray, O: np.ndarray, symmetric: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Rotate a degenerate cluster to diagonalize the reflection; return (X, labels)."""
    if not symmetric:
        return X, np.zeros(X.shape[1], dtype=int)
    M = -1j * (X.conj().T @ O @ X)
    M = 0.5 * (M + M.conj().T)
    rho, W = la.eigh(M)
    # +1 block first
    order = np.argsort(-rho, kind="stable")
    rho = rho[order]
    X = X @ W[:, order]
    labels = np.where(np.abs(rho - 1.0) < 1e-6, 1, np.where(np.abs(rho + 1.0) < 1e-6, -1, 0))
    return X, labels.astype(int)


def _zero_mode_isometry(
    Z: np.ndarray, O: np.ndarray, symmetric: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Choose a valid isometry (V^T V = 0) on the kernel of iA."""
    m0 = Z.shape[1] // 2
    if symmetric:
        # O is real with eigenvalues ±i; the +i eigenspace is isotropic (v^T v' = 0).
        M = -1j * (Z.conj().T @ O @ Z)
        M = 0.5 * (M + M.conj().T)
        rho, W = la.eigh(M)
        top = np.argsort(-rho, kind="stable")[:m0]
        if np.all(np.abs(rho[top] - 1.0) < 1e-6):
            return Z @ W[:, top], np.ones(m0, dtype=int)
        logger.warning("Kernel of the quadratic form is not reflection invariant")

    real_span = np.hstack([Z.real, Z.imag])
    U, s, _ = la.svd(real_span, full_matrices=False)
    R = U[:, : 2 * m0]
    if s.size and s[min(2 * m0, s.size) - 1] < 1e-8 * max(1.0, s[0]):
        logger.warning("Kernel real basis is rank deficient")
    V0 = (R[:, 0::2] + 1j * R[:, 1::2]) / np.sqrt(2.0)
    return V0, np.zeros(m0, dtype=int)


def _soft_mode_isometry(Z: np.ndarray, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pair the ±λ eigenvectors of small λ exactly through a real Schur form.

    Z spans a conjugation-closed invariant subspace of iA. Each 2×2 Schur block
    of A on a real basis R of it has columns (x, y) with A x = −a y, A y = a x,
    so (x − i y)/√2 has energy 4a and the resulting columns satisfy V^T V = 0
    to round-off.

    Returns:
        (V, epsilon) with energies ascending
    """
    m = Z.shape[1] // 2
    U, _, _ = la.svd(np.hstack([Z.real, Z.imag]), full_matrices=False)
    R = U[:, : 2 * m]
    T, Q = la.schur(R.T @ A @ R, output="real")
    X = R @ Q

    columns: list[np.ndarray] = []
    energies: list[float] = []
    i = 0
    while i < 2 * m - 1:
        a = 0.5 * (T[i, i + 1] - T[i + 1, i])
        x, y = X[:, i], X[:, i + 1]
        if T[i + 1, i] == 0.0 and T[i, i + 1] == 0.0:
            logger.warning("Soft mode block %d is not a rotation; pairing real Schur vectors", i)
        sign = 1.0 if a >= 0 else -1.0
        columns.append((x - sign * 1j * y) / np.sqrt(2.0))
        energies.append(ENERGY_SCALE * abs(a))
        i += 2
    order = np.argsort(energies, kind="stable")
    return np.column_stack(columns)[:, order], np.asarray(energies)[order]


def vacuum_parity(V: np.ndarray) -> int:
    """Π σᶻ on the vacuum, the sign of det Q for the real mode-Majorana matrix Q.

    Column pairs of Q are √2 Re v_k and −√2 Im v_k, the coefficients of the
    Hermitian Majoranas b_k + b†_k and −i(b_k − b†_k).
    """
    two_n, n = V.shape
    Q = np.empty((two_n, 2 * n))
    Q[:, 0::2] = np.sqrt(2.0) * V.real
    Q[:, 1::2] = -np.sqrt(2.0) * V.imag
    sign, _ = np.linalg.slogdet(Q)
    return 1 if sign >= 0 else -1


def momentum_labels(epsilon: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Standing-wave quasimomenta k = πj/(n+1) assigned by energy within each class.

    The class holding the lowest mode takes odd j, the other class even j. With
    unresolved labels, j runs over all modes in energy order.
    """
    n = epsilon.size
    ks = np.empty(n)
    if n == 0:
        return ks
    if np.any(labels == 0):
        ks[:] = np.pi * (np.arange(n) + 1) / (n + 1)
        return ks
    first = labels[0]
    counters = {first: 0, -first: 0}
    for idx in range(n):
        cls = int(labels[idx])
        i = counters[cls]
        counters[cls] += 1
        j = 2 * i + 1 if cls == first else 2 * i + 2
        ks[idx] = np.pi * j / (n + 1)
    return ks


def diagonalize(
    form: MajoranaQuadraticForm, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> QuasiparticleBasis:
    """Compute the quasiparticle isometry and energies of a quadratic form.

    Degenerate energy clusters are rotated so that each mode has a definite
    reflection label when the form is reflection symmetric. Modes with energy
    below the degeneracy tolerance are flagged as zero modes and placed first.

    Args:
        form: Quadratic Majorana form
        tolerances: Numerical tolerances

    Returns:
        QuasiparticleBasis with V^H V = I and V^T V = 0
    """
    n = form.n
    K = form.hermitian
    w, U = la.eigh(K)
    scale = float(np.abs(w).max(initial=0.0))
    tol = tolerances.degeneracy * scale if scale > 0 else tolerances.degeneracy

    O = majorana_reflection(n)
    commutator = float(np.abs(K @ O - O @ K).max(initial=0.0))
    symmetric = commutator <= 1e-10 * max(1.0, scale)
    if not symmetric:
        logger.info("Quadratic form is not reflection symmetric; labels unresolved")

    n_positive = int(np.count_nonzero(w > tol))
    n_zero = n - n_positive

    columns: list[np.ndarray] = []
    energies: list[np.ndarray] = []
    labels: list[np.ndarray] = []

    if n_zero:
        Z = U[:, n_positive : 2 * n - n_positive]
        V0, rho0 = _zero_mode_isometry(Z, O, symmetric)
        columns.append(V0)
        energies.append(np.zeros(n_zero))
        labels.append(rho0)
        logger.info("%d near-zero mode(s) below energy %.3g", n_zero, ENERGY_SCALE * tol)

    n_soft = int(np.count_nonzero((w > tol) & (w <= SOFT_MODE_FRACTION * scale)))
    if n_soft:
        first_positive = 2 * n - n_positive
        soft = np.r_[n_positive - n_soft : n_positive, first_positive : first_positive + n_soft]
        V_soft, eps_soft = _soft_mode_isometry(U[:, soft], form.A)
        for cluster in _clusters(eps_soft / ENERGY_SCALE, tol):
            X, rho = _reflection_rotate(V_soft[:, cluster], O, symmetric)
            columns.append(X)
            energies.append(eps_soft[cluster])
            labels.append(rho)
        logger.debug("%d soft mode(s) paired through the real Schur form", n_soft)

    positive = np.arange(2 * n - n_positive + n_soft, 2 * n)
    lam = w[positive]
    for cluster in _clusters(lam, tol):
        X, rho = _reflection_rotate(U[:, positive[cluster]], O, symmetric)
        columns.append(X)
        energies.append(ENERGY_SCALE * lam[cluster])
        labels.append(rho)

    V = np.hstack(columns) if columns else np.zeros((2 * n, 0), dtype=complex)
    epsilon = np.concatenate(energies) if energies else np.zeros(0)
    reflection = np.concatenate(labels) if labels else np.zeros(0, dtype=int)

    basis = QuasiparticleBasis(
        V=V,
        epsilon=epsilon,
        reflection_parity=reflection,
        momentum_label=momentum_labels(epsilon, reflection),
        vacuum_parity=vacuum_parity(V),
        zero_modes=tuple(range(n_zero)),
    )
    gram_err, pairing_err = basis.isometry_residuals()
    if max(gram_err, pairing_err) > tolerances.isometry:
        logger.warning(
            "Isometry residuals %.2e / %.2e exceed tolerance %.1e",
            gram_err,
            pairing_err,
            tolerances.isometry,
        )
    return basis


def reconstruct(basis: QuasiparticleBasis) -> np.ndarray:
    """Rebuild iA = ¼ (V diag ε V^H − V* diag ε V^T)."""
    V = basis.V
    eps = basis.epsilon
    return ((V * eps) @ V.conj().T - (V.conj() * eps) @ V.T) / ENERGY_SCALE


def many_body_energies(
    basis: QuasiparticleBasis, *, cap: int = MANY_BODY_CAP
) -> tuple[np.ndarray, np.ndarray]:
    """All 2^n many-body energies E₀ + Σ_{k∈K} ε_k with their parities, sorted.

    Every subset is realized on an open chain, so both parity sectors appear.

    Returns:
        (energies, parities) sorted by energy
    """
    n = basis.n
    if n > cap:
        raise SizeCapError(f"2^{n} many-body energies exceed the cap of 2^{cap}", size=n, cap=cap)
    energies = np.array([basis.ground_energy])
    counts = np.zeros(1, dtype=int)
    for eps in basis.epsilon:
        energies = np.concatenate([energies, energies + eps])
        counts = np.concatenate([counts, counts + 1])
    parities = basis.vacuum_parity * (1 - 2 * (counts % 2))
    order = np.argsort(energies, kind="stable")
    return energies[order], parities[order]
