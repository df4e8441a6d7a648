"""Low-lying eigenstates of explicit spin Hamiltonians and their symmetry labels."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.sparse.linalg import norm as sparse_norm

from quasient.ed.models import EigenState
from quasient.exceptions import ConvergenceError, InputError, SizeCapError
from quasient.model.models import DEFAULT_SPIN_CAP, SpinHamiltonianMatrix

logger = logging.getLogger(__name__)

MAX_STATES = 64
# Dense solver below this many sites
SPARSE_FROM_SITES = 12
CLUSTER_TOLERANCE = 1e-9
RESIDUAL_TOLERANCE = 1e-8
LABEL_TOLERANCE = 1e-8
DEFAULT_SEED = 20_240_601


def cluster_tolerance(energy: float) -> float:
    """Energy window for degeneracy clusters at a given energy scale."""
    return CLUSTER_TOLERANCE * max(1.0, abs(energy))


def _complete_cluster(energies: np.ndarray, count: int) -> int:
    """Extend ``count`` so the cluster at the boundary is not split."""
    while count < energies.size and energies[count] - energies[count - 1] <= cluster_tolerance(
        energies[count - 1]
    ):
        count += 1
    return count


def _dense_lowest(matrix: sp.csr_matrix, count: int) -> tuple[np.ndarray, np.ndarray]:
    energies, vectors = la.eigh(matrix.toarray())
    count = _complete_cluster(energies, count)
    return energies[:count], vectors[:, :count]


def _sparse_lowest(
    matrix: sp.csr_matrix, count: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    dim = matrix.shape[0]
    # generic start vector: a symmetric one would confine Lanczos to one sector
    v0 = np.random.default_rng(seed).standard_normal(dim)
    k = min(count + 4, dim - 1)
    while True:
        try:
            energies, vectors = eigsh(matrix, k=k, which="SA", v0=v0, tol=0.0)
        except ArpackNoConvergence as e:
            raise ConvergenceError(
                f"Lanczos converged for {len(e.eigenvalues)} of {k} states (dimension {dim})",
                hint="Request fewer states or lower the system size.",
            ) from e
        order = np.argsort(energies, kind="stable")
        energies, vectors = energies[order], vectors[:, order]
        complete = _complete_cluster(energies, count)
        if complete < k or k == dim - 1:
            return energies[:complete], vectors[:, :complete]
        logger.info("Degenerate cluster reaches the Lanczos window; widening to %d", 2 * k)
        k = min(2 * k, dim - 1)


def lowest_eigenstates(
    H: SpinHamiltonianMatrix,
    M: int,
    *,
    seed: int = DEFAULT_SEED,
    sparse_from: int = SPARSE_FROM_SITES,
) -> list[EigenState]:
    """Return the M lowest eigenpairs, extended to complete degenerate clusters.

    Args:
        H: Explicit Hamiltonian
        M: Number of states (1 to 64)
        seed: Seed of the Lanczos start vector
        sparse_from: Use the sparse solver from this many sites on

    Raises:
        ConvergenceError: If the solver fails or a residual exceeds 1e−8·‖H‖
    """
    if not 1 <= M <= MAX_STATES:
        raise InputError(f"Number of states must be in [1, {MAX_STATES}], got {M}")
    if H.n > DEFAULT_SPIN_CAP:
        raise SizeCapError(f"n={H.n} exceeds the ED cap", size=H.n, cap=DEFAULT_SPIN_CAP)
    M = min(M, H.dimension)

    matrix = H.matrix
    if H.n < sparse_from or H.dimension <= M + 1:
        energies, vectors = _dense_lowest(matrix, M)
    else:
        energies, vectors = _sparse_lowest(matrix, M, seed)

    scale = max(float(sparse_norm(matrix, 1)), 1.0)
    residuals = np.linalg.norm(matrix @ vectors - vectors * energies, axis=0)
    bad = residuals > RESIDUAL_TOLERANCE * scale
    if np.any(bad):
        raise ConvergenceError(
            f"{int(bad.sum())} eigenpair(s) exceed the residual bound "
            f"{RESIDUAL_TOLERANCE * scale:.2e}",
            residuals=residuals.tolist(),
        )
    if energies.size > M:
        logger.info("Returning %d states to keep the last cluster whole", energies.size)
    return [
        EigenState(vector=vectors[:, i], energy=float(energies[i]), residual=float(residuals[i]))
        for i in range(energies.size)
    ]


def energy_clusters(states: list[EigenState]) -> list[list[int]]:
    """Group consecutive indices of energy-sorted states into degeneracy clusters."""
    clusters: list[list[int]] = []
    for i, state in enumerate(states):
        if clusters and state.energy - states[clusters[-1][-1]].energy <= cluster_tolerance(
            state.energy
        ):
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def _diagonalize_within(X: np.ndarray, op: sp.spmatrix) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize the projection of an involution onto span(X); +1 block first."""
    projected = X.conj().T @ (op @ X)
    projected = 0.5 * (projected + projected.conj().T)
    values, W = la.eigh(projected)
    order = np.argsort(-values, kind="stable")
    return X @ W[:, order], values[order]


def _label(vector: np.ndarray, op: sp.spmatrix, value: float) -> int | None:
    sign = 1 if value >= 0 else -1
    if np.linalg.norm(op @ vector - sign * vector) <= LABEL_TOLERANCE:
        return sign
    return None


def symmetry_rotate(
    states: list[EigenState],
    R: sp.spmatrix,
    P: sp.spmatrix | None = None,
) -> list[EigenState]:
    """Rotate degenerate clusters into reflection (and parity) eigenstates.

    Within each energy cluster R is diagonalized first (+1 block before −1),
    then P inside each R block. States whose symmetry residual exceeds 1e−8
    keep an unresolved label.
    """
    rotated: list[EigenState] = []
    for cluster in energy_clusters(states):
        X = np.column_stack([states[i].vector for i in cluster])
        X, r_values = _diagonalize_within(X, R)

        p_values = np.zeros_like(r_values)
        if P is not None:
            for idx in (np.flatnonzero(r_values >= 0), np.flatnonzero(r_values < 0)):
                if idx.size:
                    X[:, idx], p_values[idx] = _diagonalize_within(X[:, idx], P)
        for pos, i in enumerate(cluster):
            vector = X[:, pos]
            reflection = _label(vector, R, r_values[pos])
            parity = _label(vector, P, p_values[pos]) if P is not None else None
            if reflection is None:
                logger.warning("State %d: reflection label unresolved", i)
            rotated.append(
                EigenState(
                    vector=vector,
                    energy=states[i].energy,
                    reflection_eig=reflection,
                    parity_eig=parity,
                    residual=states[i].residual,
                )
            )
    return rotated
