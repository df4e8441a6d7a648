"""Transfer maps, fixed points and ground-state entanglement of uniform MPS."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la

from quasient.exceptions import (
    ConvergenceError,
    InputError,
    NonInjectiveError,
    NotPositiveDefiniteError,
    SizeCapError,
)
from quasient.mpsx.models import DEFAULT_BOND_CAP, GroundSpectrum, UniformMPS, spectrum_entropy

logger = logging.getLogger(__name__)

INJECTIVITY_GAP = 1e-6
POWER_TOLERANCE = 1e-12
POWER_MAX_ITERATIONS = 10_000
FIXED_POINT_TOLERANCE = 1e-10


def apply_right(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """E(X) = Σ_s A^s X A^s†."""
    return np.einsum("sab,bc,sdc->ad", A, X, A.conj())


def apply_left(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """E†(X) = Σ_s A^s† X A^s."""
    return np.einsum("sba,bc,scd->ad", A.conj(), X, A)


def transfer_matrix(A: np.ndarray, *, left: bool = False) -> np.ndarray:
    """Dense D²×D² matrix of E (or E†) acting on row-major vectorized D×D matrices."""
    D = A.shape[1]
    if left:
        T = np.einsum("sba,scd->adbc", A.conj(), A)
    else:
        T = np.einsum("sab,sdc->adbc", A, A.conj())
    return T.reshape(D * D, D * D)


def _check_tensor(A: np.ndarray, cap: int) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise InputError(f"MPS tensor must have shape (d, D, D), got {A.shape}")
    if A.shape[1] > cap:
        raise SizeCapError(
            f"Bond dimension {A.shape[1]} exceeds the cap", size=A.shape[1], cap=cap
        )
    return A


def normalize(A: np.ndarray) -> tuple[np.ndarray, float]:
    """Scale A to unit transfer spectral radius and return it with the transfer gap.

    Raises:
        NonInjectiveError: If the leading transfer eigenvalue is degenerate in modulus
    """
    moduli = np.sort(np.abs(la.eigvals(transfer_matrix(A))))[::-1]
    if moduli[0] <= 0:
        raise NonInjectiveError("Transfer matrix is nilpotent", gap=0.0)
    gap = 1.0 - moduli[1] / moduli[0] if moduli.size > 1 else 1.0
    if gap <= INJECTIVITY_GAP:
        raise NonInjectiveError(f"Transfer gap {gap:.3e} too small; tensor not injective", gap=gap)
    return A / np.sqrt(moduli[0]), float(gap)


def _power_fixed_point(A: np.ndarray, *, left: bool) -> np.ndarray | None:
    apply = apply_left if left else apply_right
    X = np.eye(A.shape[1], dtype=complex)
    for _ in range(POWER_MAX_ITERATIONS):
        Y = apply(A, X)
        Y /= np.linalg.norm(Y)
        if np.linalg.norm(Y - X) <= POWER_TOLERANCE:
            return Y
        X = Y
    return None


def _dense_fixed_point(A: np.ndarray, *, left: bool) -> np.ndarray:
    values, vectors = la.eig(transfer_matrix(A, left=left))
    leading = int(np.argmax(np.abs(values)))
    D = A.shape[1]
    return vectors[:, leading].reshape(D, D)


def _positive_hermitian(X: np.ndarray, side: str) -> np.ndarray:
    trace = np.trace(X)
    X = X / (trace / abs(trace))
    X = 0.5 * (X + X.conj().T)
    smallest = float(la.eigvalsh(X)[0])
    if smallest <= 0:
        raise NotPositiveDefiniteError(
            f"{side} fixed point is not positive definite", smallest_eigenvalue=smallest
        )
    return X


def fixed_point(A: np.ndarray, *, left: bool = False) -> np.ndarray:
    """Leading fixed point of E (or E† if ``left``), Hermitian with positive trace."""
    X = _power_fixed_point(A, left=left)
    if X is None:
        logger.info("Power iteration stalled; using dense transfer eigendecomposition")
        X = _dense_fixed_point(A, left=left)
    return _positive_hermitian(X, "left" if left else "right")


def fixed_points(A: np.ndarray, *, cap: int = DEFAULT_BOND_CAP) -> UniformMPS:
    """Normalize A and complete it with its fixed points l and r.

    Args:
        A: Tensor of shape (d, D, D)
        cap: Largest accepted bond dimension

    Returns:
        UniformMPS with tr(l r) = 1

    Raises:
        NonInjectiveError: If the transfer gap is at most 1e−6
        NotPositiveDefiniteError: If a fixed point is not positive definite
        ConvergenceError: If the fixed-point residual exceeds 1e−10
    """
    A, gap = normalize(_check_tensor(A, cap))
    r = fixed_point(A)
    l = fixed_point(A, left=True)
    r = r / np.trace(r).real
    l = l / np.trace(l @ r).real

    residuals = [
        float(np.linalg.norm(apply_left(A, l) - l) / np.linalg.norm(l)),
        float(np.linalg.norm(apply_right(A, r) - r) / np.linalg.norm(r)),
    ]
    if max(residuals) > FIXED_POINT_TOLERANCE:
        raise ConvergenceError(
            f"Fixed-point residual {max(residuals):.3e} exceeds {FIXED_POINT_TOLERANCE:.0e}",
            residuals=residuals,
        )
    return UniformMPS(A=A, l=l, r=r, transfer_gap=gap)


def cholesky_lower(X: np.ndarray, side: str = "left") -> np.ndarray:
    """Lower Cholesky factor of a positive definite fixed point."""
    try:
        return la.cholesky(X, lower=True)
    except la.LinAlgError as e:
        smallest = float(la.eigvalsh(0.5 * (X + X.conj().T))[0])
        raise NotPositiveDefiniteError(
            f"{side} fixed point is not positive definite", smallest_eigenvalue=smallest
        ) from e


def ground_spectrum(ump: UniformMPS) -> GroundSpectrum:
    """Half-infinite entanglement spectrum eig(Ξ), Ξ = L^H r L with l = L L^H."""
    L = cholesky_lower(ump.l)
    Xi = L.conj().T @ ump.r @ L
    Xi = 0.5 * (Xi + Xi.conj().T)
    eigenvalues = la.eigvalsh(Xi)[::-1]
    return GroundSpectrum(Xi=Xi, eigenvalues=eigenvalues, entropy=spectrum_entropy(eigenvalues))


def random_uniform_mps(
    D: int,
    d: int = 2,
    rng: np.random.Generator | None = None,
    *,
    max_attempts: int = 100,
) -> UniformMPS:
    """Draw A with i.i.d. standard complex Gaussian entries, resampling non-injective draws."""
    rng = rng if rng is not None else np.random.default_rng()
    for attempt in range(max_attempts):
        A = (rng.standard_normal((d, D, D)) + 1j * rng.standard_normal((d, D, D))) / np.sqrt(2)
        try:
            return fixed_points(A)
        except NonInjectiveError:
            logger.info("Draw %d not injective; resampling", attempt)
    raise NonInjectiveError(f"No injective tensor in {max_attempts} draws (D={D}, d={d})")


def conjugate_gauge(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """A^s ↦ X⁻¹ A^s X, which leaves the state unchanged."""
    try:
        X_inv = la.inv(X)
    except la.LinAlgError as e:
        raise InputError("Gauge transformation is singular") from e
    return np.einsum("ab,sbc,cd->sad", X_inv, A, X)
