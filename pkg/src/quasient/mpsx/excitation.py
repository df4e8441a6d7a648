"""Momentum excitations of a uniform MPS and their half-infinite entanglement.

The excited state is |Φ_κ(B)⟩ = Σ_m e^{iκm} |…A A B_m A A…⟩. Cutting the chain
splits it as Σ_a θ_a β_a + α_a φ_a, with α, β the ground-state half chains
and φ, θ the half chains that carry B. The Gram blocks of θ and φ grow with
the length of their half chain while the overlaps ⟨α|θ⟩ and ⟨β|φ⟩ stay
bounded; both come from geometric sums of the transfer maps. The left gauge
condition makes ⟨α|θ⟩ vanish.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la

from quasient.exceptions import DegenerateInputError, InputError
from quasient.mpsx.models import (
    ExcitationEnvironments,
    ExcitationSpectrum,
    ExcitationTensor,
    UniformMPS,
    spectrum_entropy,
)
from quasient.mpsx.transfer import ground_spectrum, transfer_matrix

logger = logging.getLogger(__name__)

GAUGE_TOLERANCE = 1e-10
# Projected tensors with smaller norm count as pure gauge
DEGENERATE_NORM = 1e-12


def left_overlap(ump: UniformMPS, B: np.ndarray) -> np.ndarray:
    """Σ_s A^s† l B^s, which vanishes in the left gauge."""
    return np.einsum("sba,bc,scd->ad", ump.A.conj(), ump.l, B)


def excitation_norm(ump: UniformMPS, B: np.ndarray) -> float:
    """Norm per site Σ_s tr(B^s† l B^s r)."""
    return float(np.real(np.einsum("sba,bc,scd,da->", B.conj(), ump.l, B, ump.r)))


def gauge_residual(ump: UniformMPS, exc: ExcitationTensor | np.ndarray) -> float:
    """Largest entry of the left-gauge overlap."""
    B = exc.B if isinstance(exc, ExcitationTensor) else exc
    return float(np.abs(left_overlap(ump, B)).max(initial=0.0))


def gauge_fix(ump: UniformMPS, B_raw: np.ndarray, momentum: float = 0.0) -> ExcitationTensor:
    """Project B onto the left gauge B ↦ B − A l⁻¹ Σ_s A^s† l B^s and normalize.

    Raises:
        DegenerateInputError: If B lies entirely in the gauge orbit
    """
    B_raw = np.asarray(B_raw, dtype=complex)
    if B_raw.shape != ump.A.shape:
        raise InputError(f"B must have shape {ump.A.shape}, got {B_raw.shape}")
    Y = la.solve(ump.l, left_overlap(ump, B_raw), assume_a="her")
    B = B_raw - np.einsum("sab,bc->sac", ump.A, Y)

    norm = excitation_norm(ump, B)
    if norm <= DEGENERATE_NORM * max(excitation_norm(ump, B_raw), 1.0):
        raise DegenerateInputError(
            "Excitation tensor projects to zero in the left gauge",
            hint="Draw B with a component outside the span of A.",
        )
    return ExcitationTensor(B=B / np.sqrt(norm), momentum=float(momentum) % (2 * np.pi))


def random_excitation(
    ump: UniformMPS, momentum: float = 0.0, rng: np.random.Generator | None = None
) -> ExcitationTensor:
    """Gauge-fixed excitation from a standard complex Gaussian B."""
    rng = rng if rng is not None else np.random.default_rng()
    shape = ump.A.shape
    B_raw = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    return gauge_fix(ump, B_raw, momentum)


def _left_mixed(X: np.ndarray, G: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Σ_s X^s† G Y^s."""
    return np.einsum("sba,bc,scd->ad", X.conj(), G, Y)


def _right_mixed(X: np.ndarray, H: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Σ_s X^s H Y^s†."""
    return np.einsum("sab,bc,sdc->ad", X, H, Y.conj())


def _geometric_sum(ump: UniformMPS, X: np.ndarray, phase: complex, *, left: bool) -> np.ndarray:
    """Σ_k (phase·E)^k applied to X with the fixed-point component removed.

    E is the left map E† when ``left``. Off the fixed point the transfer
    spectrum lies strictly inside the unit disk, so 1 − phase·E is invertible
    there for every momentum.
    """
    D = ump.D
    fixed, dual = (ump.l, ump.r) if left else (ump.r, ump.l)
    projector = np.eye(D * D) - np.outer(fixed.reshape(-1), dual.T.reshape(-1))
    T = transfer_matrix(ump.A, left=left)
    rhs = projector @ X.reshape(-1)
    return la.solve(np.eye(D * D) - phase * (T @ projector), rhs).reshape(D, D)


def _check_gauge(ump: UniformMPS, exc: ExcitationTensor) -> None:
    residual = gauge_residual(ump, exc)
    if residual > GAUGE_TOLERANCE * max(1.0, float(np.abs(exc.B).max())):
        raise InputError(
            f"Excitation violates the left gauge condition (residual {residual:.2e})",
            hint="Pass B through gauge_fix first.",
        )


def excitation_environments(ump: UniformMPS, exc: ExcitationTensor) -> ExcitationEnvironments:
    """Environments of |Φ_κ(B)⟩ on either side of a cut in the infinite chain.

    The bounded overlaps solve Y = E_{B,A}(r) + e^{iκ} E(Y) on the right and
    Z = Σ_s A^s† l B^s + e^{−iκ} E†(Z) on the left. The growth per site of the
    B-carrying Gram blocks is the fixed-point part of the one-site increment,
    which includes the cross terms with Y and Z.
    """
    A, B, l, r = ump.A, exc.B, ump.l, ump.r
    phase = np.exp(1j * exc.momentum)

    right_boundary = _geometric_sum(ump, _right_mixed(B, r, A), phase, left=False)
    left_boundary = _geometric_sum(ump, _left_mixed(A, l, B), phase.conjugate(), left=True)

    right_step = (
        _right_mixed(B, r, B)
        + phase.conjugate() * _right_mixed(B, right_boundary.conj().T, A)
        + phase * _right_mixed(A, right_boundary, B)
    )
    left_step = (
        _left_mixed(B, l, B)
        + phase.conjugate() * _left_mixed(B, left_boundary, A)
        + phase * _left_mixed(A, left_boundary.conj().T, B)
    )
    return ExcitationEnvironments(
        left_density=l * np.trace(left_step @ r).real,
        right_density=r * np.trace(l @ right_step).real,
        left_boundary=left_boundary,
        right_boundary=right_boundary,
    )


def window_blocks(
    ump: UniformMPS, exc: ExcitationTensor, W: int, cut: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Gram blocks across a cut in Σ_{m=1..W} e^{iκm} |…A B_m A…⟩.

    Outside the W sites the chain is closed by its fixed-point environments.
    The transfer maps are iterated from the left end up to ``cut`` and from
    the right end down to it.

    Returns:
        (left, right): left[x, y] = ⟨x|y⟩ over (α, θ) and right the matching
        outer products over (φ, β), each of shape (2D, 2D)
    """
    if W < 1:
        raise InputError(f"Window length must be positive, got {W}")
    cut = W // 2 if cut is None else cut
    if not 0 <= cut <= W:
        raise InputError(f"Cut {cut} outside [0, {W}]")
    A, B, kappa = ump.A, exc.B, exc.momentum
    zero = np.zeros_like(ump.l)

    g_aa, g_at, g_tt = ump.l.astype(complex), zero, zero
    for m in range(1, cut + 1):
        phase = np.exp(1j * kappa * m)
        g_tt = (
            _left_mixed(A, g_tt, A)
            + phase * _left_mixed(A, g_at.conj().T, B)
            + phase.conjugate() * _left_mixed(B, g_at, A)
            + _left_mixed(B, g_aa, B)
        )
        g_at = _left_mixed(A, g_at, A) + phase * _left_mixed(A, g_aa, B)
        g_aa = _left_mixed(A, g_aa, A)

    h_bb, h_fb, h_ff = ump.r.astype(complex), zero, zero
    for m in range(W, cut, -1):
        phase = np.exp(1j * kappa * m)
        h_ff = (
            _right_mixed(A, h_ff, A)
            + phase * _right_mixed(B, h_fb.conj().T, A)
            + phase.conjugate() * _right_mixed(A, h_fb, B)
            + _right_mixed(B, h_bb, B)
        )
        h_fb = _right_mixed(A, h_fb, A) + phase * _right_mixed(B, h_bb, A)
        h_bb = _right_mixed(A, h_bb, A)

    left = np.block([[g_aa, g_at], [g_at.conj().T, g_tt]])
    right = np.block([[h_ff, h_fb], [h_fb.conj().T, h_bb]])
    return left, right


def schmidt_from_grams(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Normalized nonzero spectrum of Σ_ab |u_a⟩⟨u_b| right[a, b], descending.

    ``left`` is the Gram matrix ⟨u_a|u_b⟩ of the left vectors; it may be singular.
    """
    g, U = la.eigh(0.5 * (left + left.conj().T))
    root = (U * np.sqrt(np.clip(g, 0.0, None))) @ U.conj().T
    rho = root @ right @ root
    eigenvalues = la.eigvalsh(0.5 * (rho + rho.conj().T))[::-1]
    return eigenvalues / eigenvalues.sum()


def excitation_spectrum(
    ump: UniformMPS,
    exc: ExcitationTensor,
    window: int | None = None,
    cut: int | None = None,
) -> ExcitationSpectrum:
    """Half-infinite reduced density matrix spectrum of |Φ_κ(B)⟩.

    With ``window`` the momentum superposition runs over that many sites,
    cut after ``cut`` of them (default the middle). Without it the B-carrying
    halves are rescaled by the square root of their length, which leaves the
    Gram densities and sends the bounded overlaps to zero, and each side holds
    half of the weight.

    Args:
        ump: Completed uniform MPS
        exc: Gauge-fixed excitation
        window: Number of sites carrying B, None for the infinite chain
        cut: Window sites left of the cut

    Raises:
        InputError: If B violates the left gauge condition
    """
    _check_gauge(ump, exc)
    env = excitation_environments(ump, exc)
    if window is None:
        left = la.block_diag(ump.l, env.left_density)
        right = la.block_diag(env.right_density, ump.r)
    else:
        left, right = window_blocks(ump, exc, window, cut)
    eigenvalues = schmidt_from_grams(left, right)
    logger.debug(
        "Excited spectrum at momentum %.4f, window %s, boundary coupling %.3e",
        exc.momentum,
        window,
        env.boundary_coupling,
    )

    ground = ground_spectrum(ump)
    return ExcitationSpectrum(
        eigenvalues=eigenvalues,
        entropy=spectrum_entropy(eigenvalues),
        ground_entropy=ground.entropy,
        momentum=exc.momentum,
        window=window,
        boundary_coupling=env.boundary_coupling,
    )


def doubling_mismatch(ground_eigenvalues: np.ndarray, excited_eigenvalues: np.ndarray) -> float:
    """Max |sorted excited spectrum − sorted two copies of ground/2|."""
    expected = np.sort(np.concatenate([ground_eigenvalues, ground_eigenvalues]) / 2)
    actual = np.sort(np.asarray(excited_eigenvalues))
    if actual.size != expected.size:
        return float("inf")
    return float(np.abs(actual - expected).max(initial=0.0))
