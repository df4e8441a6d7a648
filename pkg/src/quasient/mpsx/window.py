"""Finite-window states used to cross-check the infinite-chain spectra."""

from __future__ import annotations

import numpy as np
import scipy.linalg as la

from quasient.exceptions import InputError, SizeCapError
from quasient.mpsx.models import ExcitationTensor, UniformMPS
from quasient.mpsx.transfer import cholesky_lower

WINDOW_CAP = 1 << 20


def finite_window_state(
    ump: UniformMPS,
    exc: ExcitationTensor | None,
    W: int,
    *,
    cap: int = WINDOW_CAP,
) -> np.ndarray:
    """Amplitudes of W explicit sites between fixed-point environments.

    The closures are L^H (l = L L^H) on the left and R (r = R R^H) on the
    right, so the ground window is an isometric image of the infinite state.
    With an excitation the window holds Σ_{m=1..W} e^{iκm} |A…B_m…A⟩ / √W.

    Returns:
        Array of shape (D, d, …, d, D) with W physical legs
    """
    if W < 1:
        raise InputError(f"Window length must be positive, got {W}")
    d, D = ump.d, ump.D
    if d**W > cap:
        raise SizeCapError(f"Window of {W} sites exceeds {cap} amplitudes", size=d**W, cap=cap)

    A = ump.A
    ground = cholesky_lower(ump.l).conj().T.reshape(D, 1, D)
    excited = np.zeros_like(ground)
    for m in range(1, W + 1):
        if exc is not None:
            excited = _extend(excited, A) + np.exp(1j * exc.momentum * m) * _extend(ground, exc.B)
        ground = _extend(ground, A)

    R = cholesky_lower(ump.r, "right")
    state = excited / np.sqrt(W) if exc is not None else ground
    return np.einsum("xia,ay->xiy", state, R).reshape((D,) + (d,) * W + (D,))


def _extend(T: np.ndarray, A: np.ndarray) -> np.ndarray:
    D_left, k, _ = T.shape
    return np.einsum("xia,sab->xisb", T, A).reshape(D_left, k * A.shape[0], A.shape[2])


def window_schmidt_spectrum(amplitudes: np.ndarray, cut: int | None = None) -> np.ndarray:
    """Schmidt probabilities after ``cut`` window sites, left environment included; descending."""
    W = amplitudes.ndim - 2
    cut = W // 2 if cut is None else cut
    if not 0 <= cut <= W:
        raise InputError(f"Cut {cut} outside [0, {W}]")
    rows = int(np.prod(amplitudes.shape[: cut + 1]))
    sigma = la.svdvals(amplitudes.reshape(rows, -1))
    return sigma**2


def block_tensor(ump: UniformMPS, exc: ExcitationTensor) -> np.ndarray:
    """Bond-2D tensor M^s = [[e^{iκ}A^s, B^s], [0, A^s]].

    The upper block index means B has not been placed yet, so a product of W
    tensors from the upper-left to the lower-right block carries exactly one
    B, at site m with phase e^{iκ(m−1)}.
    """
    A, B = ump.A, exc.B
    M = np.zeros((ump.d, 2 * ump.D, 2 * ump.D), dtype=complex)
    M[:, : ump.D, : ump.D] = np.exp(1j * exc.momentum) * A
    M[:, : ump.D, ump.D :] = B
    M[:, ump.D :, ump.D :] = A
    return M


def block_window_spectrum(
    ump: UniformMPS, exc: ExcitationTensor, W: int, cut: int | None = None
) -> np.ndarray:
    """Schmidt probabilities of the block-MPS window state, descending.

    The window of W block tensors is closed by L^H on the upper block at the
    left and by R on the lower block at the right. Both half-chain Gram
    matrices are contracted site by site, so W is not limited by the number
    of amplitudes.
    """
    if W < 1:
        raise InputError(f"Window length must be positive, got {W}")
    cut = W // 2 if cut is None else cut
    if not 0 <= cut <= W:
        raise InputError(f"Cut {cut} outside [0, {W}]")
    D = ump.D
    M = block_tensor(ump, exc)

    left_boundary = np.zeros((D, 2 * D), dtype=complex)
    left_boundary[:, :D] = cholesky_lower(ump.l).conj().T
    gram = left_boundary.conj().T @ left_boundary
    for _ in range(cut):
        gram = np.einsum("sba,bc,scd->ad", M.conj(), gram, M)

    right_boundary = np.zeros((2 * D, D), dtype=complex)
    right_boundary[D:, :] = cholesky_lower(ump.r, "right")
    outer = right_boundary @ right_boundary.conj().T
    for _ in range(W - cut):
        outer = np.einsum("sab,bc,sdc->ad", M, outer, M.conj())

    g, U = la.eigh(0.5 * (gram + gram.conj().T))
    root = (U * np.sqrt(np.clip(g, 0.0, None))) @ U.conj().T
    rho = root @ outer @ root
    probabilities = la.eigvalsh(0.5 * (rho + rho.conj().T))[::-1]
    return probabilities / probabilities.sum()
