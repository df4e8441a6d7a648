"""Models for uniform matrix product states and their momentum excitations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.special import entr

LOG2 = math.log(2.0)
# Largest bond dimension accepted; the dense D²×D² transfer matrix is formed
DEFAULT_BOND_CAP = 16


def spectrum_entropy(probabilities: np.ndarray) -> float:
    """−Σ p log p over the nonnegative part of a spectrum."""
    return float(np.sum(entr(np.clip(probabilities, 0.0, None))))


@dataclass(frozen=True, eq=False)
class UniformMPS:
    """Translation-invariant MPS with its transfer-map fixed points.

    Attributes:
        A: Tensor of shape (d, D, D), scaled so the transfer map has spectral radius 1
        l: Left fixed point, Hermitian positive definite
        r: Right fixed point, Hermitian positive definite, tr(l r) = 1
        transfer_gap: 1 − |λ₂|/|λ₁| of the transfer matrix
    """

    A: np.ndarray
    l: np.ndarray
    r: np.ndarray
    transfer_gap: float = 1.0

    @property
    def d(self) -> int:
        """Physical dimension."""
        return int(self.A.shape[0])

    @property
    def D(self) -> int:
        """Bond dimension."""
        return int(self.A.shape[1])

    @property
    def normalized(self) -> bool:
        """Whether tr(l r) = 1."""
        return abs(np.trace(self.l @ self.r) - 1.0) <= 1e-10


@dataclass(frozen=True, eq=False)
class ExcitationTensor:
    """Tangent tensor B of the momentum excitation Σ_m e^{iκm} |…A B_m A…⟩.

    Attributes:
        B: Tensor of shape (d, D, D) obeying Σ_s A^s† l B^s = 0
        momentum: κ in [0, 2π)
    """

    B: np.ndarray
    momentum: float = 0.0


@dataclass(frozen=True, eq=False)
class GroundSpectrum:
    """Half-infinite entanglement spectrum of a uniform MPS.

    Attributes:
        Xi: L^H r L with l = L L^H
        eigenvalues: Eigenvalues of Xi, descending
        entropy: −Σ λ log λ
    """

    Xi: np.ndarray
    eigenvalues: np.ndarray
    entropy: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"eigenvalues": self.eigenvalues.tolist(), "entropy": self.entropy}


@dataclass(frozen=True, eq=False)
class ExcitationEnvironments:
    """Half-chain environments of a momentum excitation on the infinite chain.

    Attributes:
        left_density: Growth per site of the Gram block of left halves carrying B
        right_density: Growth per site of the Gram block of right halves carrying B
        left_boundary: Phase-stripped overlap of the ground and B-carrying left halves
        right_boundary: Phase-stripped overlap of the B-carrying and ground right halves
    """

    left_density: np.ndarray
    right_density: np.ndarray
    left_boundary: np.ndarray
    right_boundary: np.ndarray

    @property
    def boundary_coupling(self) -> float:
        """Largest norm of the two bounded overlap blocks."""
        return float(
            max(np.linalg.norm(self.left_boundary), np.linalg.norm(self.right_boundary))
        )


@dataclass(frozen=True, eq=False)
class ExcitationSpectrum:
    """Half-infinite entanglement spectrum of a momentum excitation.

    Attributes:
        eigenvalues: Reduced density matrix eigenvalues, descending
        entropy: Entropy of the excited state
        ground_entropy: Entropy of the underlying uniform state
        momentum: κ
        window: Sites carrying B, None for the infinite chain
        boundary_coupling: Norm of the bounded ground/excited overlap blocks
    """

    eigenvalues: np.ndarray
    entropy: float
    ground_entropy: float
    momentum: float = 0.0
    window: int | None = None
    boundary_coupling: float = 0.0

    @property
    def excess(self) -> float:
        """S[Φ] − S[Ω]."""
        return self.entropy - self.ground_entropy

    @property
    def deviation(self) -> float:
        """|S[Φ] − S[Ω] − log 2|."""
        return abs(self.excess - LOG2)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "momentum": self.momentum,
            "entropy": self.entropy,
            "ground_entropy": self.ground_entropy,
            "excess": self.excess,
            "deviation": self.deviation,
            "window": self.window,
            "boundary_coupling": self.boundary_coupling,
            "eigenvalues": self.eigenvalues.tolist(),
        }
