"""Models for quasiparticle bases, correlation matrices and entanglement spectra."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from quasient.exceptions import ExcitationSpecError, InputError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the free-fermion routines.

    Attributes:
        clamp: Largest |ν| excursion outside [0, 1] that is clamped silently
        kernel: ν below this counts toward the correlation-matrix kernel
        isometry: Bound on V^H V − I and V^T V
        degeneracy: Relative energy window for mode clusters
        purity: ν within this distance of 1 counts as exactly 1
    """

    clamp: float = 1e-9
    kernel: float = 1e-6
    isometry: float = 1e-10
    degeneracy: float = 1e-10
    purity: float = 1e-12

    def to_dict(self) -> dict[str, float]:
        """Convert to dictionary."""
        return {
            "clamp": self.clamp,
            "kernel": self.kernel,
            "isometry": self.isometry,
            "degeneracy": self.degeneracy,
            "purity": self.purity,
        }


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class QuasiparticleBasis:
    """Quasiparticle modes b_k = (1/√2) Σ_i V*_ik ŵ_i of a quadratic form.

    Attributes:
        V: Complex 2n×n isometry, one mode per column
        epsilon: Mode energies, ascending and nonnegative
        reflection_parity: Per-mode reflection label (+1, −1, or 0 if unresolved)
        momentum_label: Approximate quasimomentum in (0, π)
        vacuum_parity: Eigenvalue of Π σᶻ on the vacuum
        zero_modes: Indices of modes whose energy fell below the degeneracy tolerance
    """

    V: np.ndarray
    epsilon: np.ndarray
    reflection_parity: np.ndarray
    momentum_label: np.ndarray
    vacuum_parity: int = 1
    zero_modes: tuple[int, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        """Number of modes (sites)."""
        return int(self.V.shape[1])

    @property
    def ground_energy(self) -> float:
        """Vacuum energy E₀ = −½ Σ ε_k."""
        return -0.5 * float(np.sum(self.epsilon))

    def isometry_residuals(self) -> tuple[float, float]:
        """Return (max|V^H V − I|, max|V^T V|)."""
        gram = self.V.conj().T @ self.V
        pairing = self.V.T @ self.V
        return (
            float(np.abs(gram - np.eye(self.n)).max(initial=0.0)),
            float(np.abs(pairing).max(initial=0.0)),
        )

    def parity_label(self, modes: Iterable[int]) -> int:
        """Parity of b†_K|Ω⟩."""
        count = len(tuple(modes))
        return self.vacuum_parity * (-1 if count % 2 else 1)

    def reflection_label(self, modes: Iterable[int]) -> int:
        """Reflection eigenvalue of b†_K|Ω⟩ relative to a symmetric vacuum.

        R(Φ_K) = (−1)^⌊m/2⌋ · P(Ω)^(m mod 2) · Π ρ_k with m = |K|; 0 if any
        mode label is unresolved.
        """
        modes = tuple(modes)
        m = len(modes)
        label = -1 if (m // 2) % 2 else 1
        if m % 2:
            label *= self.vacuum_parity
        for k in modes:
            label *= int(self.reflection_parity[k])
        return label

    def energy(self, modes: Iterable[int]) -> float:
        """Energy of b†_K|Ω⟩."""
        return self.ground_energy + float(sum(self.epsilon[k] for k in modes))


@dataclass(frozen=True)
class ExcitationSpec:
    """Set K of occupied quasiparticle modes.

    Attributes:
        occupied: Distinct mode indices, stored sorted
    """

    occupied: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        modes = tuple(int(k) for k in self.occupied)
        if len(set(modes)) != len(modes):
            raise ExcitationSpecError(f"Duplicate mode indices in {modes}")
        if any(k < 0 for k in modes):
            raise ExcitationSpecError(f"Negative mode index in {modes}")
        object.__setattr__(self, "occupied", tuple(sorted(modes)))

    @classmethod
    def of(cls, *modes: int) -> ExcitationSpec:
        """Build from positional mode indices."""
        return cls(occupied=modes)

    @property
    def k(self) -> int:
        """Quasiparticle number."""
        return len(self.occupied)

    @property
    def is_ground(self) -> bool:
        """Whether no mode is occupied."""
        return not self.occupied

    def validate(self, n: int) -> None:
        """Reject indices outside [0, n)."""
        bad = [k for k in self.occupied if k >= n]
        if bad:
            raise ExcitationSpecError(f"Mode indices {bad} out of range for n={n}")

    def describe(self) -> str:
        """Semicolon-joined mode list; empty for the ground state."""
        return ";".join(str(k) for k in self.occupied)


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Majorana correlations ⟨ŵ_i ŵ_j⟩ = δ_ij + iΓ_ij on the first L sites.

    Attributes:
        Gamma: Real antisymmetric 2L×2L matrix
        L: Subsystem size in sites
        source: State descriptor ("ground" or the occupied modes)
    """

    Gamma: np.ndarray
    L: int
    source: str = "ground"

    def __post_init__(self) -> None:
        gamma = np.asarray(self.Gamma, dtype=float)
        if gamma.shape != (2 * self.L, 2 * self.L):
            raise InputError(f"Expected a {2 * self.L}x{2 * self.L} matrix, got {gamma.shape}")
        gamma = 0.5 * (gamma - gamma.T)
        gamma.setflags(write=False)
        object.__setattr__(self, "Gamma", gamma)


@dataclass(frozen=True, eq=False)
class EntanglementSpectrum:
    """Entanglement data of a Gaussian state bipartition.

    Attributes:
        nu: L values in [0, 1], descending
        entropy: Von Neumann entropy (natural log)
        schmidt_probs: Largest reduced-density eigenvalues, descending, if requested
    """

    nu: np.ndarray
    entropy: float
    schmidt_probs: np.ndarray | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "nu": self.nu.tolist(),
            "entropy": self.entropy,
            "schmidt_probs": None if self.schmidt_probs is None else self.schmidt_probs.tolist(),
        }
