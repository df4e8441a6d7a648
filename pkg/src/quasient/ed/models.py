"""Models for exact-diagonalization eigenstates and Schmidt data."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

import numpy as np


def format_label(label: int | None) -> str:
    """Render a symmetry eigenvalue as "+", "-" or "?" (unresolved)."""
    if label is None or label == 0:
        return "?"
    return "+" if label > 0 else "-"


@dataclass(frozen=True, eq=False)
class EigenState:
    """An eigenpair of an explicit spin Hamiltonian.

    Attributes:
        vector: Unit-norm amplitudes in the σᶻ product basis
        energy: Eigenvalue
        reflection_eig: +1, −1 or None if unresolved
        parity_eig: +1, −1 or None if unresolved
        residual: ‖Hv − Ev‖
    """

    vector: np.ndarray
    energy: float
    reflection_eig: int | None = None
    parity_eig: int | None = None
    residual: float = 0.0

    @property
    def n(self) -> int:
        """Number of sites."""
        return int(self.vector.size).bit_length() - 1

    def with_labels(self, reflection: int | None, parity: int | None) -> EigenState:
        """Copy with symmetry labels set."""
        return replace(self, reflection_eig=reflection, parity_eig=parity)


@dataclass(frozen=True, eq=False)
class SchmidtData:
    """Schmidt decomposition of a pure state across one cut.

    Attributes:
        singular_values: Descending nonzero Schmidt coefficients σ_k
        entropy: −Σ σ_k² log σ_k²
        cut: Number of sites in the left block
    """

    singular_values: np.ndarray
    entropy: float
    cut: int

    @property
    def probabilities(self) -> np.ndarray:
        """Schmidt probabilities σ_k²."""
        return self.singular_values**2


@dataclass(frozen=True)
class ExcessRow:
    """One eigenstate of an ED excess table.

    Attributes:
        index: Position in the energy-sorted list (0 = ground state)
        energy: Eigenvalue
        reflection: Reflection label
        parity: Parity label
        entropy: Half-chain entropy
        dS: Entropy minus the ground-state entropy
    """

    index: int
    energy: float
    reflection: int | None
    parity: int | None
    entropy: float
    dS: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "index": self.index,
            "energy": self.energy,
            "reflection": format_label(self.reflection),
            "parity": format_label(self.parity),
            "entropy": self.entropy,
            "dS": self.dS,
        }


@dataclass
class OracleReport:
    """Free-fermion versus exact-diagonalization comparison.

    Attributes:
        model: Model descriptor
        n: Number of sites
        L: Subsystem size
        states_compared: Number of states with a unique free-fermion partner
        states_skipped: States left out because their energy is degenerate
        max_entropy_error: max |S_fermion − S_ED|
        max_energy_error: max |E_fermion − E_ED|
        max_gamma_error: max |Γ_fermion − Γ_ED| (quasiparticle comparison only)
        label_mismatches: States whose symmetry labels disagree
    """

    model: str
    n: int
    L: int
    states_compared: int = 0
    states_skipped: int = 0
    max_entropy_error: float = 0.0
    max_energy_error: float = 0.0
    max_gamma_error: float = 0.0
    label_mismatches: int = 0

    def record(self, entropy_error: float, energy_error: float, gamma_error: float = 0.0) -> None:
        """Fold one compared state into the maxima."""
        self.states_compared += 1
        self.max_entropy_error = max(self.max_entropy_error, entropy_error)
        self.max_energy_error = max(self.max_energy_error, energy_error)
        self.max_gamma_error = max(self.max_gamma_error, gamma_error)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "model": self.model,
            "n": self.n,
            "L": self.L,
            "states_compared": self.states_compared,
            "states_skipped": self.states_skipped,
            "max_entropy_error": self.max_entropy_error,
            "max_energy_error": self.max_energy_error,
            "max_gamma_error": self.max_gamma_error,
            "label_mismatches": self.label_mismatches,
        }
