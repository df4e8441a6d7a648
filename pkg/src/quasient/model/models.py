"""Models for spin chains and their quadratic Majorana forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import scipy.sparse as sp

from quasient.exceptions import ModelError

# Maximum site count for explicit 2^n spin matrices
DEFAULT_SPIN_CAP = 16

# Majorana index ordering: 2j -> x-type, 2j + 1 -> y-type on site j
MAJORANA_ORDERING = "x0,y0,x1,y1,..."


class Boundary(Enum):
    """Boundary conditions of the chain."""

    OPEN = "open"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class XY:
    """Anisotropic XY chain in a transverse field.

    H = J Σ [(1+γ)/2 σˣσˣ + (1−γ)/2 σʸσʸ] + h Σ σᶻ

    Attributes:
        gamma: Anisotropy (gamma=1 is the transverse-field Ising chain)
        h: Transverse field
        J: Overall coupling prefactor (J=0 decouples the sites)
    """

    gamma: float
    h: float
    J: float = 1.0

    name = "xy"

    def describe(self) -> str:
        """Compact descriptor used in output rows."""
        return f"xy(gamma={self.gamma:g},h={self.h:g},J={self.J:g})"

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"kind": self.name, "gamma": self.gamma, "h": self.h, "J": self.J}


@dataclass(frozen=True)
class TiltedIsing:
    """Ising chain with transverse and longitudinal fields.

    H = J Σ σˣσˣ + hz Σ σᶻ + hx Σ σˣ

    Attributes:
        J: Ising coupling
        hz: Transverse field
        hx: Longitudinal field
    """

    J: float = 1.0
    hz: float = 1.0
    hx: float = 1.0

    name = "tilted_ising"

    def describe(self) -> str:
        """Compact descriptor used in output rows."""
        return f"tilted_ising(J={self.J:g},hz={self.hz:g},hx={self.hx:g})"

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"kind": self.name, "J": self.J, "hz": self.hz, "hx": self.hx}


ModelKind = XY | TiltedIsing


@dataclass(frozen=True)
class SpinChainModel:
    """A spin-1/2 chain instance.

    Attributes:
        kind: Hamiltonian family and parameters
        n: Number of sites
        boundary: Open or periodic boundary
    """

    kind: ModelKind
    n: int
    boundary: Boundary = Boundary.OPEN

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ModelError(f"Site count must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ModelError(f"A chain needs at least 2 sites, got n={self.n}")

    @property
    def is_quadratic(self) -> bool:
        """Whether the model maps to free fermions."""
        return isinstance(self.kind, XY)

    def describe(self) -> str:
        """Descriptor of the Hamiltonian family (size and boundary excluded)."""
        return self.kind.describe()

    def with_size(self, n: int) -> SpinChainModel:
        """Same Hamiltonian on ``n`` sites."""
        return SpinChainModel(kind=self.kind, n=n, boundary=self.boundary)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {**self.kind.to_dict(), "n": self.n, "boundary": self.boundary.value}


@dataclass(frozen=True, eq=False)
class MajoranaQuadraticForm:
    """Quadratic Majorana Hamiltonian Ĥ = Σ_ij ŵ_i (iA)_ij ŵ_j.

    Attributes:
        A: Real antisymmetric 2n×2n coupling matrix
        n: Number of sites
        ordering: Majorana index convention
    """

    A: np.ndarray
    n: int
    ordering: str = MAJORANA_ORDERING

    def __post_init__(self) -> None:
        A = np.asarray(self.A)
        if np.iscomplexobj(A):
            if np.abs(A.imag).max(initial=0.0) > 0:
                raise ModelError("Majorana coupling matrix must be real")
            A = A.real
        A = A.astype(float)
        if A.shape != (2 * self.n, 2 * self.n):
            raise ModelError(f"Expected a {2 * self.n}x{2 * self.n} matrix, got {A.shape}")
        scale = max(1.0, float(np.abs(A).max(initial=0.0)))
        if np.abs(A + A.T).max(initial=0.0) > 1e-12 * scale:
            raise ModelError("Majorana coupling matrix is not antisymmetric")
        A = 0.5 * (A - A.T)
        A.setflags(write=False)
        object.__setattr__(self, "A", A)

    @property
    def hermitian(self) -> np.ndarray:
        """The Hermitian matrix iA."""
        return 1j * self.A


@dataclass(frozen=True, eq=False)
class SpinHamiltonianMatrix:
    """Explicit Hamiltonian in the σᶻ product basis (site 0 most significant).

    Attributes:
        matrix: Sparse real symmetric 2^n × 2^n matrix
        n: Number of sites
        model: Model the matrix was built from
    """

    matrix: sp.csr_matrix
    n: int
    model: SpinChainModel | None = field(default=None)

    @property
    def dimension(self) -> int:
        """Hilbert space dimension."""
        return 1 << self.n
