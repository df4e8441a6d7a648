"""Hamiltonian constructors: Majorana forms and explicit spin matrices."""

from __future__ import annotations

import logging
from functools import reduce

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize_scalar

from quasient.exceptions import ModelError, SizeCapError
from quasient.model.models import (
    DEFAULT_SPIN_CAP,
    XY,
    Boundary,
    MajoranaQuadraticForm,
    SpinChainModel,
    SpinHamiltonianMatrix,
    TiltedIsing,
)

logger = logging.getLogger(__name__)

SIGMA_X = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
SIGMA_Z = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))
# iσʸ is real; σʸ⊗σʸ = −(iσʸ)⊗(iσʸ)
I_SIGMA_Y = sp.csr_matrix(np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _require_xy(model: SpinChainModel) -> XY:
    if not isinstance(model.kind, XY):
        raise ModelError(
            f"{model.describe()} is not quadratic in Majorana operators",
            hint="Use build_spin_matrix and the exact-diagonalization oracle instead.",
        )
    return model.kind


def build_xy_majorana(model: SpinChainModel) -> MajoranaQuadraticForm:
    """Map an open XY chain to its quadratic Majorana form.

    With ŵ_{2j} = S_j σˣ_j and ŵ_{2j+1} = S_j σʸ_j (S_j the string of σᶻ left of j):
    σᶻ_j = −i ŵ_{2j} ŵ_{2j+1}, σˣ_jσˣ_{j+1} = −i ŵ_{2j+1} ŵ_{2j+2} and
    σʸ_jσʸ_{j+1} = i ŵ_{2j} ŵ_{2j+3}.

    Args:
        model: XY chain with open boundary

    Returns:
        Quadratic form with exactly antisymmetric A

    Raises:
        ModelError: For non-XY models or periodic boundary
    """
    xy = _require_xy(model)
    if model.boundary is not Boundary.OPEN:
        raise ModelError(
            "Periodic chains split into boundary-parity sectors and have no single Majorana form",
            hint="Free-fermion computations use open boundaries; periodic chains go through ED.",
        )

    n = model.n
    A = np.zeros((2 * n, 2 * n))
    jx = xy.J * (1.0 + xy.gamma) / 2.0
    jy = xy.J * (1.0 - xy.gamma) / 2.0

    def couple(a: int, b: int, value: float) -> None:
        A[a, b] += value
        A[b, a] -= value

    for j in range(n):
        couple(2 * j, 2 * j + 1, -xy.h / 2.0)
    for j in range(n - 1):
        couple(2 * j + 1, 2 * j + 2, -jx / 2.0)
        couple(2 * j, 2 * j + 3, jy / 2.0)

    return MajoranaQuadraticForm(A=A, n=n)


def site_operator(op: sp.spmatrix, site: int, n: int) -> sp.csr_matrix:
    """Embed a single-site operator at ``site`` of an n-site chain."""
    left = sp.identity(1 << site, format="csr")
    right = sp.identity(1 << (n - site - 1), format="csr")
    return sp.kron(sp.kron(left, op, format="csr"), right, format="csr")


def _bond_operator(op_a: sp.spmatrix, op_b: sp.spmatrix, i: int, j: int, n: int) -> sp.csr_matrix:
    return (site_operator(op_a, i, n) @ site_operator(op_b, j, n)).tocsr()


def _bonds(n: int, boundary: Boundary) -> list[tuple[int, int]]:
    bonds = [(j, j + 1) for j in range(n - 1)]
    if boundary is Boundary.PERIODIC and n > 2:
        bonds.append((n - 1, 0))
    return bonds


def check_spin_cap(n: int, cap: int = DEFAULT_SPIN_CAP) -> None:
    """Raise SizeCapError when a 2^n object would exceed the cap."""
    if n > cap:
        raise SizeCapError(
            f"n={n} exceeds the explicit spin-matrix cap of {cap} sites",
            size=n,
            cap=cap,
            hint="Use the free-fermion path for large XY chains.",
        )


def build_spin_matrix(
    model: SpinChainModel, *, cap: int = DEFAULT_SPIN_CAP
) -> SpinHamiltonianMatrix:
    """Build the explicit sparse Hamiltonian in the σᶻ product basis.

    Args:
        model: Any supported chain, open or periodic
        cap: Maximum number of sites

    Returns:
        Real symmetric CSR matrix wrapped with its model

    Raises:
        SizeCapError: If n exceeds the cap
    """
    n = model.n
    check_spin_cap(n, cap)
    dim = 1 << n
    terms: list[sp.csr_matrix] = [sp.csr_matrix((dim, dim))]
    bonds = _bonds(n, model.boundary)
    kind = model.kind

    if isinstance(kind, XY):
        jx = kind.J * (1.0 + kind.gamma) / 2.0
        jy = kind.J * (1.0 - kind.gamma) / 2.0
        for i, j in bonds:
            if jx:
                terms.append(jx * _bond_operator(SIGMA_X, SIGMA_X, i, j, n))
            if jy:
                terms.append(-jy * _bond_operator(I_SIGMA_Y, I_SIGMA_Y, i, j, n))
        if kind.h:
            terms.extend(kind.h * site_operator(SIGMA_Z, j, n) for j in range(n))
    elif isinstance(kind, TiltedIsing):
        for i, j in bonds:
            terms.append(kind.J * _bond_operator(SIGMA_X, SIGMA_X, i, j, n))
        for j in range(n):
            terms.append(kind.hz * site_operator(SIGMA_Z, j, n))
            terms.append(kind.hx * site_operator(SIGMA_X, j, n))
    else:  # pragma: no cover - guarded by SpinChainModel typing
        raise ModelError(f"Unsupported model kind: {kind!r}")

    matrix = reduce(lambda a, b: a + b, terms).tocsr()
    matrix.eliminate_zeros()
    logger.debug("Built %dx%d spin matrix with %d nonzeros", dim, dim, matrix.nnz)
    return SpinHamiltonianMatrix(matrix=matrix, n=n, model=model)


def dispersion(xy: XY, k: np.ndarray | float) -> np.ndarray:
    """Infinite-chain quasiparticle energy ε(k) = 2√((h − J cos k)² + J²γ² sin²k)."""
    k = np.asarray(k, dtype=float)
    return 2.0 * np.sqrt((xy.h - xy.J * np.cos(k)) ** 2 + (xy.J * xy.gamma * np.sin(k)) ** 2)


def bulk_gap(xy: XY, *, grid: int = 4097) -> float:
    """Minimum of the bulk dispersion over k ∈ [0, π].

    Open ordered chains carry exponentially small edge modes, so the finite-chain
    minimum is not a gap criterion; the bulk dispersion is.
    """
    ks = np.linspace(0.0, np.pi, grid)
    values = dispersion(xy, ks)
    best = int(np.argmin(values))
    lo = ks[max(best - 1, 0)]
    hi = ks[min(best + 1, grid - 1)]
    gap = float(values[best])
    if hi > lo:
        result = minimize_scalar(
            lambda k: float(dispersion(xy, k)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-14},
        )
        gap = min(gap, float(result.fun))
    return gap
