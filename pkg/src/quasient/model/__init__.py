"""Spin-chain Hamiltonians and their Jordan-Wigner Majorana forms."""

from quasient.model.hamiltonians import (
    build_spin_matrix,
    build_xy_majorana,
    bulk_gap,
    check_spin_cap,
    dispersion,
    site_operator,
)
from quasient.model.jordan_wigner import majorana_operators
from quasient.model.models import (
    DEFAULT_SPIN_CAP,
    XY,
    Boundary,
    MajoranaQuadraticForm,
    ModelKind,
    SpinChainModel,
    SpinHamiltonianMatrix,
    TiltedIsing,
)
from quasient.model.symmetry import marshall_signs, parity_matrix, reflection_matrix

__all__ = [
    "DEFAULT_SPIN_CAP",
    "XY",
    "Boundary",
    "MajoranaQuadraticForm",
    "ModelKind",
    "SpinChainModel",
    "SpinHamiltonianMatrix",
    "TiltedIsing",
    "build_spin_matrix",
    "build_xy_majorana",
    "bulk_gap",
    "check_spin_cap",
    "dispersion",
    "majorana_operators",
    "marshall_signs",
    "parity_matrix",
    "reflection_matrix",
    "site_operator",
]
