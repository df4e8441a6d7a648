"""Jordan-Wigner Majorana operators on the explicit spin Hilbert space."""

from __future__ import annotations

from functools import reduce

import numpy as np
import scipy.sparse as sp

from quasient.model.hamiltonians import check_spin_cap
from quasient.model.models import DEFAULT_SPIN_CAP

_X = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
_Y = sp.csr_matrix(np.array([[0.0, -1.0j], [1.0j, 0.0]]))
_Z = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))
_I = sp.identity(2, dtype=complex, format="csr")


def _string(op: sp.csr_matrix, site: int, n: int) -> sp.csr_matrix:
    factors = [_Z] * site + [op] + [_I] * (n - site - 1)
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), factors)


def majorana_operators(n: int, *, cap: int = DEFAULT_SPIN_CAP) -> list[sp.csr_matrix]:
    """Return [ŵ_0, ..., ŵ_{2n−1}] with ŵ_{2j} = S_j σˣ_j and ŵ_{2j+1} = S_j σʸ_j.

    S_j = Π_{l<j} σᶻ_l. The operators are Hermitian and satisfy {ŵ_a, ŵ_b} = 2δ_ab.
    """
    check_spin_cap(n, cap)
    ops: list[sp.csr_matrix] = []
    for j in range(n):
        ops.append(_string(_X, j, n))
        ops.append(_string(_Y, j, n))
    return ops
