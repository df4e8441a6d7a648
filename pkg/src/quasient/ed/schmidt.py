"""Schmidt decomposition of explicit many-body states."""

from __future__ import annotations

import numpy as np
import scipy.linalg as la
from scipy.special import entr

from quasient.ed.models import EigenState, SchmidtData
from quasient.exceptions import InputError

# Singular values below this are dropped from the reported list
SINGULAR_VALUE_FLOOR = 1e-13


def schmidt_spectrum(state: EigenState | np.ndarray, cut: int | None = None) -> SchmidtData:
    """Schmidt coefficients of a state across the bond after ``cut`` sites.

    The amplitude vector is reshaped row-major to 2^cut × 2^(n−cut), which
    puts the first ``cut`` sites on the left since site 0 is most significant.
    """
    vector = state.vector if isinstance(state, EigenState) else np.asarray(state)
    n = int(vector.size).bit_length() - 1
    if vector.size != 1 << n:
        raise InputError(f"State length {vector.size} is not a power of two")
    cut = n // 2 if cut is None else cut
    if not 1 <= cut < n:
        raise InputError(f"Cut {cut} outside [1, {n - 1}]")

    psi = vector.reshape(1 << cut, 1 << (n - cut))
    sigma = la.svdvals(psi)
    sigma = sigma[sigma > SINGULAR_VALUE_FLOOR]
    entropy = float(np.sum(entr(sigma**2)))
    return SchmidtData(singular_values=sigma, entropy=entropy, cut=cut)
