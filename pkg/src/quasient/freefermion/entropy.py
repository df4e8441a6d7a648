"""Entanglement spectra and entropies from Majorana correlation matrices."""

from __future__ import annotations

import heapq
import logging

import numpy as np
import scipy.linalg as la
from scipy.special import xlogy

from quasient.exceptions import PhysicalityError
from quasient.freefermion.correlations import correlation_excited, correlation_ground
from quasient.freefermion.models import (
    DEFAULT_TOLERANCES,
    CorrelationMatrix,
    EntanglementSpectrum,
    ExcitationSpec,
    QuasiparticleBasis,
    Tolerances,
)
from quasient.freefermion.solver import diagonalize
from quasient.model.models import MajoranaQuadraticForm

logger = logging.getLogger(__name__)

SCHMIDT_MAX_COUNT = 1 << 20
SCHMIDT_WEIGHT_CUTOFF = 1e-12


def entropy_from_nu(nu: np.ndarray, purity: float = DEFAULT_TOLERANCES.purity) -> float:
    """S = Σ_j h((1+ν_j)/2), h the binary entropy in nats.

    ν within ``purity`` of 1 counts as exactly 1, so pure states give S = 0.
    """
    nu = np.asarray(nu, dtype=float)
    nu = np.where(nu >= 1.0 - purity, 1.0, nu)
    p = (1.0 + nu) / 2.0
    q = (1.0 - nu) / 2.0
    return float(np.sum(-xlogy(p, p) - xlogy(q, q)))


def schmidt_probabilities(
    nu: np.ndarray,
    *,
    max_count: int = SCHMIDT_MAX_COUNT,
    weight_cutoff: float = SCHMIDT_WEIGHT_CUTOFF,
) -> np.ndarray:
    """Largest reduced-density eigenvalues Π_j (1 + m_j ν_j)/2, descending.

    Best-first enumeration over sign flips: flipping m_j costs
    log((1+ν_j)/(1−ν_j)). Stops after ``max_count`` values or once the
    cumulative weight reaches 1 − ``weight_cutoff``.
    """
    nu = np.clip(np.asarray(nu, dtype=float), 0.0, 1.0)
    base = float(np.exp(np.sum(np.log((1.0 + nu) / 2.0))))
    flippable = nu[nu < 1.0]
    costs = np.sort(np.log1p(flippable) - np.log1p(-flippable))

    probs = [base]
    total = base
    heap: list[tuple[float, int]] = []
    if costs.size:
        heap.append((float(costs[0]), 0))
    while heap and len(probs) < max_count and total < 1.0 - weight_cutoff:
        cost, last = heapq.heappop(heap)
        p = base * float(np.exp(-cost))
        probs.append(p)
        total += p
        nxt = last + 1
        if nxt < costs.size:
            heapq.heappush(heap, (cost + float(costs[nxt]), nxt))
            heapq.heappush(heap, (cost - float(costs[last]) + float(costs[nxt]), nxt))
    return np.array(probs)


def spectrum_from_gamma(
    corr: CorrelationMatrix,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    *,
    with_schmidt: bool = False,
    max_count: int = SCHMIDT_MAX_COUNT,
) -> EntanglementSpectrum:
    """Entanglement spectrum from the ±ν eigenvalue pairs of iΓ.

    Args:
        corr: Correlation matrix of a Gaussian state
        tolerances: Clamp tolerance for |ν| > 1
        with_schmidt: Also enumerate the largest Schmidt probabilities
        max_count: Cap on enumerated probabilities

    Raises:
        PhysicalityError: If an eigenvalue leaves [−1−tol, 1+tol]
    """
    L = corr.L
    evals = la.eigvalsh(1j * corr.Gamma)
    # pair the ascending spectrum: top half against the mirrored bottom half
    nu = 0.5 * (evals[L:] - evals[:L][::-1])
    violation = float(max(nu.max(initial=0.0) - 1.0, -nu.min(initial=0.0), 0.0))
    if violation > tolerances.clamp:
        raise PhysicalityError(
            f"Correlation eigenvalue outside [-1, 1] by {violation:.3e} ({corr.source})",
            violation=violation,
        )
    nu = np.clip(nu, 0.0, 1.0)[::-1]
    probs = schmidt_probabilities(nu, max_count=max_count) if with_schmidt else None
    entropy = entropy_from_nu(nu, tolerances.purity)
    return EntanglementSpectrum(nu=nu, entropy=entropy, schmidt_probs=probs)


def kernel_dimension(
    corr: CorrelationMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """dim ker Γ, i.e. twice the number of ν below the kernel tolerance."""
    spectrum = spectrum_from_gamma(corr, tolerances)
    return 2 * int(np.count_nonzero(spectrum.nu < tolerances.kernel))


def _as_basis(
    form: MajoranaQuadraticForm | QuasiparticleBasis, tolerances: Tolerances
) -> QuasiparticleBasis:
    if isinstance(form, QuasiparticleBasis):
        return form
    return diagonalize(form, tolerances)


def entanglement_entropy(
    form: MajoranaQuadraticForm | QuasiparticleBasis,
    spec: ExcitationSpec | None = None,
    L: int | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Entropy of the first L sites in b†_K|Ω⟩ (vacuum when spec is None)."""
    basis = _as_basis(form, tolerances)
    L = basis.n // 2 if L is None else L
    corr = correlation_ground(basis, L) if spec is None else correlation_excited(basis, spec, L)
    return spectrum_from_gamma(corr, tolerances).entropy


def excess_entropy(
    form: MajoranaQuadraticForm | QuasiparticleBasis,
    spec: ExcitationSpec,
    L: int | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """ΔS = S(b†_K|Ω⟩) − S(|Ω⟩) for the first L sites (default n/2)."""
    basis = _as_basis(form, tolerances)
    if spec.is_ground:
        return 0.0
    ground = entanglement_entropy(basis, None, L, tolerances)
    excited = entanglement_entropy(basis, spec, L, tolerances)
    return excited - ground
