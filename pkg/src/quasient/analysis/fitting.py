"""Scaling fits, quasiparticle classification and correlation lengths."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.stats import linregress

from quasient.analysis.models import (
    DEFAULT_CLASSIFY_THRESHOLD,
    LOG2,
    CorrelationLengthEstimate,
    ScalingFit,
)
from quasient.exceptions import InputError, UndefinedCorrelationLengthError
from quasient.freefermion.correlations import correlation_ground
from quasient.freefermion.models import DEFAULT_TOLERANCES, Tolerances
from quasient.freefermion.solver import diagonalize
from quasient.model.hamiltonians import build_xy_majorana, bulk_gap
from quasient.model.models import MajoranaQuadraticForm, SpinChainModel

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 3
GAP_THRESHOLD = 1e-8
XI_NOISE_FLOOR = 1e-12
XI_EDGE_FRACTION = 0.1


def fit_correction(points: Sequence[tuple[float, float]]) -> ScalingFit:
    """Least-squares power law through (n, value) points in log-log space.

    Points with value ≤ 0 are excluded and logged.

    Raises:
        InputError: If fewer than three usable points remain
    """
    usable = [(float(n), float(v)) for n, v in points if v > 0 and n > 0]
    excluded = [(float(n), float(v)) for n, v in points if not (v > 0 and n > 0)]
    for n, v in excluded:
        logger.warning("Excluding n=%g from the fit: nonpositive value %.3e", n, v)
    if len(usable) < MIN_FIT_POINTS:
        raise InputError(
            f"Need at least {MIN_FIT_POINTS} positive points for a fit, got {len(usable)}"
        )
    x = np.log([n for n, _ in usable])
    y = np.log([v for _, v in usable])
    result = linregress(x, y)
    return ScalingFit(
        exponent=float(result.slope),
        amplitude=float(np.exp(result.intercept)),
        r_squared=float(np.clip(result.rvalue**2, 0.0, 1.0)),
        points=usable,
        excluded=excluded,
    )


def classify_quasiparticles(
    dS: float, threshold: float = DEFAULT_CLASSIFY_THRESHOLD
) -> tuple[int, bool]:
    """Nearest quasiparticle count k for ΔS and whether |ΔS/log 2 − k| < threshold."""
    ratio = dS / LOG2
    k = max(math.floor(ratio + 0.5), 0)
    return k, abs(ratio - k) < threshold


def _check_gapped(source: SpinChainModel | MajoranaQuadraticForm, epsilon: np.ndarray) -> None:
    if isinstance(source, SpinChainModel):
        gap = bulk_gap(source.kind)
        what = f"{source.describe()} has bulk gap {gap:.3e}"
    else:
        gap = float(epsilon.min()) if epsilon.size else 0.0
        what = f"Smallest quasiparticle energy {gap:.3e}"
    if gap <= GAP_THRESHOLD:
        raise UndefinedCorrelationLengthError(
            f"{what}; correlation length undefined",
            hint="Choose parameters away from the critical line.",
        )


def estimate_xi(
    source: SpinChainModel | MajoranaQuadraticForm,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    *,
    edge_fraction: float = XI_EDGE_FRACTION,
    noise_floor: float = XI_NOISE_FLOOR,
) -> CorrelationLengthEstimate:
    """Fit the decay of ground-state Majorana correlations to e^{−r/ξ}.

    The reference site sits at the start of the interior window, which drops
    ``edge_fraction`` of the sites at each end. Each distance contributes the
    largest |Γ| entry between the two sites; entries at or below
    ``noise_floor`` are not fitted. With fewer than three usable distances ξ
    is reported at the resolution limit 1/ln(1/noise_floor).

    Raises:
        UndefinedCorrelationLengthError: If the chain is gapless
    """
    form = build_xy_majorana(source) if isinstance(source, SpinChainModel) else source
    basis = diagonalize(form, tolerances)
    _check_gapped(source, basis.epsilon)

    n = basis.n
    start = math.ceil(edge_fraction * n)
    stop = n - 1 - start
    if stop - start < 1:
        raise InputError(f"Chain of {n} sites too short for an interior window")
    gamma = correlation_ground(basis, n).Gamma
    ref = gamma[2 * start : 2 * start + 2]
    distances = np.arange(1, stop - start + 1)
    decay = np.array(
        [np.abs(ref[:, 2 * (start + r) : 2 * (start + r) + 2]).max() for r in distances]
    )

    keep = decay > noise_floor
    resolution = 1.0 / math.log(1.0 / noise_floor)
    if np.count_nonzero(keep) < MIN_FIT_POINTS:
        logger.info("Correlations vanish within %d sites; xi at resolution limit", MIN_FIT_POINTS)
        return CorrelationLengthEstimate(
            xi=resolution,
            fit_window=(start, stop),
            residual=0.0,
            points=int(np.count_nonzero(keep)),
        )

    x = distances[keep].astype(float)
    y = np.log(decay[keep])
    result = linregress(x, y)
    if result.slope >= 0:
        raise UndefinedCorrelationLengthError("Correlations do not decay across the window")
    fitted = result.intercept + result.slope * x
    return CorrelationLengthEstimate(
        xi=float(max(-1.0 / result.slope, resolution)),
        fit_window=(start, stop),
        residual=float(np.sqrt(np.mean((y - fitted) ** 2))),
        points=int(x.size),
    )
