"""Entanglement scans, scaling fits and quasiparticle classification."""

from quasient.analysis.fitting import classify_quasiparticles, estimate_xi, fit_correction
from quasient.analysis.models import (
    DEFAULT_CLASSIFY_THRESHOLD,
    LOG2,
    CorrelationLengthEstimate,
    ScalingFit,
    ScanRow,
)
from quasient.analysis.runner import ScanRunner
from quasient.analysis.scans import (
    band_interior,
    degeneracy_profile,
    in_peak_region,
    make_row,
    nearest_to_phase,
    pairing_mismatch,
    scan_correction_scaling,
    scan_ed_excess,
    scan_multi_particle,
    scan_single_particle,
    scan_three_particle,
    three_particle_fixed_modes,
)

__all__ = [
    "DEFAULT_CLASSIFY_THRESHOLD",
    "LOG2",
    "CorrelationLengthEstimate",
    "ScalingFit",
    "ScanRow",
    "ScanRunner",
    "band_interior",
    "classify_quasiparticles",
    "degeneracy_profile",
    "estimate_xi",
    "fit_correction",
    "in_peak_region",
    "make_row",
    "nearest_to_phase",
    "pairing_mismatch",
    "scan_correction_scaling",
    "scan_ed_excess",
    "scan_multi_particle",
    "scan_single_particle",
    "scan_three_particle",
    "three_particle_fixed_modes",
]
