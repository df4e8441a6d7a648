"""Uniform matrix product states and the entanglement of momentum excitations."""

from quasient.mpsx.excitation import (
    doubling_mismatch,
    excitation_environments,
    excitation_norm,
    excitation_spectrum,
    gauge_fix,
    gauge_residual,
    random_excitation,
    schmidt_from_grams,
    window_blocks,
)
from quasient.mpsx.models import (
    DEFAULT_BOND_CAP,
    LOG2,
    ExcitationEnvironments,
    ExcitationSpectrum,
    ExcitationTensor,
    GroundSpectrum,
    UniformMPS,
    spectrum_entropy,
)
from quasient.mpsx.transfer import (
    apply_left,
    apply_right,
    conjugate_gauge,
    fixed_points,
    ground_spectrum,
    normalize,
    random_uniform_mps,
    transfer_matrix,
)
from quasient.mpsx.window import (
    block_tensor,
    block_window_spectrum,
    finite_window_state,
    window_schmidt_spectrum,
)

__all__ = [
    "DEFAULT_BOND_CAP",
    "LOG2",
    "ExcitationEnvironments",
    "ExcitationSpectrum",
    "ExcitationTensor",
    "GroundSpectrum",
    "UniformMPS",
    "apply_left",
    "apply_right",
    "block_tensor",
    "block_window_spectrum",
    "conjugate_gauge",
    "doubling_mismatch",
    "excitation_environments",
    "excitation_norm",
    "excitation_spectrum",
    "finite_window_state",
    "fixed_points",
    "gauge_fix",
    "gauge_residual",
    "ground_spectrum",
    "normalize",
    "random_excitation",
    "random_uniform_mps",
    "schmidt_from_grams",
    "spectrum_entropy",
    "transfer_matrix",
    "window_blocks",
    "window_schmidt_spectrum",
]
