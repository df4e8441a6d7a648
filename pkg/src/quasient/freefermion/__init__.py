"""Free-fermion quasiparticles and Gaussian-state entanglement."""

from quasient.freefermion.correlations import (
    chi,
    correlation_excited,
    correlation_ground,
    half_chain_mode_weight,
)
from quasient.freefermion.entropy import (
    entanglement_entropy,
    entropy_from_nu,
    excess_entropy,
    kernel_dimension,
    schmidt_probabilities,
    spectrum_from_gamma,
)
from quasient.freefermion.models import (
    DEFAULT_TOLERANCES,
    CorrelationMatrix,
    EntanglementSpectrum,
    ExcitationSpec,
    QuasiparticleBasis,
    Tolerances,
)
from quasient.freefermion.solver import (
    diagonalize,
    majorana_reflection,
    many_body_energies,
    momentum_labels,
    reconstruct,
    vacuum_parity,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "CorrelationMatrix",
    "EntanglementSpectrum",
    "ExcitationSpec",
    "QuasiparticleBasis",
    "Tolerances",
    "chi",
    "correlation_excited",
    "correlation_ground",
    "diagonalize",
    "entanglement_entropy",
    "entropy_from_nu",
    "excess_entropy",
    "half_chain_mode_weight",
    "kernel_dimension",
    "majorana_reflection",
    "many_body_energies",
    "momentum_labels",
    "reconstruct",
    "schmidt_probabilities",
    "spectrum_from_gamma",
    "vacuum_parity",
]
