"""Exact diagonalization of small spin chains."""

from quasient.ed.eigensolver import (
    DEFAULT_SEED,
    MAX_STATES,
    energy_clusters,
    lowest_eigenstates,
    symmetry_rotate,
)
from quasient.ed.excess import excess_table, symmetric_eigenstates
from quasient.ed.models import EigenState, ExcessRow, OracleReport, SchmidtData, format_label
from quasient.ed.oracle import (
    annihilation_operators,
    compare_eigenstates,
    compare_quasiparticle_states,
    majorana_correlations,
    quasiparticle_state,
    quasiparticle_vacuum,
)
from quasient.ed.schmidt import schmidt_spectrum

__all__ = [
    "DEFAULT_SEED",
    "MAX_STATES",
    "EigenState",
    "ExcessRow",
    "OracleReport",
    "SchmidtData",
    "annihilation_operators",
    "compare_eigenstates",
    "compare_quasiparticle_states",
    "energy_clusters",
    "excess_table",
    "format_label",
    "lowest_eigenstates",
    "majorana_correlations",
    "quasiparticle_state",
    "quasiparticle_vacuum",
    "schmidt_spectrum",
    "symmetric_eigenstates",
    "symmetry_rotate",
]
