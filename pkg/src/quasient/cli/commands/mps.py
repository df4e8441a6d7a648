"""The mps-check command: excess entropy of random MPS momentum excitations."""

from __future__ import annotations

from typing import Any

import click
import numpy as np

from quasient.analysis.runner import ScanRunner
from quasient.cli.commands.scans import deliver
from quasient.cli.config import RunConfig
from quasient.cli.emit import render_records
from quasient.exceptions import NumericalError
from quasient.mpsx.excitation import doubling_mismatch, excitation_spectrum, random_excitation
from quasient.mpsx.transfer import ground_spectrum, random_uniform_mps

MPS_COLUMNS = (
    "draw",
    "bond_dim",
    "momentum",
    "S_ground",
    "S_excited",
    "deviation",
    "spectrum_mismatch",
)


def check_draw(
    draw: int, seed: np.random.SeedSequence, bond_dim: int, momenta: list[float]
) -> list[dict[str, Any]]:
    """One random tensor A and, per momentum, one random excitation B."""
    rng = np.random.default_rng(seed)
    ump = random_uniform_mps(bond_dim, rng=rng)
    ground = ground_spectrum(ump)
    records = []
    for momentum in momenta:
        spectrum = excitation_spectrum(ump, random_excitation(ump, momentum, rng))
        records.append(
            {
                "draw": draw,
                "bond_dim": bond_dim,
                "momentum": momentum,
                "S_ground": ground.entropy,
                "S_excited": spectrum.entropy,
                "deviation": spectrum.deviation,
                "spectrum_mismatch": doubling_mismatch(ground.eigenvalues, spectrum.eigenvalues),
            }
        )
    return records


def execute_mps_check(config: RunConfig, *, quiet: bool = False) -> list[dict[str, Any]]:
    """Print one line per (draw, momentum) and fail if any deviation exceeds the tolerance.

    Raises:
        NumericalError: If |S[Φ] − S[Ω] − log 2| or the spectrum mismatch exceeds the tolerance
    """
    children = np.random.SeedSequence(config.seed).spawn(config.draws)
    batches = ScanRunner(config.threads).map(
        lambda item: check_draw(item[0], item[1], config.bond_dim, list(config.momentum)),
        list(enumerate(children)),
    )
    records = [record for batch in batches for record in batch]

    for record in records:
        click.echo(
            f"draw {record['draw']:3d}  D={record['bond_dim']}  kappa={record['momentum']:.6f}  "
            f"|dS - log2| = {record['deviation']:.3e}  "
            f"spectrum mismatch = {record['spectrum_mismatch']:.3e}"
        )
    if config.output is not None:
        payload = render_records(
            records, MPS_COLUMNS, config.format, config.metadata(), key="draws"
        )
        deliver(payload, config, quiet=quiet)

    worst = max(max(r["deviation"], r["spectrum_mismatch"]) for r in records)
    if worst > config.tolerance:
        raise NumericalError(
            f"Excitation entropy identity violated by {worst:.3e} "
            f"(tolerance {config.tolerance:.1e})"
        )
    return records
