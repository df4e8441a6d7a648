"""Free-fermion scan commands: xy-scan, three-scan, scaling and xi."""

from __future__ import annotations

from collections import defaultdict

import click
from rich.console import Console
from rich.table import Table

from quasient.analysis.fitting import estimate_xi
from quasient.analysis.models import LOG2, ScanRow
from quasient.analysis.runner import ScanRunner
from quasient.analysis.scans import (
    band_interior,
    in_peak_region,
    scan_correction_scaling,
    scan_single_particle,
    scan_three_particle,
    three_particle_fixed_modes,
)
from quasient.cli.config import RunConfig
from quasient.cli.emit import emit, render_records, write_payload

console = Console()

XI_COLUMNS = ("model", "n", "xi", "window_start", "window_end", "residual", "points")


def deliver(payload: bytes, config: RunConfig, *, quiet: bool) -> None:
    """Write the payload to the configured file, or to stdout when none is set."""
    if config.output is None:
        click.echo(payload.decode("utf-8"), nl=False)
        return
    size = write_payload(payload, config.output)
    if not quiet:
        console.print(f"[green]✓ Wrote {size} bytes to {config.output}[/green]")


def _show_summary(config: RunConfig, quiet: bool) -> bool:
    return config.output is not None and not quiet


def execute_xy_scan(config: RunConfig, *, quiet: bool = False) -> list[ScanRow]:
    """Single-particle excess entropies over all configured sizes and modes."""
    rows = scan_single_particle(
        config.spin_model(),
        config.sizes,
        config.modes,
        L=config.L,
        threshold=config.threshold,
        tolerances=config.tolerances(),
        runner=ScanRunner(config.threads),
    )
    deliver(emit(rows, config.format, None, config.metadata()), config, quiet=quiet)
    if _show_summary(config, quiet):
        _print_single_summary(rows)
    return rows


def _print_single_summary(rows: list[ScanRow]) -> None:
    by_size: dict[int, list[ScanRow]] = defaultdict(list)
    for row in rows:
        by_size[row.n].append(row)

    table = Table(title="Single-particle excess", show_header=True, header_style="bold cyan")
    table.add_column("n", justify="right")
    table.add_column("modes", justify="right")
    table.add_column("+ / −", justify="right")
    table.add_column("max ΔS/log2", justify="right")
    table.add_column("interior max(log2 − ΔS)", justify="right")
    for n, group in sorted(by_size.items()):
        interior = set(band_interior(n))
        deviations = [LOG2 - r.dS for r in group if int(r.modes) in interior]
        plus = sum(1 for r in group if r.reflection > 0)
        table.add_row(
            str(n),
            str(len(group)),
            f"{plus} / {len(group) - plus}",
            f"{max(r.dS_over_log2 for r in group):.6f}",
            f"{max(deviations):.3e}" if deviations else "-",
        )
    console.print(table)


def execute_three_scan(config: RunConfig, *, quiet: bool = False) -> list[ScanRow]:
    """Three-particle sweep with spectators at n/4 and 3n/4."""
    rows = scan_three_particle(
        config.spin_model(),
        config.sizes,
        config.sweep,
        L=config.L,
        threshold=config.threshold,
        tolerances=config.tolerances(),
        runner=ScanRunner(config.threads),
    )
    deliver(emit(rows, config.format, None, config.metadata()), config, quiet=quiet)
    if _show_summary(config, quiet):
        table = Table(title="Three-particle sweep", show_header=True, header_style="bold cyan")
        table.add_column("n", justify="right")
        table.add_column("plateau min ΔS/log2", justify="right")
        table.add_column("plateau max ΔS/log2", justify="right")
        table.add_column("peak min ΔS/log2", justify="right")
        for n in config.sizes:
            sweep = [r for r in rows if r.n == n]
            plateau = [r.dS_over_log2 for r in sweep if not in_peak_region(_sweep_index(r, n), n)]
            peaks = [r.dS_over_log2 for r in sweep if in_peak_region(_sweep_index(r, n), n)]
            table.add_row(
                str(n),
                f"{min(plateau):.6f}" if plateau else "-",
                f"{max(plateau):.6f}" if plateau else "-",
                f"{min(peaks):.6f}" if peaks else "-",
            )
        console.print(table)
    return rows


def _sweep_index(row: ScanRow, n: int) -> int:
    """The occupied mode that is not a spectator."""
    fixed = set(three_particle_fixed_modes(n))
    return next(int(k) for k in row.modes.split(";") if int(k) not in fixed)


def execute_scaling(config: RunConfig, *, quiet: bool = False) -> list[ScanRow]:
    """Fit log 2 − ΔS against n for the mode nearest the target phase in each reflection class."""
    rows: list[ScanRow] = []
    metadata = config.metadata()
    metadata["phase"] = config.phase
    fits = {}
    for label in (1, -1):
        class_rows, fit = scan_correction_scaling(
            config.spin_model(),
            config.sizes,
            phase=config.phase,
            reflection=label,
            L=config.L,
            threshold=config.threshold,
            tolerances=config.tolerances(),
        )
        rows.extend(class_rows)
        fits[label] = fit
        key = "plus" if label > 0 else "minus"
        metadata[f"exponent_{key}"] = fit.exponent
        metadata[f"r_squared_{key}"] = fit.r_squared

    deliver(emit(rows, config.format, None, metadata), config, quiet=quiet)
    if not quiet and config.output is not None:
        table = Table(title="Correction scaling", show_header=True, header_style="bold cyan")
        table.add_column("reflection")
        table.add_column("exponent", justify="right")
        table.add_column("amplitude", justify="right")
        table.add_column("r²", justify="right")
        for label, fit in fits.items():
            table.add_row(
                "+" if label > 0 else "−",
                f"{fit.exponent:.4f}",
                f"{fit.amplitude:.4g}",
                f"{fit.r_squared:.6f}",
            )
        console.print(table)
    return rows


def execute_xi(config: RunConfig, *, quiet: bool = False) -> list[dict[str, object]]:
    """Correlation length for each configured size."""
    records: list[dict[str, object]] = []
    for n in config.sizes:
        model = config.spin_model(n)
        estimate = estimate_xi(model, config.tolerances())
        records.append(
            {
                "model": model.describe(),
                "n": n,
                "xi": estimate.xi,
                "window_start": estimate.fit_window[0],
                "window_end": estimate.fit_window[1],
                "residual": estimate.residual,
                "points": estimate.points,
            }
        )
    payload = render_records(records, XI_COLUMNS, config.format, config.metadata(), key="estimates")
    deliver(payload, config, quiet=quiet)
    return records
