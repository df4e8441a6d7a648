"""Exact-diagonalization commands: ed-excess and ed-compare."""

from __future__ import annotations

from rich.console import Console
from rich.table import Table

from quasient.analysis.models import ScanRow
from quasient.analysis.scans import scan_ed_excess
from quasient.cli.commands.scans import deliver
from quasient.cli.config import RunConfig
from quasient.cli.emit import emit, render_records
from quasient.ed.models import OracleReport, format_label
from quasient.ed.oracle import compare_eigenstates, compare_quasiparticle_states
from quasient.exceptions import NumericalError

console = Console()

REPORT_COLUMNS = (
    "kind",
    "model",
    "n",
    "L",
    "states_compared",
    "states_skipped",
    "max_entropy_error",
    "max_energy_error",
    "max_gamma_error",
    "label_mismatches",
)


def execute_ed_excess(config: RunConfig, *, quiet: bool = False) -> list[ScanRow]:
    """Excess entropies of the lowest exact eigenstates."""
    rows: list[ScanRow] = []
    for n in config.sizes:
        rows.extend(
            scan_ed_excess(
                config.spin_model(n),
                config.states,
                cut=config.L,
                threshold=config.threshold,
                seed=config.seed,
            )
        )
    deliver(emit(rows, config.format, None, config.metadata()), config, quiet=quiet)
    if not quiet and config.output is not None:
        table = Table(title="Exact excess entropies", show_header=True, header_style="bold cyan")
        for column in ("n", "state", "S", "R", "P", "ΔS/log2", "k"):
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(
                str(row.n),
                row.modes,
                f"{row.S_excited:.6f}",
                format_label(row.reflection),
                format_label(row.parity),
                f"{row.dS_over_log2:.4f}",
                str(row.k_class) if row.is_regular else f"{row.k_class}?",
            )
        console.print(table)
    return rows


def execute_ed_compare(config: RunConfig, *, quiet: bool = False) -> list[OracleReport]:
    """Compare free-fermion and exact entropies; fail above the configured tolerance.

    Raises:
        NumericalError: If an entropy error exceeds the tolerance or labels disagree
    """
    reports: list[tuple[str, OracleReport]] = []
    for n in config.sizes:
        model = config.spin_model(n)
        reports.append(
            (
                "eigenstates",
                compare_eigenstates(
                    model, config.states, config.L, config.tolerances(), seed=config.seed
                ),
            )
        )
        if config.singles:
            reports.append(
                ("singles", compare_quasiparticle_states(model, config.L, config.tolerances()))
            )

    records = [{"kind": kind, **report.to_dict()} for kind, report in reports]
    if config.output is not None:
        payload = render_records(
            records, REPORT_COLUMNS, config.format, config.metadata(), key="reports"
        )
        deliver(payload, config, quiet=quiet)

    if not quiet:
        table = Table(title="Free fermions vs exact diagonalization", header_style="bold cyan")
        for column in ("kind", "n", "compared", "skipped", "max |ΔS|", "max |ΔE|", "labels"):
            table.add_column(column, justify="right")
        for kind, report in reports:
            table.add_row(
                kind,
                str(report.n),
                str(report.states_compared),
                str(report.states_skipped),
                f"{report.max_entropy_error:.2e}",
                f"{report.max_energy_error:.2e}",
                "ok" if report.label_mismatches == 0 else f"[red]{report.label_mismatches}[/red]",
            )
        console.print(table)

    worst = max(report.max_entropy_error for _, report in reports)
    mismatches = sum(report.label_mismatches for _, report in reports)
    if worst > config.tolerance or mismatches:
        raise NumericalError(
            f"Oracle mismatch: max entropy error {worst:.3e} (tolerance {config.tolerance:.1e}), "
            f"{mismatches} label mismatch(es)"
        )
    return [report for _, report in reports]
