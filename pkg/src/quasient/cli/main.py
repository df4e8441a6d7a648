"""CLI entry point for quasient.

This module provides the command-line interface using Click. Command logic
lives in the commands package; this module parses options, layers them into
a RunConfig and reports errors.
"""

from __future__ import annotations

import functools
import json
import sys
import traceback
from collections.abc import Callable, Sequence
from typing import Any, TypeVar

import click
from rich.console import Console

from quasient import __version__
from quasient.cli.commands import (
    execute_ed_compare,
    execute_ed_excess,
    execute_mps_check,
    execute_scaling,
    execute_three_scan,
    execute_xi,
    execute_xy_scan,
)
from quasient.cli.config import build_run_config
from quasient.exceptions import EXIT_INTERRUPTED, EXIT_RUNTIME, QuasientError
from quasient.logging_setup import configure_logging

console = Console()
error_console = Console(stderr=True)

F = TypeVar("F", bound=Callable[..., Any])


@click.group()
@click.version_option(__version__, prog_name="quasient")
@click.option("-v", "--verbose", count=True, help="Increase verbosity")
@click.option("-q", "--quiet", is_flag=True, help="Suppress non-error output")
@click.option("--json", "json_output", is_flag=True, help="Report errors as JSON")
@click.option("--no-color", is_flag=True, help="Disable colored output")
@click.pass_context
def cli(
    ctx: click.Context,
    verbose: int,
    quiet: bool,
    json_output: bool,
    no_color: bool,
) -> None:
    """quasient - entanglement of quasiparticle excitations in spin chains."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet
    ctx.obj["json"] = json_output
    ctx.obj["no_color"] = no_color

    configure_logging(verbose, quiet=quiet, no_color=no_color)
    if no_color:
        console.no_color = True
        error_console.no_color = True


def report_error(ctx: click.Context, error: QuasientError) -> None:
    """Print an error as ``Error [CODE]`` plus hint, or as JSON with --json."""
    if ctx.obj.get("json"):
        click.echo(json.dumps(error.to_dict()), err=True)
        return
    error_console.print(f"[red]Error [{error.error_code}]: {error}[/red]", markup=True)
    if error.hint:
        error_console.print(f"[yellow]Hint: {error.hint}[/yellow]")
    if ctx.obj.get("verbose", 0) >= 2:
        traceback.print_exc()


def run_options(func: F) -> F:
    """Options shared by every subcommand."""
    options = [
        click.option(
            "--config", "config_file", type=click.Path(dir_okay=False), help="Config file"
        ),
        click.option("-o", "--output", type=click.Path(dir_okay=False), help="Output file"),
        click.option(
            "-f",
            "--format",
            "output_format",
            type=click.Choice(["csv", "json"]),
            default=None,
            help="Output format (default: csv)",
        ),
        click.option("--threads", type=int, default=None, help="Worker threads (0 = all cores)"),
        click.option("--seed", type=int, default=None, help="Seed for random draws"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def model_options(func: F) -> F:
    """Model and size options."""
    options = [
        click.option("--model", type=click.Choice(["xy", "tilted_ising"]), default=None),
        click.option("--gamma", type=float, default=None, help="XY anisotropy"),
        click.option("--h", "h", type=float, default=None, help="XY transverse field"),
        click.option("--J", "J", type=float, default=None, help="Coupling prefactor"),
        click.option("--hz", type=float, default=None, help="Tilted Ising transverse field"),
        click.option("--hx", type=float, default=None, help="Tilted Ising longitudinal field"),
        click.option("--boundary", type=click.Choice(["open", "periodic"]), default=None),
        click.option("--sizes", default=None, help="Comma-separated chain lengths"),
        click.option("--n", "n", type=int, default=None, help="Single chain length"),
        click.option("-L", "L", type=int, default=None, help="Subsystem size (default n/2)"),
        click.option("--threshold", type=float, default=None, help="Classification threshold"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def guarded(func: F) -> F:
    """Turn package errors into formatted messages and exit codes."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except QuasientError as e:
            report_error(ctx, e)
            raise SystemExit(e.exit_code) from e
        except KeyboardInterrupt as e:
            error_console.print("\n[yellow]Interrupted by user[/yellow]")
            raise SystemExit(EXIT_INTERRUPTED) from e

    return wrapper  # type: ignore[return-value]


def _config(command: str, config_file: str | None, **flags: Any) -> Any:
    n = flags.pop("n", None)
    if n is not None and flags.get("sizes") is None:
        flags["sizes"] = [n]
    flags["format"] = flags.pop("output_format", None)
    return build_run_config(command, config_file, **flags)


@cli.command("xy-scan")
@model_options
@click.option("--modes", default=None, help="Comma-separated mode indices (default: all)")
@run_options
@click.pass_context
@guarded
def xy_scan(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Excess entropy of every single-quasiparticle excitation of the XY chain."""
    execute_xy_scan(_config("xy-scan", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("three-scan")
@model_options
@click.option("--sweep", default=None, help="Comma-separated sweep indices (default: all)")
@run_options
@click.pass_context
@guarded
def three_scan(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Excess entropy of b†_i b†_{3n/4} b†_{n/4}|Ω⟩ over the sweep index i."""
    execute_three_scan(_config("three-scan", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("ed-excess")
@model_options
@click.option("--states", type=int, default=None, help="Number of eigenstates")
@run_options
@click.pass_context
@guarded
def ed_excess(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Excess entropy of the lowest exact eigenstates (any model)."""
    execute_ed_excess(_config("ed-excess", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("ed-compare")
@model_options
@click.option("--states", type=int, default=None, help="Number of eigenstates")
@click.option(
    "--singles/--no-singles", default=None, help="Also compare explicit single excitations"
)
@click.option("--tolerance", type=float, default=None, help="Largest accepted entropy error")
@run_options
@click.pass_context
@guarded
def ed_compare(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Cross-check free-fermion entropies against exact diagonalization."""
    execute_ed_compare(_config("ed-compare", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("mps-check")
@click.option("-D", "--bond-dim", "bond_dim", type=int, default=None, help="Bond dimension")
@click.option("--draws", type=int, default=None, help="Number of random tensors")
@click.option("--momentum", default=None, help="Comma-separated momenta")
@click.option("--tolerance", type=float, default=None, help="Largest accepted deviation")
@run_options
@click.pass_context
@guarded
def mps_check(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Check S[Φ] − S[Ω] = log 2 for random uniform MPS excitations."""
    execute_mps_check(_config("mps-check", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("scaling")
@model_options
@click.option("--phase", type=float, default=None, help="Target momentum (default π/2)")
@run_options
@click.pass_context
@guarded
def scaling(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Fit the finite-size correction log 2 − ΔS against n."""
    execute_scaling(_config("scaling", config_file, **flags), quiet=ctx.obj["quiet"])


@cli.command("xi")
@model_options
@run_options
@click.pass_context
@guarded
def xi(ctx: click.Context, config_file: str | None, **flags: Any) -> None:
    """Correlation length of the ground-state Majorana correlations."""
    execute_xi(_config("xi", config_file, **flags), quiet=ctx.obj["quiet"])


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="quasient",
            standalone_mode=False,
            obj={},
        )
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_RUNTIME
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return EXIT_INTERRUPTED
    return result if isinstance(result, int) else 0


def main() -> None:
    """Main entry point."""
    try:
        code = run(sys.argv[1:])
    except (BrokenPipeError, KeyboardInterrupt):
        sys.exit(EXIT_INTERRUPTED if isinstance(sys.exc_info()[1], KeyboardInterrupt) else 1)
    except Exception as e:
        error_console.print(f"[red]Error [RUNTIME_UNEXPECTED]: {e}[/red]")
        error_console.print("[yellow]Hint: Run with -vv for details.[/yellow]")
        if "-vv" in sys.argv:
            traceback.print_exc()
        sys.exit(EXIT_RUNTIME)
    sys.exit(code)


if __name__ == "__main__":
    main()
