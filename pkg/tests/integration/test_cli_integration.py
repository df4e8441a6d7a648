"""Integration tests for CLI commands.

These tests run the subcommands with their default, full-size parameters.
"""

from __future__ import annotations

import json
import subprocess
import sys
from typing import TYPE_CHECKING

import pytest
from click.testing import CliRunner

from quasient import __version__
from quasient.analysis import LOG2
from quasient.cli.emit import load_rows
from quasient.cli.main import cli

if TYPE_CHECKING:
    from pathlib import Path

# Mark all tests as integration tests
pytestmark = pytest.mark.integration


@pytest.fixture
def runner() -> CliRunner:
    """Create CLI runner."""
    return CliRunner()


class TestModuleEntryPoint:
    """Test ``python -m quasient``."""

    def test_version(self) -> None:
        """Test the version flag through the interpreter."""
        result = subprocess.run(
            [sys.executable, "-m", "quasient", "--version"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert result.returncode == 0
        assert __version__ in result.stdout

    def test_error_exit_code(self) -> None:
        """Test that config errors surface as exit code 2 on stderr."""
        result = subprocess.run(
            [sys.executable, "-m", "quasient", "xy-scan", "--sizes", "7"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert result.returncode == 2
        assert "CONFIG_INVALID" in result.stderr


@pytest.mark.slow
class TestDefaultRuns:
    """Subcommands at their default sizes."""

    def test_xy_scan_round_trip(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the default XY scan written as JSON and read back."""
        path = tmp_path / "xy.json"
        result = runner.invoke(cli, ["-q", "xy-scan", "-f", "json", "-o", str(path)])
        assert result.exit_code == 0, result.output

        rows = load_rows(path)
        assert len(rows) == 128 + 256 + 512
        assert all(r.dS <= LOG2 + 1e-9 for r in rows)
        metadata = json.loads(path.read_text())["metadata"]
        assert metadata["command"] == "xy-scan"
        assert metadata["version"] == __version__

    def test_three_scan(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the default three-particle sweep at n = 512."""
        path = tmp_path / "three.json"
        result = runner.invoke(
            cli, ["-q", "three-scan", "--threads", "2", "-f", "json", "-o", str(path)]
        )
        assert result.exit_code == 0, result.output
        rows = load_rows(path)
        assert len(rows) == 510
        middle = next(r for r in rows if r.modes == "128;256;384")
        assert middle.k_class == 3

    def test_ed_compare(self, runner: CliRunner) -> None:
        """Test the default oracle run at n = 10."""
        result = runner.invoke(cli, ["ed-compare", "--singles"])
        assert result.exit_code == 0, result.output

    def test_mps_check_config_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the MPS identity driven by a config file."""
        config = tmp_path / "mps.conf"
        config.write_text(
            "# random draws\nbond_dim = 8\ndraws = 20\nmomentum = 0, 1.5708, 3.1416\n"
        )
        result = runner.invoke(cli, ["mps-check", "--config", str(config), "--seed", "7"])
        assert result.exit_code == 0, result.output
