"""Tests for the command-line interface, run configuration and output writers."""

from __future__ import annotations

import csv
import json
from typing import TYPE_CHECKING

import pytest
from click.testing import CliRunner

from quasient import __version__
from quasient.analysis import ScanRow
from quasient.cli.config import RunConfig, build_run_config, load_config_file
from quasient.cli.emit import CSV_COLUMNS, emit, format_float, load_rows, render_records
from quasient.cli.main import cli, run
from quasient.exceptions import ConfigError, InputError

if TYPE_CHECKING:
    from pathlib import Path


def _data_lines(output: str) -> list[str]:
    """CSV lines after the metadata header and column row."""
    lines = [line for line in output.splitlines() if line and not line.startswith("#")]
    return lines[1:]


@pytest.fixture
def runner() -> CliRunner:
    """Create CLI runner."""
    return CliRunner()


class TestRunConfig:
    """Tests for RunConfig and build_run_config."""

    def test_command_defaults(self) -> None:
        """Test per-command defaults."""
        config = build_run_config("three-scan")
        assert config.gamma == 1.0
        assert config.h == 2.0
        assert config.sizes == [512]

    def test_flags_override(self) -> None:
        """Test that flags win and None flags are ignored."""
        config = build_run_config("xy-scan", sizes="16,8", gamma=None, h=0.5)
        assert config.sizes == [8, 16]
        assert config.gamma == 0.5
        assert config.h == 0.5

    def test_odd_size_rejected(self) -> None:
        """Test the even-size requirement."""
        with pytest.raises(ConfigError) as exc_info:
            build_run_config("xy-scan", sizes="7")
        assert "sizes" in str(exc_info.value)
        assert exc_info.value.hint is not None

    def test_duplicate_sizes_rejected(self) -> None:
        """Test duplicate detection."""
        with pytest.raises(ConfigError):
            build_run_config("xy-scan", sizes="8,8")

    def test_quadratic_commands_need_xy(self) -> None:
        """Test that free-fermion commands refuse the tilted chain."""
        with pytest.raises(ConfigError, match="quadratic"):
            build_run_config("xy-scan", model="tilted_ising")

    def test_periodic_only_for_ed(self) -> None:
        """Test that periodic chains are limited to ed-excess."""
        with pytest.raises(ConfigError):
            build_run_config("scaling", boundary="periodic")
        assert build_run_config("ed-excess", boundary="periodic").boundary == "periodic"

    def test_all_modes(self) -> None:
        """Test that "all" means every mode."""
        assert build_run_config("xy-scan", modes="all").modes is None
        assert build_run_config("xy-scan", modes="1,2").modes == [1, 2]

    def test_unknown_key(self, tmp_path: Path) -> None:
        """Test that unknown config keys are rejected."""
        path = tmp_path / "run.cfg"
        path.write_text("colour = blue\n")
        with pytest.raises(ConfigError):
            build_run_config("xy-scan", path)

    def test_key_value_file(self, tmp_path: Path) -> None:
        """Test the key = value format with comments and dashes."""
        path = tmp_path / "run.cfg"
        path.write_text("# scan\nsizes = 8, 12\nbond-dim = 3\n")
        assert load_config_file(path) == {"sizes": "8, 12", "bond_dim": "3"}

    def test_malformed_line(self, tmp_path: Path) -> None:
        """Test a line without '='."""
        path = tmp_path / "run.cfg"
        path.write_text("sizes 8\n")
        with pytest.raises(ConfigError, match="run.cfg:1"):
            load_config_file(path)

    def test_toml_file(self, tmp_path: Path) -> None:
        """Test TOML config files."""
        path = tmp_path / "run.toml"
        path.write_text("sizes = [8, 12]\nthreshold = 0.2\n")
        config = build_run_config("xy-scan", path, threshold=0.3)
        assert config.sizes == [8, 12]
        assert config.threshold == 0.3

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test TOML syntax errors."""
        path = tmp_path / "run.toml"
        path.write_text("sizes = [8,\n")
        with pytest.raises(ConfigError, match="TOML"):
            load_config_file(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test an unreadable config file."""
        with pytest.raises(ConfigError):
            load_config_file(tmp_path / "missing.cfg")

    def test_metadata(self) -> None:
        """Test the metadata header."""
        config = RunConfig(command="mps-check", bond_dim=3, draws=2, momentum=[0.0, 1.5])
        data = config.metadata()
        assert data["command"] == "mps-check"
        assert data["version"] == __version__
        assert data["model"] == "uniform_mps"
        assert data["momentum"] == [0.0, 1.5]
        assert data["bond_dim"] == 3
        assert "output" not in data

    def test_metadata_records_every_setting(self, tmp_path: Path) -> None:
        """Test that modes, states and the rest of the configuration reach the header."""
        config = build_run_config(
            "xy-scan", sizes="16", modes="3,5", states=12, output=tmp_path / "x.csv"
        )
        data = config.metadata()
        assert data["modes"] == [3, 5]
        assert data["states"] == 12
        assert data["model"] == "xy(gamma=0.5,h=0.9,J=1)"
        assert data["model_family"] == "xy"
        assert data["tolerances"]["clamp"] == config.clamp
        assert "band_edge_fraction" not in data
        assert "output" not in data
        assert build_run_config("three-scan").metadata()["peak_half_width"] > 0

    def test_metadata_csv_header(self) -> None:
        """Test header lines for lists, unset values and flags."""
        config = build_run_config("xy-scan", sizes="8", modes="1,2")
        lines = emit([], "csv", metadata=config.metadata()).decode().splitlines()
        assert "# modes=[1, 2]" in lines
        assert "# L=none" in lines
        assert "# singles=false" in lines

    def test_spin_model(self) -> None:
        """Test model construction at a given size."""
        config = build_run_config("ed-excess", sizes="8,10", hx=0.5)
        model = config.spin_model(10)
        assert model.n == 10
        assert model.describe() == "tilted_ising(J=1,hz=1,hx=0.5)"
        assert config.spin_model().n == 8


class TestEmit:
    """Tests for CSV and JSON writers."""

    @pytest.fixture
    def row(self) -> ScanRow:
        """A single scan row."""
        return ScanRow(
            model="xy(gamma=1,h=2,J=1)",
            n=8,
            L=4,
            boundary="open",
            modes="3",
            reflection=-1,
            parity=1,
            momentum=(0.5,),
            S_ground=0.1,
            S_excited=0.8,
            dS=0.7,
            dS_over_log2=0.7 / 0.6931471805599453,
            k_class=1,
            is_regular=True,
        )

    def test_csv(self, row: ScanRow) -> None:
        """Test CSV header, labels and booleans."""
        text = emit([row], "csv", metadata={"command": "xy-scan", "seed": 7}).decode()
        lines = text.splitlines()
        assert lines[0] == "# command=xy-scan"
        assert lines[1] == "# seed=7"
        assert lines[2] == ",".join(CSV_COLUMNS)
        cells = dict(zip(CSV_COLUMNS, next(csv.reader([lines[3]])), strict=True))
        assert cells["reflection"] == "-"
        assert cells["parity"] == "+"
        assert cells["is_regular"] == "true"
        assert cells["S_excited"] == "0.8"

    def test_json(self, row: ScanRow, tmp_path: Path) -> None:
        """Test JSON output and reading it back."""
        path = tmp_path / "out" / "rows.json"
        emit([row], "json", path, {"command": "xy-scan"})
        data = json.loads(path.read_text())
        assert data["metadata"]["command"] == "xy-scan"
        assert data["rows"][0]["reflection"] == -1
        assert load_rows(path) == [row]

    def test_unknown_format(self) -> None:
        """Test rejection of other formats."""
        with pytest.raises(ConfigError):
            render_records([], ("a",), "xml")

    def test_load_rows_rejects_csv(self, row: ScanRow, tmp_path: Path) -> None:
        """Test that only JSON outputs can be read back."""
        path = tmp_path / "rows.csv"
        emit([row], "csv", path)
        with pytest.raises(InputError):
            load_rows(path)

    def test_format_float(self) -> None:
        """Test twelve significant digits."""
        assert format_float(1 / 3) == "0.333333333333"


class TestCLI:
    """Tests for CLI commands."""

    def test_version(self, runner: CliRunner) -> None:
        """Test --version."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help_lists_commands(self, runner: CliRunner) -> None:
        """Test that every subcommand is registered."""
        result = runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        commands = (
            "xy-scan", "three-scan", "ed-excess", "ed-compare", "mps-check", "scaling", "xi"
        )
        for name in commands:
            assert name in result.output

    def test_xy_scan_stdout(self, runner: CliRunner) -> None:
        """Test CSV rows on stdout."""
        result = runner.invoke(cli, ["xy-scan", "--sizes", "8"])
        assert result.exit_code == 0, result.output
        assert "# command=xy-scan" in result.output
        assert len(_data_lines(result.output)) == 8

    def test_xy_scan_json_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test JSON written to a file."""
        path = tmp_path / "scan.json"
        result = runner.invoke(
            cli, ["xy-scan", "--sizes", "8,12", "--modes", "1,2", "-f", "json", "-o", str(path)]
        )
        assert result.exit_code == 0, result.output
        assert "Wrote" in result.output
        rows = load_rows(path)
        assert [(r.n, r.modes) for r in rows] == [(8, "1"), (8, "2"), (12, "1"), (12, "2")]

    @pytest.mark.parametrize(
        "args",
        [
            ["xy-scan", "--sizes", "8,12"],
            ["mps-check", "-D", "3", "--draws", "3", "--momentum", "0,2", "--seed", "11"],
        ],
    )
    def test_serial_output_reproducible(
        self, runner: CliRunner, tmp_path: Path, args: list[str]
    ) -> None:
        """Test that a repeated serial run writes the same bytes."""
        payloads = []
        for name in ("first.json", "second.json"):
            path = tmp_path / name
            result = runner.invoke(
                cli, ["-q", *args, "--threads", "1", "-f", "json", "-o", str(path)]
            )
            assert result.exit_code == 0, result.output
            payloads.append(path.read_bytes())
        assert payloads[0] == payloads[1]

    def test_quiet(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that -q suppresses status output."""
        path = tmp_path / "scan.csv"
        result = runner.invoke(cli, ["-q", "xy-scan", "--sizes", "8", "-o", str(path)])
        assert result.exit_code == 0
        assert "Wrote" not in result.output
        assert path.exists()

    def test_config_error_exit_code(self, runner: CliRunner) -> None:
        """Test exit code 2 for invalid configuration."""
        result = runner.invoke(cli, ["xy-scan", "--sizes", "7"])
        assert result.exit_code == 2
        assert "CONFIG_INVALID" in result.output

    def test_json_errors(self, runner: CliRunner) -> None:
        """Test machine-readable errors."""
        result = runner.invoke(cli, ["--json", "xy-scan", "--model", "tilted_ising"])
        assert result.exit_code == 2
        error = json.loads(result.output.strip().splitlines()[-1])
        assert error["code"] == "CONFIG_INVALID"
        assert error["exit_code"] == 2

    def test_config_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test flags layered over a config file."""
        path = tmp_path / "run.cfg"
        path.write_text("sizes = 8\nmodes = 0,1,2\n")
        result = runner.invoke(cli, ["xy-scan", "--config", str(path), "--modes", "4"])
        assert result.exit_code == 0, result.output
        assert len(_data_lines(result.output)) == 1

    def test_three_scan(self, runner: CliRunner) -> None:
        """Test the three-particle sweep."""
        result = runner.invoke(cli, ["three-scan", "--sizes", "16", "--sweep", "5,6"])
        assert result.exit_code == 0, result.output
        lines = _data_lines(result.output)
        assert len(lines) == 2
        assert "4;5;12" in lines[0]

    def test_ed_excess(self, runner: CliRunner) -> None:
        """Test ED rows for the default tilted chain."""
        result = runner.invoke(cli, ["ed-excess", "--n", "6", "--states", "3"])
        assert result.exit_code == 0, result.output
        lines = _data_lines(result.output)
        assert len(lines) >= 3
        assert "ed:0" in lines[0]

    def test_ed_compare(self, runner: CliRunner) -> None:
        """Test the oracle comparison passes."""
        result = runner.invoke(cli, ["ed-compare", "--n", "6", "--states", "4", "--singles"])
        assert result.exit_code == 0, result.output

    def test_ed_size_cap(self, runner: CliRunner) -> None:
        """Test exit code 4 above the ED cap."""
        result = runner.invoke(cli, ["ed-compare", "--n", "18"])
        assert result.exit_code == 4
        assert "SIZE_CAP" in result.output

    def test_mps_check(self, runner: CliRunner) -> None:
        """Test one line per draw and momentum."""
        result = runner.invoke(
            cli, ["mps-check", "-D", "2", "--draws", "3", "--momentum", "0,1.5", "--seed", "5"]
        )
        assert result.exit_code == 0, result.output
        lines = [line for line in result.output.splitlines() if line.startswith("draw")]
        assert len(lines) == 6
        assert "D=2" in lines[0]

    def test_mps_check_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the draws table written as JSON."""
        path = tmp_path / "mps.json"
        result = runner.invoke(
            cli, ["mps-check", "--draws", "2", "-f", "json", "-o", str(path), "--threads", "1"]
        )
        assert result.exit_code == 0, result.output
        data = json.loads(path.read_text())
        assert len(data["draws"]) == 2
        assert data["metadata"]["bond_dim"] == 4

    def test_bond_dim_cap(self, runner: CliRunner) -> None:
        """Test the bond-dimension bound."""
        result = runner.invoke(cli, ["mps-check", "-D", "17"])
        assert result.exit_code == 2

    def test_scaling(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the scaling fit for both reflection classes."""
        path = tmp_path / "scaling.json"
        result = runner.invoke(
            cli,
            [
                "scaling", "--gamma", "1", "--h", "2", "--sizes", "32,64,128",
                "-f", "json", "-o", str(path),
            ],
        )
        assert result.exit_code == 0, result.output
        data = json.loads(path.read_text())
        assert len(data["rows"]) == 6
        assert "exponent_plus" in data["metadata"]
        assert "exponent_minus" in data["metadata"]

    def test_xi(self, runner: CliRunner) -> None:
        """Test the correlation-length table."""
        result = runner.invoke(cli, ["xi", "--sizes", "32"])
        assert result.exit_code == 0, result.output
        lines = _data_lines(result.output)
        assert len(lines) == 1

    def test_xi_gapless(self, runner: CliRunner) -> None:
        """Test exit code 3 at the critical point."""
        result = runner.invoke(cli, ["xi", "--gamma", "1", "--h", "1", "--sizes", "32"])
        assert result.exit_code == 3
        assert "NUMERICAL_GAPLESS" in result.output


class TestRun:
    """Tests for the non-exiting entry point."""

    def test_version(self) -> None:
        """Test a clean exit."""
        assert run(["--version"]) == 0

    def test_config_error(self) -> None:
        """Test that package errors map to exit codes."""
        assert run(["xy-scan", "--sizes", "7"]) == 2

    def test_usage_error(self) -> None:
        """Test click usage errors."""
        assert run(["xy-scan", "--no-such-flag"]) == 2
