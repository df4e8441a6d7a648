"""Run configuration for CLI commands.

Values are layered: command defaults, then an optional config file, then
command-line flags. Config files are plain ``key = value`` lines, or TOML when
the file name ends in ``.toml``.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from quasient import __version__
from quasient.analysis.models import DEFAULT_CLASSIFY_THRESHOLD
from quasient.analysis.scans import PEAK_HALF_WIDTH
from quasient.ed.eigensolver import DEFAULT_SEED
from quasient.exceptions import ConfigError
from quasient.freefermion.models import DEFAULT_TOLERANCES, Tolerances
from quasient.model.models import XY, Boundary, SpinChainModel, TiltedIsing

COMMANDS = ("xy-scan", "three-scan", "ed-excess", "ed-compare", "mps-check", "scaling", "xi")
QUADRATIC_COMMANDS = frozenset({"xy-scan", "three-scan", "ed-compare", "scaling", "xi"})

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "xy-scan": {"gamma": 0.5, "h": 0.9, "sizes": [128, 256, 512]},
    "three-scan": {"gamma": 1.0, "h": 2.0, "sizes": [512]},
    "scaling": {"gamma": 0.5, "h": 0.9, "sizes": [128, 256, 512, 1024]},
    "xi": {"gamma": 1.0, "h": 2.0, "sizes": [256]},
    "ed-excess": {"model": "tilted_ising", "sizes": [10, 12]},
    "ed-compare": {"gamma": 1.0, "h": 2.0, "sizes": [10], "tolerance": 1e-9},
    "mps-check": {"tolerance": 1e-8},
}


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("", "all", "none"):
            return None
        return [item.strip() for item in text.split(",") if item.strip()]
    if isinstance(value, (int, float)):
        return [value]
    return value


class RunConfig(BaseModel):
    """Validated description of one CLI run.

    Attributes:
        command: Subcommand name
        model: Model family, "xy" or "tilted_ising"
        gamma: XY anisotropy
        h: XY transverse field
        J: Coupling prefactor
        hz: Tilted Ising transverse field
        hx: Tilted Ising longitudinal field
        boundary: "open" or "periodic"
        sizes: Chain lengths, even, at least 4, ascending
        modes: Mode indices for single-particle scans (None = all)
        sweep: Sweep indices for three-particle scans (None = all)
        L: Subsystem size (None = n/2)
        states: Number of ED eigenstates
        singles: Also compare explicit single-quasiparticle states in ed-compare
        bond_dim: MPS bond dimension
        draws: Number of random MPS draws
        momentum: Excitation momenta
        phase: Target momentum for the scaling fit
        output: Output file (None = stdout)
        format: "csv" or "json"
        seed: Seed for all random draws
        threshold: Quasiparticle classification threshold
        tolerance: Acceptance bound for the check commands
        threads: Worker count (None = QUASIENT_THREADS)
    """

    model_config = ConfigDict(extra="forbid")

    command: Literal[
        "xy-scan", "three-scan", "ed-excess", "ed-compare", "mps-check", "scaling", "xi"
    ]
    model: Literal["xy", "tilted_ising"] = "xy"
    gamma: float = 0.5
    h: float = 0.9
    J: float = 1.0
    hz: float = 1.0
    hx: float = 1.0
    boundary: Literal["open", "periodic"] = "open"
    sizes: list[int] = Field(default_factory=lambda: [128, 256, 512])
    modes: list[int] | None = None
    sweep: list[int] | None = None
    L: int | None = Field(default=None, ge=1)
    states: int = Field(default=8, ge=1, le=64)
    singles: bool = False
    bond_dim: int = Field(default=4, ge=1, le=16)
    draws: int = Field(default=20, ge=1)
    momentum: list[float] = Field(default_factory=lambda: [0.0])
    phase: float = math.pi / 2
    output: Path | None = None
    format: Literal["csv", "json"] = "csv"
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    threshold: float = Field(default=DEFAULT_CLASSIFY_THRESHOLD, gt=0)
    tolerance: float = Field(default=1e-9, gt=0)
    clamp: float = Field(default=DEFAULT_TOLERANCES.clamp, gt=0)
    kernel: float = Field(default=DEFAULT_TOLERANCES.kernel, gt=0)
    threads: int | None = Field(default=None, ge=0)

    @field_validator("sizes", "modes", "sweep", "momentum", mode="before")
    @classmethod
    def _parse_lists(cls, value: Any) -> Any:
        return _split_list(value)

    @field_validator("sizes")
    @classmethod
    def _check_sizes(cls, sizes: list[int]) -> list[int]:
        if not sizes:
            raise ValueError("at least one size is required")
        bad = [n for n in sizes if n < 4 or n % 2]
        if bad:
            raise ValueError(f"sizes must be even and at least 4, got {bad}")
        if len(set(sizes)) != len(sizes):
            raise ValueError("duplicate sizes")
        return sorted(sizes)

    @field_validator("modes", "sweep")
    @classmethod
    def _check_indices(cls, indices: list[int] | None) -> list[int] | None:
        if indices is not None and any(k < 0 for k in indices):
            raise ValueError("mode indices must be nonnegative")
        return indices

    @model_validator(mode="after")
    def _check_model(self) -> RunConfig:
        if self.command in QUADRATIC_COMMANDS and self.model != "xy":
            raise ValueError(f"{self.command} needs a quadratic model (model = xy)")
        if self.boundary == "periodic" and self.command not in ("ed-excess",):
            raise ValueError("periodic boundaries are only supported by ed-excess")
        return self

    def spin_model(self, n: int | None = None) -> SpinChainModel:
        """Model instance at size n (first configured size when None)."""
        kind = (
            XY(gamma=self.gamma, h=self.h, J=self.J)
            if self.model == "xy"
            else TiltedIsing(J=self.J, hz=self.hz, hx=self.hx)
        )
        return SpinChainModel(
            kind=kind, n=self.sizes[0] if n is None else n, boundary=Boundary(self.boundary)
        )

    def tolerances(self) -> Tolerances:
        """Free-fermion tolerances with the configured overrides."""
        return Tolerances(
            clamp=self.clamp,
            kernel=self.kernel,
            isometry=DEFAULT_TOLERANCES.isometry,
            degeneracy=DEFAULT_TOLERANCES.degeneracy,
        )

    def metadata(self) -> dict[str, Any]:
        """Header describing the run well enough to repeat it.

        Every configured field is recorded except the output path; the model
        family moves to ``model_family`` and ``model`` holds the descriptor.
        """
        fields = self.model_dump(mode="json", exclude={"output", "clamp", "kernel"})
        data: dict[str, Any] = {"command": fields.pop("command"), "version": __version__}
        data["model"] = (
            "uniform_mps" if self.command == "mps-check" else self.spin_model().describe()
        )
        data["model_family"] = fields.pop("model")
        data.update(fields)
        data["tolerances"] = self.tolerances().to_dict()
        if self.command == "three-scan":
            data["peak_half_width"] = PEAK_HALF_WIDTH
        return data


def _parse_key_value(content: str, path: Path) -> dict[str, Any]:
    data: dict[str, Any] = {}
    for number, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        data[key.replace("-", "_")] = value
    return data


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Read a config file into a flat dictionary.

    Args:
        path: ``key = value`` text file, or a ``.toml`` file

    Raises:
        ConfigError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        content = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e

    if path.suffix == ".toml":
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib  # type: ignore[no-redef]
        try:
            data = dict(tomllib.loads(content))
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"Invalid TOML in {path}: {e}") from e
        return {key.replace("-", "_"): value for key, value in data.items()}
    return _parse_key_value(content, path)


def build_run_config(
    command: str,
    config_file: str | Path | None = None,
    **flags: Any,
) -> RunConfig:
    """Merge defaults, config file and flags (None flags are ignored).

    Raises:
        ConfigError: If the merged values fail validation
    """
    values: dict[str, Any] = dict(COMMAND_DEFAULTS.get(command, {}))
    if config_file is not None:
        values.update(load_config_file(config_file))
    values.update({key: value for key, value in flags.items() if value is not None})
    values["command"] = command
    try:
        return RunConfig(**values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(
            f"Invalid configuration: {problems}",
            hint="Check the flags and the config file values.",
        ) from e
