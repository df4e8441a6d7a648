"""Models for scan results, scaling fits and correlation lengths."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

LOG2 = math.log(2.0)

# Largest |ΔS/log 2 − k| still counted as a regular k-quasiparticle state
DEFAULT_CLASSIFY_THRESHOLD = 0.1


@dataclass(frozen=True)
class ScanRow:
    """Entanglement of one excited state.

    Attributes:
        model: Model descriptor
        n: Number of sites
        L: Subsystem size
        boundary: Boundary condition
        modes: Semicolon-joined occupied modes, or "ed:<index>" for ED states
        reflection: Reflection label (+1, −1, 0 if unresolved)
        parity: Parity label (+1, −1, 0 if unresolved)
        momentum: Momentum labels of the occupied modes
        S_ground: Ground-state entropy
        S_excited: Excited-state entropy
        dS: S_excited − S_ground
        dS_over_log2: dS / log 2
        k_class: Nearest quasiparticle count
        is_regular: Whether dS is within the classification threshold of k_class·log 2
    """

    model: str
    n: int
    L: int
    boundary: str
    modes: str
    reflection: int
    parity: int
    momentum: tuple[float, ...] = field(default_factory=tuple)
    S_ground: float = 0.0
    S_excited: float = 0.0
    dS: float = 0.0
    dS_over_log2: float = 0.0
    k_class: int = 0
    is_regular: bool = True

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "model": self.model,
            "n": self.n,
            "L": self.L,
            "boundary": self.boundary,
            "modes": self.modes,
            "reflection": self.reflection,
            "parity": self.parity,
            "momentum": list(self.momentum),
            "S_ground": self.S_ground,
            "S_excited": self.S_excited,
            "dS": self.dS,
            "dS_over_log2": self.dS_over_log2,
            "k_class": self.k_class,
            "is_regular": self.is_regular,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ScanRow:
        """Create from dictionary."""
        return cls(
            model=data["model"],
            n=int(data["n"]),
            L=int(data["L"]),
            boundary=data.get("boundary", "open"),
            modes=data.get("modes", ""),
            reflection=int(data.get("reflection", 0)),
            parity=int(data.get("parity", 0)),
            momentum=tuple(float(k) for k in data.get("momentum", [])),
            S_ground=float(data["S_ground"]),
            S_excited=float(data["S_excited"]),
            dS=float(data["dS"]),
            dS_over_log2=float(data["dS_over_log2"]),
            k_class=int(data["k_class"]),
            is_regular=bool(data["is_regular"]),
        )


@dataclass
class ScalingFit:
    """Power law value ≈ amplitude · n^exponent fitted in log-log space.

    Attributes:
        exponent: Fitted exponent
        amplitude: Prefactor
        r_squared: Coefficient of determination, in [0, 1]
        points: (n, value) pairs used in the fit
        excluded: Points dropped for nonpositive values
    """

    exponent: float
    amplitude: float
    r_squared: float
    points: list[tuple[float, float]] = field(default_factory=list)
    excluded: list[tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "exponent": self.exponent,
            "amplitude": self.amplitude,
            "r_squared": self.r_squared,
            "points": [list(p) for p in self.points],
            "excluded": [list(p) for p in self.excluded],
        }


@dataclass
class CorrelationLengthEstimate:
    """Exponential decay length of ground-state Majorana correlations.

    Attributes:
        xi: Correlation length in sites
        fit_window: First and last site of the fitted window
        residual: RMS deviation of the fit in log space
        points: Number of distances above the noise floor
    """

    xi: float
    fit_window: tuple[int, int]
    residual: float
    points: int = 0

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "xi": self.xi,
            "fit_window": list(self.fit_window),
            "residual": self.residual,
            "points": self.points,
        }
