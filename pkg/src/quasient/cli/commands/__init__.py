"""CLI command implementations for quasient."""

from quasient.cli.commands.mps import check_draw, execute_mps_check
from quasient.cli.commands.oracle import execute_ed_compare, execute_ed_excess
from quasient.cli.commands.scans import (
    deliver,
    execute_scaling,
    execute_three_scan,
    execute_xi,
    execute_xy_scan,
)

__all__ = [
    "check_draw",
    "deliver",
    "execute_ed_compare",
    "execute_ed_excess",
    "execute_mps_check",
    "execute_scaling",
    "execute_three_scan",
    "execute_xi",
    "execute_xy_scan",
]
