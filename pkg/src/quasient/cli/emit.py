"""CSV and JSON writers for scan rows and check reports."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from quasient.analysis.models import ScanRow
from quasient.ed.models import format_label
from quasient.exceptions import ConfigError, InputError

CSV_COLUMNS = (
    "model",
    "n",
    "L",
    "boundary",
    "modes",
    "reflection",
    "parity",
    "momentum",
    "S_ground",
    "S_excited",
    "dS",
    "dS_over_log2",
    "k_class",
    "is_regular",
)

LABEL_COLUMNS = frozenset({"reflection", "parity"})
FORMATS = ("csv", "json")


def format_float(value: float) -> str:
    """Twelve significant digits."""
    return f"{value:.12g}"


def _format_cell(column: str, value: Any) -> str:
    if column in LABEL_COLUMNS and isinstance(value, int) and not isinstance(value, bool):
        return format_label(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return ";".join(format_float(v) if isinstance(v, float) else str(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _header_value(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def render_records(
    records: Sequence[Mapping[str, Any]],
    columns: Sequence[str],
    fmt: str,
    metadata: Mapping[str, Any] | None = None,
    *,
    key: str = "rows",
) -> bytes:
    """Serialize homogeneous records.

    CSV output carries the metadata as leading ``# key=value`` lines followed
    by the header row; JSON output is ``{"metadata": ..., key: [...]}`` with
    full float precision.
    """
    metadata = dict(metadata or {})
    if fmt == "json":
        payload = {"metadata": metadata, key: [dict(record) for record in records]}
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ConfigError(f"Unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")

    buffer = io.StringIO()
    for name, value in metadata.items():
        buffer.write(f"# {name}={_header_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_format_cell(column, record.get(column)) for column in columns])
    return buffer.getvalue().encode("utf-8")


def write_payload(payload: bytes, path: str | Path) -> int:
    """Write bytes to ``path``, creating parent directories; returns the byte count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(payload)
    return len(payload)


def emit(
    rows: Sequence[ScanRow],
    fmt: str,
    path: str | Path | None = None,
    metadata: Mapping[str, Any] | None = None,
) -> bytes:
    """Serialize scan rows and write them to ``path`` when given.

    Returns:
        The serialized payload
    """
    payload = render_records([row.to_dict() for row in rows], CSV_COLUMNS, fmt, metadata)
    if path is not None:
        write_payload(payload, path)
    return payload


def load_rows(path: str | Path) -> list[ScanRow]:
    """Read scan rows back from a JSON output file.

    Raises:
        InputError: If the file is not a JSON scan output
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read scan output {path}: {e}") from e
    if not isinstance(data, dict) or "rows" not in data:
        raise InputError(f"{path} is not a JSON scan output (no 'rows' key)")
    return [ScanRow.from_dict(row) for row in data["rows"]]
