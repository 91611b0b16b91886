"""Self-describing output files: JSON metadata header plus deterministic rows.

Every file starts with the run metadata (tool version, PRNG identifier,
seeds, tolerances, optimizer settings, timestamp).  Data rows print floats
with 12 significant digits, so re-running a command with identical flags
and seeds reproduces them byte for byte; only the timestamp in the header
may differ.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__
from .families import PRNG_ALGORITHM

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunMetadata:
    command: str
    schema: str
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    optimizer: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    tool_version: str = __version__
    prng: str = PRNG_ALGORITHM
    schema_version: int = SCHEMA_VERSION
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_csv(stream, metadata: RunMetadata, columns, rows) -> None:
    stream.write(f"#{metadata.to_json()}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def render_csv(metadata: RunMetadata, columns, rows) -> str:
    buf = io.StringIO()
    write_csv(buf, metadata, columns, rows)
    return buf.getvalue()


def read_csv(stream):
    """Parse a metadata-headed CSV; returns (metadata dict or None, columns, rows)."""
    metadata = None
    data_lines = []
    for line in stream:
        if line.startswith("#"):
            if metadata is None:
                try:
                    metadata = json.loads(line[1:])
                except json.JSONDecodeError:
                    metadata = None
            continue
        if line.strip():
            data_lines.append(line)
    parsed = list(csv.reader(data_lines))
    if not parsed:
        return metadata, [], []
    return metadata, parsed[0], parsed[1:]
