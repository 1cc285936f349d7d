"""CSV serialization and run manifests.

Bodies are fully determined by the rows: floats use 9 significant digits,
line endings are ``\\n``.  The manifest sits beside the CSV as
``<name>.manifest`` and is the only place a timestamp appears.
"""
from __future__ import annotations

import csv
import io
import math
from datetime import datetime, timezone
from pathlib import Path

import numpy as np


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        return f"{v:.9g}"
    return str(v)


def rows_to_csv(rows, columns=None) -> str:
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_value(r.get(c)) for c in columns])
    return buf.getvalue()


def manifest_text(command: str, params: dict, version: str, outputs=(), timestamp=None) -> str:
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    lines = [f"command={command}", f"version={version}", f"timestamp={timestamp}"]
    lines += [f"param.{k}={format_value(v)}" for k, v in sorted(params.items())]
    lines += [f"output={o}" for o in outputs]
    return "\n".join(lines) + "\n"


def write_outputs(path, body: str, command: str, params: dict, version: str) -> Path:
    """Write the CSV and its sidecar manifest; returns the manifest path."""
    path = Path(path)
    path.write_text(body, encoding="utf-8", newline="")
    man = path.with_name(path.name + ".manifest")
    man.write_text(manifest_text(command, params, version, outputs=[str(path)]),
                   encoding="utf-8", newline="")
    return man


def read_manifest(path) -> dict:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out
