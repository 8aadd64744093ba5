"""Versioned readers for the simulation CSV outputs.

Each reader validates the header (and the manifest sidecar when present)
before touching any data, raises `SchemaError` naming the expected schema
on mismatch, and returns plain column arrays.  A checksum over the parsed
series lets downstream consumers prove the plotted data is exactly the
file's data.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

SWEEP_SCHEMA = "holonoise-sweep/1"
TRAJECTORY_SCHEMA = "holonoise-trajectory/1"
COMPARE_SCHEMA = "holonoise-compare/1"

SWEEP_FIXED_COLUMNS = ["n_r", "mean_fidelity", "std_fidelity",
                       "leakage_G", "leakage_E0"]
TRAJECTORY_COLUMNS = ["t_fs", "clean_x", "clean_y", "clean_z",
                      "noisy_x", "noisy_y", "noisy_z"]
COMPARE_COLUMNS = ["n_r_ad", "n_r_dyn", "t_n_fs", "t_dyn_over_t_n",
                   "holo_mean_fidelity", "holo_std_fidelity",
                   "dyn_mean_fidelity", "dyn_std_fidelity"]


class SchemaError(ValueError):
    """Input file does not match the expected versioned schema."""

    def __init__(self, path, schema, reason):
        super().__init__(f"{path}: expected {schema} ({reason})")
        self.schema = schema


def _read_rows(path: Path, schema: str) -> tuple[list[str], list[list[str]]]:
    if not path.exists():
        raise SchemaError(path, schema, "file does not exist")
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(path, schema, "file is empty")
    header, data = rows[0], rows[1:]
    if not data:
        raise SchemaError(path, schema, "no data rows")
    return header, data


def _check_manifest(path: Path, schema: str) -> None:
    sidecar = path.with_name(path.stem + ".manifest.json")
    if not sidecar.exists():
        return
    declared = json.loads(sidecar.read_text()).get("schema")
    if declared != schema:
        raise SchemaError(path, schema, f"manifest declares {declared!r}")


def _columns(header, data, names, path, schema):
    idx = [header.index(n) for n in names]
    return {n: np.array([float(row[i]) for row in data])
            for n, i in zip(names, idx)}


def read_sweep(path: str | Path) -> dict:
    """Sweep table: fixed columns plus any number of per-state columns."""
    path = Path(path)
    header, data = _read_rows(path, SWEEP_SCHEMA)
    if header[:5] != SWEEP_FIXED_COLUMNS or \
            not all(c.startswith("state_") for c in header[5:]):
        raise SchemaError(path, SWEEP_SCHEMA, f"header is {header[:6]}...")
    _check_manifest(path, SWEEP_SCHEMA)
    out = _columns(header, data, header, path, SWEEP_SCHEMA)
    out["_states"] = header[5:]
    return out


def read_trajectory(path: str | Path) -> dict:
    path = Path(path)
    header, data = _read_rows(path, TRAJECTORY_SCHEMA)
    if header != TRAJECTORY_COLUMNS:
        raise SchemaError(path, TRAJECTORY_SCHEMA, f"header is {header}")
    return _columns(header, data, header, path, TRAJECTORY_SCHEMA)


def read_compare(path: str | Path) -> dict:
    path = Path(path)
    header, data = _read_rows(path, COMPARE_SCHEMA)
    if header != COMPARE_COLUMNS:
        raise SchemaError(path, COMPARE_SCHEMA, f"header is {header}")
    return _columns(header, data, header, path, COMPARE_SCHEMA)


def series_checksum(series: list[np.ndarray]) -> str:
    """Order-sensitive SHA-256 over the exact float values of the series."""
    digest = hashlib.sha256()
    for arr in series:
        digest.update(np.asarray(arr, dtype=np.float64).tobytes())
        digest.update(b"|")
    return digest.hexdigest()
