"""Artifact serialization: chain CSVs, JSON sidecars, and run manifests.

Chain CSVs carry a header ``u_0,...,u_{N-1},accept`` and print floats at 17
significant digits so a re-run from the same manifest reproduces the file
byte for byte.  Every output directory gets a manifest JSON recording the
full configuration, seeds, package version, and wall-clock time.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .mh import ChainRecord

FLOAT_FMT = "%.17g"


def _fmt(x: float) -> str:
    return FLOAT_FMT % x


def write_chain_csv(record: ChainRecord, path) -> Path:
    """One row per stored sample: coefficients then the accept flag."""
    path = Path(path)
    n = record.samples.shape[1] if record.samples.ndim == 2 else 0
    flags = record.sample_flags
    if flags is None:
        flags = np.zeros(record.samples.shape[0], dtype=bool)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"u_{j}" for j in range(n)] + ["accept"])
        for row, acc in zip(record.samples, flags):
            w.writerow([_fmt(x) for x in row] + [int(acc)])
    return path


def read_chain_csv(path) -> ChainRecord:
    """Load a chain CSV; the sidecar config, if present, is reattached."""
    path = Path(path)
    with path.open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if not header or header[-1] != "accept":
            raise ValueError(f"{path}: expected trailing 'accept' column, got {header!r}")
        rows = [[float(x) for x in row] for row in r]
    data = np.array(rows) if rows else np.empty((0, len(header)))
    samples = data[:, :-1]
    flags = data[:, -1].astype(bool)
    config = {}
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        config = json.loads(sidecar.read_text()).get("config", {})
    return ChainRecord(samples=samples, accept_flags=flags, config=config,
                       sample_flags=flags)


def write_chain_sidecar(record: ChainRecord, path) -> Path:
    path = Path(path)
    payload = {"config": record.config, "acceptance_rate": record.acceptance_rate,
               "n_samples": int(record.samples.shape[0])}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def write_grid_csv(grid_values, path, t=None) -> Path:
    """Grid function as (t, value) pairs at cell midpoints."""
    g = np.asarray(grid_values, dtype=float)
    if t is None:
        t = (np.arange(g.size) + 0.5) / g.size
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "value"])
        for ti, vi in zip(t, g):
            w.writerow([_fmt(ti), _fmt(vi)])
    return path


def write_columns_csv(columns: dict, path) -> Path:
    """Named columns of equal length, 17-digit floats."""
    path = Path(path)
    names = list(columns)
    arrays = [np.asarray(columns[k], dtype=float) for k in names]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in zip(*arrays):
            w.writerow([_fmt(x) for x in row])
    return path


def write_synthetic_data(data, meta: dict, locations, csv_path) -> Path:
    """Observation CSV (location, value) plus a JSON metadata sidecar."""
    csv_path = Path(csv_path)
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["location", "value"])
        for loc, val in zip(np.asarray(locations, float), np.asarray(data, float)):
            w.writerow([_fmt(loc), _fmt(val)])
    meta = {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in meta.items()}
    csv_path.with_suffix(".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return csv_path


def write_json(payload: dict, path) -> Path:
    path = Path(path)

    def default(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (np.floating, np.integer)):
            return o.item()
        raise TypeError(f"not JSON serializable: {type(o)}")

    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=default) + "\n")
    return path


def write_manifest(out_dir, config: dict, wall_clock: float, version: str) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {"config": config, "version": version, "wall_clock_sec": wall_clock}
    return write_json(payload, out_dir / "manifest.json")


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
