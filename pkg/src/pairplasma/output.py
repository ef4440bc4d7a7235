"""Deterministic run outputs: series CSV, field snapshots, run manifest.

All floats are written with Python's shortest round-trip representation and
files use LF line endings, so two runs with the same configuration produce
byte-identical outputs. The manifest records the fully resolved
configuration (re-parseable) and a SHA-256 digest of every file written.
"""

import hashlib
import json
from pathlib import Path

import numpy as np

from .diagnostics import SERIES_COLUMNS

SERIES_FILENAME = "series.csv"
MANIFEST_FILENAME = "manifest.json"
SNAPSHOT_COLUMNS = ("x", "E", "n_e", "n_p", "p_e", "p_p")


def _fmt(value: float) -> str:
    return repr(float(value))


def snapshot_filename(index: int) -> str:
    return f"fields_{index:06d}.csv"


def write_series(records, path) -> Path:
    """Write one CSV row per diagnostics record."""
    path = Path(path)
    lines = [",".join(SERIES_COLUMNS)]
    for rec in records:
        lines.append(",".join(_fmt(getattr(rec, name)) for name in SERIES_COLUMNS))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def write_snapshot(state, index: int, outdir) -> Path:
    """Write the field profiles of one state to fields_NNNNNN.csv."""
    path = Path(outdir) / snapshot_filename(index)
    lines = [f"# t = {_fmt(state.t)}", ",".join(SNAPSHOT_COLUMNS)]
    columns = (state.grid.x, state.E, state.n_e, state.n_p, state.p_e, state.p_p)
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def read_snapshot(path):
    """Read a snapshot CSV back as (t, dict of column arrays)."""
    t = 0.0
    names = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                _, _, value = line.partition("=")
                t = float(value)
                continue
            if names is None:
                names = tuple(s.strip() for s in line.split(","))
                continue
            rows.append([float(s) for s in line.split(",")])
    if names is None or not rows:
        raise ValueError(f"snapshot file {path} contains no data")
    data = np.asarray(rows, dtype=np.float64)
    return t, {name: data[:, i].copy() for i, name in enumerate(names)}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(config_text: str, outdir, files) -> Path:
    """Record the resolved config and content digests of the written files."""
    outdir = Path(outdir)
    manifest = {
        "format": 1,
        "config": config_text,
        "outputs": {Path(f).name: _sha256(Path(f)) for f in files},
    }
    path = outdir / MANIFEST_FILENAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", newline="\n")
    return path
