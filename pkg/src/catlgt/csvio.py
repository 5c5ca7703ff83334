"""Deterministic CSV artifacts.

Every file starts with `# key=value` metadata lines (config hash included),
then a header row and data rows with 17-significant-digit floats in a fixed
column order, so reruns are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write(path: Path, metadata: dict, header: list[str], rows) -> None:
    lines = [f"# {key}={metadata[key]}" for key in sorted(metadata)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(str(c) if isinstance(c, str) else fmt(c) for c in row))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_timeseries(path, times, channels: dict, metadata: dict) -> None:
    """Long-format series: columns (t, channel, value), channels sorted."""
    meta = dict(metadata, schema="timeseries-v1")
    rows = []
    for name in sorted(channels):
        series = channels[name]
        for t, v in zip(times, series):
            rows.append((fmt(t), name, fmt(v)))
    _write(path, meta, ["t", "channel", "value"], rows)


def write_wigner(path, fields: list, metadata: dict) -> None:
    """Phase-space fields: columns (site, x, p, w); fields = [(site, WignerField)]."""
    meta = dict(metadata, schema="wigner-v1")
    rows = []
    for site, field in fields:
        for ip, p in enumerate(field.p):
            for ix, x in enumerate(field.x):
                rows.append((str(site), fmt(x), fmt(p), fmt(field.w[ip, ix])))
    _write(path, meta, ["site", "x", "p", "w"], rows)


def write_spectrum(path, points, metadata: dict) -> None:
    """Sector spectra: columns (g3, eigen_index, eigenvalue, cat_weight)."""
    meta = dict(metadata, schema="spectrum-v1")
    rows = []
    for pt in points:
        for k, (ev, w) in enumerate(zip(pt.eigenvalues, pt.cat_weights)):
            rows.append((fmt(pt.g3), str(k), fmt(ev), fmt(w)))
    _write(path, meta, ["g3", "eigen_index", "eigenvalue", "cat_weight"], rows)


def write_map(path, grid, metadata: dict, normalized: bool = False) -> None:
    """Sweep maps: columns (beta0, g3, value)."""
    meta = dict(metadata, schema="map-v1", label=grid.label)
    data = grid.normalized if normalized and grid.normalized is not None else grid.values
    rows = []
    for i, b0 in enumerate(grid.beta0_values):
        for j, g3 in enumerate(grid.g3_values):
            rows.append((fmt(b0), fmt(g3), fmt(data[i, j])))
    _write(path, meta, ["beta0", "g3", "value"], rows)


def write_hinton(path, hinton, metadata: dict) -> None:
    """Hamiltonian elements: columns (row_label, col_label, value)."""
    meta = dict(metadata, schema="hinton-v1", g3=fmt(hinton.g3))
    rows = []
    for i, ri in enumerate(hinton.labels):
        for j, cj in enumerate(hinton.labels):
            rows.append((ri, cj, fmt(hinton.values[i, j])))
    _write(path, meta, ["row_label", "col_label", "value"], rows)


def write_table(path, header: list[str], rows, metadata: dict, schema: str) -> None:
    """Generic wide table with the standard metadata block."""
    _write(path, dict(metadata, schema=schema), header, rows)


def write_summary(path, recipe: str, config_hash: str, metrics: dict) -> None:
    payload = {
        "recipe": recipe,
        "config_hash": config_hash,
        "headline_metrics": metrics,
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_csv(path) -> tuple[dict, list[str], list[list[str]]]:
    """Read back one of this module's CSVs (used by tests and tooling)."""
    meta: dict = {}
    header: list[str] = []
    rows: list[list[str]] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        elif not header:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows
