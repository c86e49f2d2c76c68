"""CSV/JSON artifacts: matrices, spectra, tables, signals and JSON envelopes.

Every file starts with a provenance stamp (package version and the SHA-256
of the canonical experiment config). CSV files carry it as a leading ``#``
comment line followed by a mandatory header row; JSON files carry it as
top-level keys. Floats are written with ``repr`` so output is byte-stable.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .stft_bridge import SampledSignal


@dataclass(frozen=True)
class Stamp:
    config_sha256: str
    version: str = __version__

    def comment(self):
        return f"# tflocal {self.version} config_sha256={self.config_sha256}\n"

    def fields(self):
        return {"tflocal_version": self.version, "config_sha256": self.config_sha256}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def _f(x):
    return repr(float(x))


def _open(path):
    return open(path, "w", encoding="utf-8", newline="")


def write_table_csv(path, header, rows, stamp: Stamp):
    with _open(path) as fh:
        fh.write(stamp.comment())
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_f(v) if isinstance(v, (float, np.floating)) else v for v in row])


def read_table_csv(path):
    """Header and rows (as strings) of a CSV written by :func:`write_table_csv`."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    return rows[0], rows[1:]


def write_matrix_csv(path, M, stamp: Stamp):
    """Long format ``row,col,re,im`` in row-major order."""
    M = np.asarray(M, dtype=complex)
    rows = ((i, j, M[i, j].real, M[i, j].imag) for i in range(M.shape[0]) for j in range(M.shape[1]))
    write_table_csv(path, ["row", "col", "re", "im"], rows, stamp)


def read_matrix_csv(path) -> np.ndarray:
    header, rows = read_table_csv(path)
    if header != ["row", "col", "re", "im"]:
        raise ValueError(f"{path}: expected header row,col,re,im, got {header}")
    try:
        entries = [(int(r), int(c), complex(float(a), float(b))) for r, c, a, b in rows]
    except ValueError as exc:
        raise ValueError(f"{path}: malformed matrix entry ({exc})") from None
    if not entries:
        raise ValueError(f"{path}: no matrix entries")
    n = max(max(r, c) for r, c, _ in entries) + 1
    seen = {(r, c) for r, c, _ in entries}
    if len(entries) != n * n or len(seen) != n * n or min(min(r, c) for r, c in seen) < 0:
        raise ValueError(f"{path}: entries do not form a complete square {n}x{n} matrix")
    M = np.zeros((n, n), dtype=complex)
    for r, c, v in entries:
        M[r, c] = v
    return M


def write_spectrum_csv(path, eigenvalues, residuals, stamp: Stamp, closed=None):
    """``index,eigenvalue,residual`` plus ``closed_form,deviation`` when a reference is given."""
    header = ["index", "eigenvalue", "residual"]
    if closed is not None:
        header += ["closed_form", "deviation"]
    rows = []
    for i, lam in enumerate(eigenvalues):
        row = [i, float(lam), float(residuals[i])]
        if closed is not None:
            row += [float(closed[i]), abs(float(lam) - float(closed[i]))]
        rows.append(row)
    write_table_csv(path, header, rows, stamp)


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def write_json(path, payload: dict, stamp: Stamp):
    doc = {**stamp.fields(), **_clean(payload)}
    with _open(path) as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def write_signal(path, signal: SampledSignal, stamp: Stamp):
    """Two-column ``re,im`` CSV plus a ``.json`` sidecar with ``t0`` and ``dt``."""
    path = Path(path)
    write_table_csv(path, ["re", "im"], ((v.real, v.imag) for v in signal.samples), stamp)
    write_json(path.with_suffix(".json"), {"t0": signal.t0, "dt": signal.dt, "samples": len(signal.samples)}, stamp)


def read_signal(path) -> SampledSignal:
    path = Path(path)
    header, rows = read_table_csv(path)
    if header != ["re", "im"]:
        raise ValueError(f"{path}: expected header re,im")
    meta = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    samples = np.array([complex(float(a), float(b)) for a, b in rows])
    return SampledSignal(samples, float(meta["t0"]), float(meta["dt"]))
