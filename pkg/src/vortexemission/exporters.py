"""Plain-text and grayscale exports for maps, profiles, and sweeps.

CSV files carry one `#` metadata line followed by bare numeric rows; floats
are written with repr so a round trip through the reader is exact.  Images
are binary PGM (P5) with a text sidecar recording the grayscale window.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

import numpy as np

from .errors import ParseError
from .fieldmap import AzimuthalProfile, SpectrumMap

MASK_BYTE = 255
UNIFORM_BYTE = 128


def atomic_write(path, data):
    """Write bytes or text through a sibling temp file and an atomic rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    mode = "wb" if isinstance(data, (bytes, bytearray)) else "w"
    with open(tmp, mode) as fh:
        fh.write(data)
    os.replace(tmp, path)


def _meta_line(meta: dict) -> str:
    parts = []
    for key, value in meta.items():
        if key == "label":
            parts.append(f"label={value!r}")
        else:
            parts.append(f"{key}={value!r}" if isinstance(value, str) else f"{key}={value}")
    return "# " + ", ".join(parts)


def _row_text(row: np.ndarray) -> str:
    return ",".join(repr(float(v)) for v in row)


def map_to_csv(m: SpectrumMap) -> str:
    """Rows print top of frame first; masked cells read `nan`."""
    meta = {"label": m.label or "map", "delta_k": m.delta_k,
            "half_extent": m.grid.half_extent, "waist": m.waist,
            "resolution": m.grid.resolution, "masked": m.masked_count,
            "rows": "top-first"}
    lines = [_meta_line(meta)]
    lines.extend(_row_text(row) for row in m.values)
    return "\n".join(lines) + "\n"


def profile_to_csv(p: AzimuthalProfile) -> str:
    meta = {"label": "profile", "r": p.r, "delta_k": p.delta_k,
            "samples": int(p.phis.size)}
    lines = [_meta_line(meta), "phi,value"]
    lines.extend(f"{repr(float(a))},{repr(float(v))}"
                 for a, v in zip(p.phis, p.values))
    return "\n".join(lines) + "\n"


def table_to_csv(meta: dict, headers: list[str], columns: list) -> str:
    """Generic column-oriented table with the same one-line metadata header."""
    cols = [np.asarray(c) for c in columns]
    if len(cols) != len(headers) or any(c.shape != cols[0].shape for c in cols):
        raise ValueError("headers and equal-length columns required")
    lines = [_meta_line(meta), ",".join(headers)]
    for i in range(cols[0].size):
        lines.append(",".join(repr(float(c[i])) for c in cols))
    return "\n".join(lines) + "\n"


_META_ITEM = re.compile(r"(\w+)=('[^']*'|\"[^\"]*\"|[^,]+)")


def parse_meta(line: str) -> dict:
    if not line.startswith("#"):
        raise ParseError("metadata line must start with '#'")
    meta = {}
    for key, token in _META_ITEM.findall(line[1:]):
        token = token.strip()
        if token and token[0] in "'\"":
            meta[key] = token[1:-1]
        else:
            try:
                meta[key] = int(token)
            except ValueError:
                try:
                    meta[key] = float(token)
                except ValueError:
                    meta[key] = token
    return meta


def read_map_csv(source) -> tuple[np.ndarray, np.ndarray, dict]:
    """Inverse of map_to_csv: returns (values, pole_mask, meta).

    `source` is a path or the CSV text itself.
    """
    text = source
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty map file")
    meta = parse_meta(lines[0])
    values = np.array([[float(tok) for tok in ln.split(",")] for ln in lines[1:]])
    return values, np.isnan(values), meta


def map_to_pgm(m: SpectrumMap) -> tuple[bytes, str]:
    """8-bit grayscale render plus a sidecar describing the value window.

    Masked cells are forced to white; a map with one finite value everywhere
    renders mid-gray so it cannot be mistaken for either extreme.
    """
    finite = m.finite_values()
    h, w = m.values.shape
    uniform = False
    if finite.size == 0:
        img = np.full((h, w), MASK_BYTE, dtype=np.uint8)
        lo = hi = float("nan")
    else:
        lo, hi = float(finite.min()), float(finite.max())
        if hi == lo:
            uniform = True
            img = np.full((h, w), UNIFORM_BYTE, dtype=np.uint8)
        else:
            scaled = (m.values - lo) * (255.0 / (hi - lo))
            # nan would cast unpredictably; pin masked cells before rounding
            scaled = np.where(m.pole_mask, float(MASK_BYTE), scaled)
            img = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
        img[m.pole_mask] = MASK_BYTE
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    sidecar = "\n".join([
        f"label = {m.label or 'map'}",
        f"delta_k = {m.delta_k!r}",
        f"min = {lo!r}",
        f"max = {hi!r}",
        f"uniform = {str(uniform).lower()}",
        f"masked = {m.masked_count}",
    ]) + "\n"
    return header + img.tobytes(), sidecar


def safe_basename(label: str) -> str:
    clean = re.sub(r"[^\w.-]+", "_", label).strip("_")
    return clean or "map"


def write_map(m: SpectrumMap, out_dir, basename: str | None = None,
              formats=("csv", "image")) -> list[Path]:
    """Write the selected renderings of one map; returns the paths created."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = basename or safe_basename(m.label)
    written = []
    if "csv" in formats:
        path = out / f"{base}.csv"
        atomic_write(path, map_to_csv(m))
        written.append(path)
    if "image" in formats:
        img, sidecar = map_to_pgm(m)
        path = out / f"{base}.pgm"
        atomic_write(path, img)
        written.append(path)
        side = out / f"{base}.range.txt"
        atomic_write(side, sidecar)
        written.append(side)
    return written


def write_profile(p: AzimuthalProfile, out_dir, basename: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{basename}.csv"
    atomic_write(path, profile_to_csv(p))
    return path
