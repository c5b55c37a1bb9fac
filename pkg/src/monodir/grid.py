"""Square real-valued sampled fields and their on-disk format.

A field of side n (n even) is stored row-major with unit sampling period.
The array convention follows images: ``data[r, c]`` is the sample at
horizontal coordinate x1 = c (column) and vertical coordinate x2 = r (row).

On disk a grid is a file pair sharing one base name:

  <name>.json   header {"n": ..., "dtype": "f64le", "layout": "row-major",
                 "meta": {...}} written with sorted keys
  <name>.f64    n*n little-endian float64 samples, row-major

A CSV import path (n rows of n comma-separated numbers) is provided for
hand-authored fixtures.  Non-square or odd-sized inputs are rejected rather
than padded: the spectral machinery assumes even square grids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

GRID_DTYPE = "f64le"
GRID_LAYOUT = "row-major"


@dataclass(frozen=True)
class RealGrid:
    """Immutable n-by-n float64 field, n even."""

    data: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(np.asarray(self.data, dtype=np.float64))
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"grid must be square 2-D, got shape {d.shape}")
        n = d.shape[0]
        if n < 2 or n % 2 != 0:
            raise ValueError(f"grid side must be even and >= 2, got {n}")
        if not np.all(np.isfinite(d)):
            raise ValueError("grid contains non-finite samples")
        d.flags.writeable = False
        object.__setattr__(self, "data", d)

    @property
    def n(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class GridHeader:
    n: int
    dtype: str = GRID_DTYPE
    layout: str = GRID_LAYOUT
    meta: dict = field(default_factory=dict)


def _base_path(path) -> Path:
    p = Path(path)
    if p.suffix in (".json", ".f64"):
        return p.with_suffix("")
    return p


def save_grid(grid: RealGrid, path, meta: dict | None = None) -> None:
    """Write the <base>.json / <base>.f64 pair for a grid."""
    base = _base_path(path)
    header = {"n": grid.n, "dtype": GRID_DTYPE, "layout": GRID_LAYOUT,
              "meta": dict(meta or {})}
    base.with_suffix(".json").write_text(
        json.dumps(header, sort_keys=True, indent=2) + "\n")
    base.with_suffix(".f64").write_bytes(
        np.ascontiguousarray(grid.data, dtype="<f8").tobytes())


def load_grid(path) -> RealGrid:
    """Read a grid from its header path, payload path, or base name."""
    base = _base_path(path)
    header_path = base.with_suffix(".json")
    payload_path = base.with_suffix(".f64")
    try:
        header = json.loads(header_path.read_text())
    except FileNotFoundError:
        raise ValueError(f"missing grid header {header_path}")
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed grid header {header_path}: {exc}")
    n = header.get("n")
    if not isinstance(n, int) or n < 2 or n % 2 != 0:
        raise ValueError(f"header side length must be a positive even integer, got {n!r}")
    if header.get("dtype") != GRID_DTYPE or header.get("layout") != GRID_LAYOUT:
        raise ValueError("unsupported grid encoding "
                         f"(dtype={header.get('dtype')!r}, layout={header.get('layout')!r})")
    try:
        raw = payload_path.read_bytes()
    except FileNotFoundError:
        raise ValueError(f"missing grid payload {payload_path}")
    values = np.frombuffer(raw, dtype="<f8")
    if values.size != n * n:
        raise ValueError(f"payload holds {values.size} samples, header expects {n * n}")
    return RealGrid(values.reshape(n, n))


def load_csv(path) -> RealGrid:
    """Import a grid from n rows of n comma-separated numeric fields."""
    values = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    if values.shape[0] != values.shape[1]:
        raise ValueError(f"CSV grid must be square, got shape {values.shape}")
    return RealGrid(values)


def remove_mean(grid: RealGrid) -> RealGrid:
    """Subtract the sample mean; idempotent up to rounding."""
    return RealGrid(grid.data - grid.data.mean())


def sample_variance(grid: RealGrid) -> float:
    """Population-style sample variance, mean((x - mean(x))^2)."""
    d = grid.data
    return float(np.mean((d - d.mean()) ** 2))
