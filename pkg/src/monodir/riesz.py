"""Periodic discrete Riesz transforms on the 2D DFT grid.

Wavenumbers are k_l = 2*pi*l/n for bin indices l in [-n/2, n/2-1], laid out
in FFT order; the aliased half-sample index l = -n/2 is assigned k = +pi so
that every bin carries a wavenumber in (-pi, pi].  Axis 1 (columns) carries
k1, axis 0 (rows) carries k2, matching the grid module's (x1, x2) layout.

The transfer functions are K_l(k) = -i * k_l / ||k|| with K_l(0, 0) = 0.
On bins whose l-th wavenumber component sits at the half-sample frequency,
+pi and -pi alias to the same bin and a purely imaginary odd response cannot
act there while keeping the output of a real input real.  On exactly those
bins the -i phase is replaced by +1, keeping |K_l| = k_l/||k|| unchanged.
This preserves |K1|^2 + |K2|^2 = 1 on every non-DC bin, so the lag-zero
energy split of the two transforms against the input is exact for any
zero-mean field, and both filtered outputs are real to rounding error.

Forward DFTs are unnormalized, inverses carry 1/n^2; spectral lag-zero sums
therefore use 1/n^4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft as _fft

from .grid import RealGrid, remove_mean

#: relative bound on the discarded imaginary residue of the filtered outputs
RESIDUE_RTOL = 1e-9


@dataclass(frozen=True)
class MonogenicGrid:
    """A zero-mean field with its two periodic Riesz transforms."""

    f: RealGrid
    g: RealGrid
    h: RealGrid

    def __post_init__(self):
        if not (self.f.n == self.g.n == self.h.n):
            raise ValueError("component grids must share one side length")

    @property
    def n(self) -> int:
        return self.f.n


def wavenumbers(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-bin wavenumber meshes (k1, k2), radians/sample, FFT layout."""
    if n % 2 != 0:
        raise ValueError("side length must be even")
    k = 2.0 * np.pi * _fft.fftfreq(n)
    k[n // 2] = np.pi  # alias bin carries +pi, keeping k in (-pi, pi]
    k1 = np.broadcast_to(k[np.newaxis, :], (n, n))
    k2 = np.broadcast_to(k[:, np.newaxis], (n, n))
    return k1, k2


@lru_cache(maxsize=32)
def riesz_kernels(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Transfer-function grids (K1, K2) for side length n, cached per size."""
    k1, k2 = wavenumbers(n)
    rho = np.hypot(k1, k2)
    rho[0, 0] = 1.0  # dummy; DC entries are overwritten below
    ny = n // 2
    phase1 = np.full((n, n), -1.0j, dtype=complex)
    phase2 = np.full((n, n), -1.0j, dtype=complex)
    phase1[:, ny] = 1.0  # k1 at the alias frequency: real response
    phase2[ny, :] = 1.0  # k2 at the alias frequency: real response
    K1 = phase1 * (k1 / rho)
    K2 = phase2 * (k2 / rho)
    K1[0, 0] = 0.0
    K2[0, 0] = 0.0
    K1.flags.writeable = False
    K2.flags.writeable = False
    return K1, K2


def monogenic(field: RealGrid) -> MonogenicGrid:
    """Mean-remove a field and attach its two periodic Riesz transforms.

    Raises RuntimeError if the filtered outputs carry an imaginary residue
    above RESIDUE_RTOL * max|f|, which would indicate a broken kernel or FFT
    configuration; the residue is discarded after the check.
    """
    f0 = remove_mean(field)
    n = f0.n
    K1, K2 = riesz_kernels(n)
    spectrum = _fft.fft2(f0.data)
    g = _fft.ifft2(K1 * spectrum)
    h = _fft.ifft2(K2 * spectrum)
    scale = np.max(np.abs(f0.data))
    if scale > 0.0:
        residue = max(np.max(np.abs(g.imag)), np.max(np.abs(h.imag)))
        if residue > RESIDUE_RTOL * scale:
            raise RuntimeError(
                f"imaginary residue {residue:.3e} exceeds {RESIDUE_RTOL:.0e} * max|f|")
    return MonogenicGrid(f0, RealGrid(g.real), RealGrid(h.real))
