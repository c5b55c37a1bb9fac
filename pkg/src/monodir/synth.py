"""Seeded generators for band-pass random fields and related spectra.

Four field classes are covered: isotropic and geometrically anisotropic
fields with a shifted (band-pass) Matern spectrum, purely unidirectional
fields built from a dense one-dimensional cosine comb, single plane waves,
and separable band-pass fields (a null case for the directionality
measure).  All generators are pure functions of (spec, n, seed): a Seed is
a (master, stream) pair, and distinct streams of one master give
independent trials whose results do not depend on evaluation order.

Frequencies are in cycles/sample throughout, so the usable band is
(0, 1/2).  2D synthesis draws spectral coefficients independently on the
DFT lattice (circulant approximation, exactly stationary on the torus);
unidirectional synthesis uses an off-lattice frequency comb so generic
directions are not forced onto the DFT grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.fft as _fft

from .grid import RealGrid

#: reference simulation parameters shared by the documented experiments
REF_SIGMA2 = 1.0
REF_SMOOTHNESS = 1.5
REF_RANGE = 20.0
REF_CENTER = 0.1
#: unit-determinant deformation used for the reference anisotropic class
REF_ANISO_D = np.array([[1.0, 0.85], [0.85, 1.0]]) / math.sqrt(0.2775)


@dataclass(frozen=True)
class Seed:
    """Master seed plus a stream index (trial number)."""

    master: int
    stream: int = 0


def make_rng(seed: Union[Seed, int, tuple]) -> np.random.Generator:
    if isinstance(seed, Seed):
        key = (seed.master, seed.stream)
    elif isinstance(seed, tuple):
        key = tuple(int(s) for s in seed)
    else:
        key = (int(seed), 0)
    return np.random.default_rng(np.random.SeedSequence(key))


# ---------------------------------------------------------------------------
# spectral densities


@dataclass(frozen=True)
class Matern1D:
    """Scalar band-pass Matern density peaked at center frequency lambda0."""

    sigma2: float = REF_SIGMA2
    smoothness: float = REF_SMOOTHNESS
    rho: float = REF_RANGE
    lambda0: float = REF_CENTER

    def __post_init__(self):
        if self.sigma2 <= 0 or self.smoothness <= 0 or self.rho <= 0:
            raise ValueError("sigma2, smoothness and rho must be positive")
        if not 0.0 <= self.lambda0 < 0.5:
            raise ValueError("center frequency must lie in [0, 1/2)")


@dataclass(frozen=True)
class ShiftedMatern:
    """2D band-pass Matern spectrum, radial in sqrt(lam' D lam).

    D is symmetric positive definite with unit determinant; the identity
    gives an isotropic field and ill-conditioned D an elongated one.
    """

    sigma2: float = REF_SIGMA2
    smoothness: float = REF_SMOOTHNESS
    rho: float = REF_RANGE
    lambda0: float = REF_CENTER
    d_matrix: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self):
        if self.sigma2 <= 0 or self.smoothness <= 0 or self.rho <= 0:
            raise ValueError("sigma2, smoothness and rho must be positive")
        if not 0.0 <= self.lambda0 < 0.5:
            raise ValueError("center frequency must lie in [0, 1/2)")
        d = np.asarray(self.d_matrix, dtype=float)
        if d.shape != (2, 2) or abs(d[0, 1] - d[1, 0]) > 1e-12:
            raise ValueError("D must be a symmetric 2x2 matrix")
        if d[0, 0] <= 0 or np.linalg.det(d) <= 0:
            raise ValueError("D must be positive definite")
        if abs(np.linalg.det(d) - 1.0) > 1e-9:
            raise ValueError("D must have unit determinant")
        d.flags.writeable = False
        object.__setattr__(self, "d_matrix", d)

    @property
    def scalar(self) -> Matern1D:
        return Matern1D(self.sigma2, self.smoothness, self.rho, self.lambda0)


@dataclass(frozen=True)
class Unidirectional1D:
    """One-dimensional band-pass process embedded along a direction.

    direction is the variation angle in radians, or None to draw it
    uniformly on [0, pi) per realization.  The synthesis comb spans
    (lambda_min, 1/2) with n_components frequencies (default 4n).
    """

    psd: Matern1D = field(default_factory=Matern1D)
    direction: float | None = None
    lambda_min: float = 0.0
    n_components: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.lambda_min < 0.5:
            raise ValueError("lambda_min must lie in [0, 1/2)")
        if self.n_components is not None and self.n_components < 1:
            raise ValueError("n_components must be positive")


@dataclass(frozen=True)
class PlaneWave:
    """Single cosine at frequency lambda0; phase/direction fixed or random."""

    amplitude: float = 1.0
    lambda0: float = REF_CENTER
    phase: float | None = None
    direction: float | None = None

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError("amplitude must be positive")
        if not 0.0 < self.lambda0 < 0.5:
            raise ValueError("wave frequency must lie in (0, 1/2)")


@dataclass(frozen=True)
class SeparableMatern:
    """Product of two 1D band-pass factors, one per frequency axis."""

    axis1: Matern1D = field(default_factory=Matern1D)
    axis2: Matern1D = field(default_factory=Matern1D)


PsdSpec = Union[ShiftedMatern, Unidirectional1D, PlaneWave, SeparableMatern]


def _matern_radial(p: Matern1D, s):
    """Band-pass Matern density evaluated at shifted radial argument s."""
    nu = p.smoothness
    scale = (p.sigma2 * math.gamma(nu + 1.0) * (4.0 * nu) ** nu
             / (math.pi * math.gamma(nu) * (math.pi * p.rho) ** (2.0 * nu)))
    width = 4.0 * nu / (math.pi * p.rho) ** 2
    return scale / (width + (np.asarray(s, dtype=float) - p.lambda0) ** 2) ** (nu + 1.0)


def matern_psd(spec, lam):
    """Pointwise spectral density.

    For a ShiftedMatern, lam is a pair (lam1, lam2) of scalars or arrays;
    for Matern1D / Unidirectional1D it is a scalar frequency (evaluated at
    |lam|); for SeparableMatern a pair fed through the two factors.
    """
    if isinstance(spec, ShiftedMatern):
        l1, l2 = (np.asarray(v, dtype=float) for v in lam)
        d = spec.d_matrix
        quad = d[0, 0] * l1 * l1 + 2.0 * d[0, 1] * l1 * l2 + d[1, 1] * l2 * l2
        return _matern_radial(spec.scalar, np.sqrt(quad))
    if isinstance(spec, Matern1D):
        return _matern_radial(spec, np.abs(lam))
    if isinstance(spec, Unidirectional1D):
        return _matern_radial(spec.psd, np.abs(lam))
    if isinstance(spec, SeparableMatern):
        l1, l2 = lam
        return (_matern_radial(spec.axis1, np.abs(l1))
                * _matern_radial(spec.axis2, np.abs(l2)))
    raise TypeError(f"no spectral density for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# generators


def _mirror(a: np.ndarray) -> np.ndarray:
    """a evaluated at the negated bin indices, (i, j) -> (-i mod n, -j mod n)."""
    return np.roll(a[::-1, ::-1], shift=(1, 1), axis=(0, 1))


def _psd_mesh(spec, n: int) -> np.ndarray:
    lam = _fft.fftfreq(n)
    l1 = lam[np.newaxis, :]  # axis 1 carries x1 frequencies
    l2 = lam[:, np.newaxis]
    S = np.broadcast_to(matern_psd(spec, (l1, l2)), (n, n)).copy()
    # exact evenness under bin mirroring keeps the synthesis spectrum
    # Hermitian, so the output is real to rounding error
    return 0.5 * (S + _mirror(S))


def gen_field_2d(spec, n: int, seed) -> RealGrid:
    """Draw a stationary Gaussian field with the given 2D spectrum.

    Spectral coefficients are independent complex Gaussians with per-bin
    variance proportional to the density, so the sample variance matches
    the lattice sum of the density times the bin area.
    """
    if not isinstance(spec, (ShiftedMatern, SeparableMatern)):
        raise TypeError("2D synthesis needs a ShiftedMatern or SeparableMatern spec")
    if n % 2 != 0:
        raise ValueError("side length must be even")
    rng = make_rng(seed)
    white = rng.standard_normal((n, n))
    coeffs = np.sqrt(_psd_mesh(spec, n)) * _fft.fft2(white)
    out = _fft.ifft2(coeffs)
    scale = np.max(np.abs(out.real))
    if scale > 0 and np.max(np.abs(out.imag)) > 1e-10 * scale:
        raise RuntimeError("synthesis spectrum lost Hermitian symmetry")
    return RealGrid(out.real)


def _unit_powers(u: np.ndarray, n: int) -> np.ndarray:
    """powers[m, j] = u[m]**j for j in [0, n), via running products."""
    base = np.ones((u.size, n), dtype=complex)
    base[:, 1:] = u[:, np.newaxis]
    return np.cumprod(base, axis=1)


def _cosine_comb(n: int, freqs: np.ndarray, amps: np.ndarray,
                 phases: np.ndarray, direction: float) -> np.ndarray:
    """Sum of amps*cos(2 pi freqs (x1 cos v + x2 sin v) + phases) on the grid."""
    c, s = math.cos(direction), math.sin(direction)
    col = _unit_powers(np.exp(2j * np.pi * freqs * c), n)  # (M, n) over x1
    row = _unit_powers(np.exp(2j * np.pi * freqs * s), n)  # (M, n) over x2
    row = row * np.exp(1j * phases)[:, np.newaxis]
    weighted_re = amps[:, np.newaxis] * col.real
    weighted_im = amps[:, np.newaxis] * col.imag
    # f[r, c] = sum_m Re(row[m, r] * amps[m] * col[m, c])
    return row.real.T @ weighted_re - row.imag.T @ weighted_im


def gen_unidirectional(spec: Unidirectional1D, n: int, seed) -> RealGrid:
    """Synthesize a purely unidirectional field from a 1D frequency comb.

    Component amplitudes follow the square root of the 1D density and the
    phases are independent and uniform, so along its direction the field is
    a stationary band-pass process and across it the field is constant.
    """
    if n % 2 != 0:
        raise ValueError("side length must be even")
    rng = make_rng(seed)
    nu = spec.direction
    if nu is None:
        nu = rng.uniform(0.0, math.pi)
    m = spec.n_components or 4 * n
    lo, hi = spec.lambda_min, 0.5
    dlam = (hi - lo) / m
    freqs = lo + (np.arange(m) + 0.5) * dlam
    amps = 2.0 * np.sqrt(matern_psd(spec.psd, freqs) * dlam)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=m)
    return RealGrid(_cosine_comb(n, freqs, amps, phases, nu))


def gen_plane_wave(amplitude: float, lambda0: float, n: int, seed,
                   phase: float | None = None,
                   direction: float | None = None) -> RealGrid:
    """Single sampled cosine; direction and phase drawn unless fixed."""
    spec = PlaneWave(amplitude, lambda0, phase, direction)
    if n % 2 != 0:
        raise ValueError("side length must be even")
    rng = make_rng(seed)
    nu = rng.uniform(0.0, math.pi) if spec.direction is None else spec.direction
    phi = rng.uniform(0.0, 2.0 * math.pi) if spec.phase is None else spec.phase
    cols, rows = np.meshgrid(np.arange(n), np.arange(n))
    t = cols * math.cos(nu) + rows * math.sin(nu)
    return RealGrid(amplitude * np.cos(2.0 * math.pi * lambda0 * t + phi))


def gen_field(spec: PsdSpec, n: int, seed) -> RealGrid:
    """Dispatch a realization of any spec variant."""
    if isinstance(spec, (ShiftedMatern, SeparableMatern)):
        return gen_field_2d(spec, n, seed)
    if isinstance(spec, Unidirectional1D):
        return gen_unidirectional(spec, n, seed)
    if isinstance(spec, PlaneWave):
        return gen_plane_wave(spec.amplitude, spec.lambda0, n, seed,
                              phase=spec.phase, direction=spec.direction)
    raise TypeError(f"cannot generate from {type(spec).__name__}")


def reference_spec(kind: str, lambda_min: float = 0.0,
                   direction: float | None = None) -> PsdSpec:
    """Named spec with the reference simulation parameters.

    kind is one of iso, aniso, uni, separable, planewave.
    """
    if kind == "iso":
        return ShiftedMatern()
    if kind == "aniso":
        return ShiftedMatern(d_matrix=REF_ANISO_D)
    if kind == "uni":
        return Unidirectional1D(direction=direction, lambda_min=lambda_min)
    if kind == "separable":
        return SeparableMatern()
    if kind == "planewave":
        return PlaneWave(direction=direction)
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# spec serialization (consumed by the CLI)


def spec_to_dict(spec: PsdSpec) -> dict:
    if isinstance(spec, ShiftedMatern):
        return {"kind": "shifted-matern", "sigma2": spec.sigma2,
                "smoothness": spec.smoothness, "rho": spec.rho,
                "lambda0": spec.lambda0,
                "d_matrix": [list(map(float, r)) for r in spec.d_matrix]}
    if isinstance(spec, Unidirectional1D):
        return {"kind": "unidirectional", "sigma2": spec.psd.sigma2,
                "smoothness": spec.psd.smoothness, "rho": spec.psd.rho,
                "lambda0": spec.psd.lambda0, "direction": spec.direction,
                "lambda_min": spec.lambda_min,
                "n_components": spec.n_components}
    if isinstance(spec, PlaneWave):
        return {"kind": "plane-wave", "amplitude": spec.amplitude,
                "lambda0": spec.lambda0, "phase": spec.phase,
                "direction": spec.direction}
    if isinstance(spec, SeparableMatern):
        return {"kind": "separable",
                "axis1": spec_to_dict_1d(spec.axis1),
                "axis2": spec_to_dict_1d(spec.axis2)}
    raise TypeError(f"cannot serialize {type(spec).__name__}")


def spec_to_dict_1d(p: Matern1D) -> dict:
    return {"sigma2": p.sigma2, "smoothness": p.smoothness,
            "rho": p.rho, "lambda0": p.lambda0}


def spec_from_dict(doc: dict) -> PsdSpec:
    kind = doc.get("kind")
    if kind == "shifted-matern":
        return ShiftedMatern(doc["sigma2"], doc["smoothness"], doc["rho"],
                             doc["lambda0"], np.asarray(doc["d_matrix"]))
    if kind == "unidirectional":
        return Unidirectional1D(
            Matern1D(doc["sigma2"], doc["smoothness"], doc["rho"], doc["lambda0"]),
            direction=doc.get("direction"),
            lambda_min=doc.get("lambda_min", 0.0),
            n_components=doc.get("n_components"))
    if kind == "plane-wave":
        return PlaneWave(doc["amplitude"], doc["lambda0"],
                         doc.get("phase"), doc.get("direction"))
    if kind == "separable":
        return SeparableMatern(Matern1D(**doc["axis1"]), Matern1D(**doc["axis2"]))
    raise ValueError(f"unknown spec kind {kind!r}")


# ---------------------------------------------------------------------------
# anisotropy mixing function and its Fourier coefficients


def beta_fn(sigma1: float, alpha: float, kappa, reflection: bool = False):
    """Angular mixing function of a geometrically deformed spectrum.

    sigma1 is the dominant eigenvalue of the deformation, alpha the angle of
    its dominant eigenvector, kappa the spectral polar angle.  The sign
    branch follows whether the eigenvector matrix is a rotation (default)
    or a reflection.  For sigma1 = 1, alpha = 0 this reduces to cos(kappa).
    """
    if sigma1 <= 0:
        raise ValueError("sigma1 must be positive")
    k = np.asarray(kappa, dtype=float)
    ck, sk = np.cos(k), np.sin(k)
    term1 = math.cos(alpha) * ck * np.sqrt(sigma1 ** 2 * ck ** 2 + sk ** 2)
    term2 = math.sin(alpha) * sk * np.sqrt(ck ** 2 + sk ** 2 / sigma1 ** 2)
    num = term1 + term2 if reflection else term1 - term2
    return num / (sigma1 * ck ** 2 + sk ** 2 / sigma1)


def beta_coeffs(sigma1: float, alpha: float, max_order: int,
                nodes: int = 4096, reflection: bool = False) -> np.ndarray:
    """Fourier coefficients a_l of the mixing function for |l| <= max_order.

    Periodic trapezoid quadrature of (1/2pi) * integral of beta * e^(-il k);
    returns a complex array indexed l = -max_order .. max_order.
    """
    if nodes < 4096:
        raise ValueError("use at least 4096 quadrature nodes")
    kappas = -math.pi + 2.0 * math.pi * np.arange(nodes) / nodes
    values = beta_fn(sigma1, alpha, kappas, reflection=reflection)
    orders = np.arange(-max_order, max_order + 1)
    kernel = np.exp(-1j * np.outer(orders, kappas))
    return kernel @ values / nodes
