"""Monte Carlo harness: measure distributions, finite-size sweeps, and the
false-alarm bound check, with CSV output for external plotting.

Trial t of a run with master seed s always draws from the substream (s, t),
so results do not depend on scheduling or worker count; aggregation uses
numpy's pairwise summation over the trial-indexed arrays.  Per-trial
measures are evaluated on the half-spectrum periodogram with cached kernel
weights, which matches the monogenic-transform path to rounding error and
avoids the two inverse transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import scipy.fft as _fft

from . import synth, theory
from .riesz import riesz_kernels
from .synth import Matern1D, Seed, Unidirectional1D


@lru_cache(maxsize=16)
def _half_spectrum_weights(n: int):
    """(w_gg, w_hh, w_gh) on the rfft2 half-spectrum, multiplicity folded in."""
    K1, K2 = riesz_kernels(n)
    half = slice(0, n // 2 + 1)
    mult = np.full(n // 2 + 1, 2.0)
    mult[0] = 1.0
    mult[-1] = 1.0
    w_ff = np.broadcast_to(mult, (n, n // 2 + 1)).copy()
    w_gg = (np.abs(K1[:, half]) ** 2) * mult
    w_hh = (np.abs(K2[:, half]) ** 2) * mult
    w_gh = (K1[:, half] * np.conj(K2[:, half])).real * mult
    for w in (w_ff, w_gg, w_hh, w_gh):
        w.flags.writeable = False
    return w_ff, w_gg, w_hh, w_gh


def u_hat_fast(data: np.ndarray) -> float:
    """Estimated measure of a raw square array via the periodogram.

    Identical (to rounding) to running the monogenic transform and the
    measure module on the same samples.
    """
    n = data.shape[0]
    d = data - data.mean()
    p = np.abs(_fft.rfft2(d)) ** 2
    w_ff, w_gg, w_hh, w_gh = _half_spectrum_weights(n)
    n4 = float(n) ** 4
    rff = float(np.sum(p * w_ff)) / n4
    rgg = float(np.sum(p * w_gg)) / n4
    rhh = float(np.sum(p * w_hh)) / n4
    rgh = float(np.sum(p * w_gh)) / n4
    if rff <= 0.0:
        raise ValueError("degenerate all-zero field")
    lam_max = rff + math.hypot(rgg - rhh, 2.0 * rgh)
    return 2.0 * lam_max / (rff + rgg + rhh) - 1.0


def _trial_values(spec, n: int, trials: int, master: int,
                  stream_offset: int = 0) -> np.ndarray:
    values = np.empty(trials)
    for t in range(trials):
        seed = Seed(master, stream_offset + t)
        values[t] = u_hat_fast(synth.gen_field(spec, n, seed).data)
    return values


# ---------------------------------------------------------------------------
# measure distributions per field class


@dataclass(frozen=True)
class Histogram:
    """Normalized histogram of the measure over seeded trials."""

    kind: str
    values: np.ndarray
    bin_edges: np.ndarray
    density: np.ndarray
    master_seed: int

    @property
    def median(self) -> float:
        return float(np.median(self.values))

    def mass(self, lo: float, hi: float) -> float:
        """Fraction of trials with measure in [lo, hi]."""
        return float(np.mean((self.values >= lo) & (self.values <= hi)))


def pdf_estimate(kind: str, n: int, trials: int, bins: int = 50,
                 master: int = 0) -> Histogram:
    """Estimate the measure's distribution for one field class.

    kind is iso, aniso, uni or separable (reference parameters).
    """
    if trials < 100:
        raise ValueError("need at least 100 trials for a density estimate")
    spec = synth.reference_spec(kind)
    values = _trial_values(spec, n, trials, master)
    density, edges = np.histogram(values, bins=bins, range=(0.0, 1.0),
                                  density=True)
    return Histogram(kind=kind, values=values, bin_edges=edges,
                     density=density, master_seed=master)


# ---------------------------------------------------------------------------
# finite-size sweeps


@dataclass(frozen=True)
class SweepResult:
    """Per-point deficit statistics with theory and bound overlays.

    mean/stderr describe 1 - u over the trials at each axis point; theory
    is the expected deficit, bound the band-pass upper bound (None where
    not applicable), fitted_slope the log-log regression slope for size
    sweeps.
    """

    axis_name: str
    axis: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    theory: np.ndarray
    bound: np.ndarray | None
    trials: int
    master_seed: int
    fitted_slope: float | None = None


def sweep_planewave(lambda0s, n: int, trials: int, master: int = 0) -> SweepResult:
    """Empirical deficit of random plane waves across wave frequencies."""
    lambda0s = np.asarray(lambda0s, dtype=float)
    means = np.empty(lambda0s.size)
    errs = np.empty(lambda0s.size)
    for i, lam0 in enumerate(lambda0s):
        spec = synth.PlaneWave(amplitude=1.0, lambda0=float(lam0))
        u2 = 1.0 - _trial_values(spec, n, trials, master + i)
        means[i] = u2.mean()
        errs[i] = u2.std(ddof=1) / math.sqrt(trials)
    th = np.array([theory.e_u2_planewave(float(l), n) for l in lambda0s])
    return SweepResult(axis_name="lambda0", axis=lambda0s, mean=means,
                       stderr=errs, theory=th, bound=None, trials=trials,
                       master_seed=master)


def sweep_unidirectional(n_list, trials: int, master: int = 0,
                         psd: Matern1D | None = None,
                         lambda_min: float = 0.05) -> SweepResult:
    """Deficit decay of band-pass unidirectional fields across patch sizes.

    The synthesis comb is truncated below lambda_min so the band-pass
    bound with cutoff lambda_min applies; the theory curve uses the same
    truncated density.
    """
    psd = psd or Matern1D()
    n_arr = np.asarray(n_list, dtype=int)
    spec = Unidirectional1D(psd=psd, lambda_min=lambda_min)
    means = np.empty(n_arr.size)
    errs = np.empty(n_arr.size)
    for i, n in enumerate(n_arr):
        u2 = 1.0 - _trial_values(spec, int(n), trials, master + i)
        means[i] = u2.mean()
        errs[i] = u2.std(ddof=1) / math.sqrt(trials)
    density = lambda lam: float(synth.matern_psd(psd, lam))
    th = np.array([theory.e_u2_unidirectional(density, int(n),
                                              support=(lambda_min, 0.5))
                   for n in n_arr])
    bd = np.array([theory.u2_bound(lambda_min, int(n)) for n in n_arr])
    slope = float(np.polyfit(np.log(n_arr.astype(float)), np.log(means), 1)[0])
    return SweepResult(axis_name="n", axis=n_arr, mean=means, stderr=errs,
                       theory=th, bound=bd, trials=trials, master_seed=master,
                       fitted_slope=slope)


def write_sweep_csv(result: SweepResult, path) -> None:
    """One row per axis value: mean, stderr, theory, bound."""
    lines = [f"{result.axis_name},mean,stderr,theory,bound"]
    bound = (result.bound if result.bound is not None
             else [float("nan")] * len(result.axis))
    for ax, mu, se, th, bd in zip(result.axis, result.mean, result.stderr,
                                  result.theory, bound):
        lines.append(",".join(format(float(v), ".9g")
                              for v in (ax, mu, se, th, bd)))
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# false-alarm bound coverage


@dataclass(frozen=True)
class BoundCheck:
    """Empirical miss rates of band-pass unidirectional fields vs the bound.

    For each eta: empirical P(u <= 1 - eta) over the trials, the bound
    value, and whether the bound is vacuous (above one, not testable).
    """

    etas: np.ndarray
    empirical: np.ndarray
    bound: np.ndarray
    vacuous: np.ndarray
    n_side: int
    lambda_l: float
    trials: int
    master_seed: int


def bound_check(lambda_l: float, n_side: int, trials: int, etas,
                master: int = 0, psd: Matern1D | None = None,
                n_components: int | None = None) -> BoundCheck:
    """Check the false-alarm bound on seeded unidirectional fields."""
    etas = np.asarray(etas, dtype=float)
    spec = Unidirectional1D(psd=psd or Matern1D(), lambda_min=lambda_l,
                            n_components=n_components)
    u = _trial_values(spec, n_side, trials, master)
    empirical = np.array([float(np.mean(u <= 1.0 - eta)) for eta in etas])
    bounds = np.empty(etas.size)
    vac = np.empty(etas.size, dtype=bool)
    for i, eta in enumerate(etas):
        b = theory.pfa_bound(float(eta), lambda_l, n_side)
        bounds[i] = b.value
        vac[i] = b.vacuous
    return BoundCheck(etas=etas, empirical=empirical, bound=bounds,
                      vacuous=vac, n_side=n_side, lambda_l=lambda_l,
                      trials=trials, master_seed=master)
