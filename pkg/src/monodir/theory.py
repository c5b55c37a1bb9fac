"""Finite-sample theory: expected measure deficits, bounds, and thresholds.

On an N-by-N patch the periodic transforms leak energy across the spectral
seam, so the estimated measure of a perfectly unidirectional field falls
short of one by a deficit that decays like 1/N.  This module evaluates the
closed forms for that deficit, the Markov-style false-alarm bound built on
it, the detection threshold solved from the bound, and inverse Hankel
transforms used as covariance oracles for isotropic spectra.

Frequencies are in cycles/sample (band (0, 1/2)) except for the Hankel
utilities, which integrate over a radial wavenumber in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special

QUAD_ABS_TOL = 1e-9
QUAD_LIMIT = 200


def _check_direction(n1: float, n2: float) -> None:
    if abs(n1 * n1 + n2 * n2 - 1.0) > 1e-9:
        raise ValueError("(n1, n2) must be a unit vector")


def _check_band(lam: float, name: str = "lambda0") -> None:
    if not 0.0 < lam < 0.5:
        raise ValueError(f"{name} must lie strictly inside (0, 1/2)")


def u2_weight(lam: float) -> float:
    """Per-frequency weight of the finite-patch deficit.

    Monotonically decreasing and positive on (0, 1/2): low-frequency
    content costs the most accuracy on a finite patch.
    """
    return (4.0 / math.pi ** 2 / lam - 4.0 / 9.0 * lam
            + 1.0 / 3.0 - 4.0 / math.pi ** 2)


def seam_integrand(lam: float, lambda0: float, n1: float, n2: float,
                   sign: int) -> float:
    """Integrand of the one-sided spectral-seam leakage integral."""
    return (n1 * n1 * lam * lam
            / (lambda0 ** 2 * n1 ** 2 + (lambda0 * n2 + sign * lam) ** 2)
            / math.sin(math.pi * lam) ** 2)


def g_pm(sign: int, lambda0: float, n1: float, n2: float) -> float:
    """Closed-form approximation of the one-sided seam-leakage integral.

    sign selects the +lambda or -lambda branch.  The approximation replaces
    lam^2/sin^2(pi lam) by its second-order expansion, accurate to a couple
    of percent against direct quadrature of seam_integrand over (0, 1/2).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_band(lambda0)
    _check_direction(n1, n2)
    if n1 == 0.0:
        return 0.0
    a1 = math.atan(1.0 / (2.0 * lambda0 * abs(n1)) + sign * n2 / abs(n1))
    a2 = math.atan(n2 / abs(n1))
    log_term = math.log(1.0 + sign * n2 / lambda0 + 1.0 / (4.0 * lambda0 ** 2))
    return (n1 ** 2 / 6.0
            + abs(n1) * (1.0 / (lambda0 * math.pi ** 2)
                         + lambda0 / 3.0 * (2.0 * n2 ** 2 - 1.0))
            * (a1 - sign * a2)
            - sign * lambda0 * n1 ** 2 * n2 / 3.0 * log_term)


def g_sum(lambda0: float, n1: float, n2: float) -> float:
    """Two-sided seam leakage, the sum of both g_pm branches in one form.

    The arctangent pair of the two branches is collapsed with the tangent
    addition rule; for lambda0 < 1/2 both summands are positive with
    product of tangents above one, so the principal value needs +pi.
    """
    _check_band(lambda0)
    _check_direction(n1, n2)
    if n1 == 0.0:
        return 0.0
    ratio = 4.0 * lambda0 * n2 / (1.0 + 4.0 * lambda0 ** 2)
    arc = math.atan(4.0 * lambda0 * abs(n1) / (4.0 * lambda0 ** 2 - 1.0)) + math.pi
    return (n1 ** 2 / 3.0
            + lambda0 * n1 ** 2 * n2 / 3.0 * math.log((1.0 - ratio) / (1.0 + ratio))
            + abs(n1) * (1.0 / (lambda0 * math.pi ** 2)
                         + lambda0 / 3.0 * (2.0 * n2 ** 2 - 1.0)) * arc)


def e_u2_planewave(lambda0: float, n_side: int) -> float:
    """Expected deficit 1 - u for a random plane wave at frequency lambda0.

    Expectation over uniform direction and phase on an N-by-N patch;
    leading 1/N term only.
    """
    _check_band(lambda0)
    if n_side <= 0 or n_side % 2 != 0:
        raise ValueError("patch side must be a positive even integer")
    return u2_weight(lambda0) / n_side


def e_u2_unidirectional(psd: Callable[[float], float], n_side: int,
                        support: tuple[float, float] = (0.0, 0.5)) -> float:
    """Expected deficit 1 - u for a unidirectional field with 1D density psd.

    Density-weighted average of the per-frequency weight over the support,
    divided by the density mass; leading 1/N term only.  Raises on zero
    density mass.
    """
    if n_side <= 0 or n_side % 2 != 0:
        raise ValueError("patch side must be a positive even integer")
    lo, hi = support
    if not 0.0 <= lo < hi <= 0.5:
        raise ValueError("support must satisfy 0 <= lo < hi <= 1/2")
    num, _ = integrate.quad(lambda lam: u2_weight(lam) * psd(lam), lo, hi,
                            epsabs=QUAD_ABS_TOL, limit=QUAD_LIMIT)
    den, _ = integrate.quad(psd, lo, hi, epsabs=QUAD_ABS_TOL, limit=QUAD_LIMIT)
    if den <= 0.0:
        raise ValueError("spectral density has zero mass on the support")
    return num / den / n_side


def u2_bound(lambda_l: float, n_side: int) -> float:
    """Upper bound on the expected deficit for any band-pass unidirectional
    field whose spectrum has no content below lambda_l."""
    _check_band(lambda_l, "lambda_l")
    if n_side <= 0:
        raise ValueError("patch side must be positive")
    return u2_weight(lambda_l) / n_side


@dataclass(frozen=True)
class PfaBound:
    """Markov bound on P(u <= 1 - eta); vacuous when the bound exceeds one."""

    value: float
    vacuous: bool


def pfa_bound(eta: float, lambda_l: float, n_side: int) -> PfaBound:
    """Bound the false-alarm probability of the threshold 1 - eta."""
    if eta <= 0.0:
        raise ValueError("eta must be positive")
    value = u2_bound(lambda_l, n_side) / eta
    return PfaBound(value=value, vacuous=value > 1.0)


@dataclass(frozen=True)
class ThresholdResult:
    """Detection threshold 1 - eta solved from the false-alarm bound.

    threshold is None when eta >= 1, i.e. the bound cannot certify the
    requested false-alarm level at this patch size.
    """

    eta: float
    threshold: float | None

    @property
    def decidable(self) -> bool:
        return self.threshold is not None


def threshold_for_epsilon(epsilon: float, lambda_l: float,
                          n_side: int) -> ThresholdResult:
    """Solve the false-alarm bound for eta so that the bound equals epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("false-alarm budget must lie in (0, 1)")
    eta = u2_bound(lambda_l, n_side) / epsilon
    if eta >= 1.0:
        return ThresholdResult(eta=eta, threshold=None)
    return ThresholdResult(eta=eta, threshold=1.0 - eta)


# ---------------------------------------------------------------------------
# Hankel-transform covariance oracles for isotropic spectra


def inverse_hankel(psd: Callable[[float], float], order: int, xi: float,
                   k_max: float = np.inf) -> float:
    """Inverse Hankel transform: integral of psd(k) * J_order(k xi) * k dk.

    psd is a radial density over the wavenumber in radians; it must decay
    fast enough for adaptive quadrature on [0, k_max].
    """
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    result = integrate.quad(
        lambda k: psd(k) * special.jv(order, k * xi) * k, 0.0, k_max,
        epsabs=QUAD_ABS_TOL, limit=QUAD_LIMIT, full_output=1)
    if len(result) > 3:
        raise RuntimeError(f"Hankel quadrature did not converge: {result[3]}")
    return result[0]


@dataclass(frozen=True)
class IsoCov:
    """Covariances of an isotropic field and its transforms at polar lag
    (xi, theta)."""

    rff: float
    rgg: float
    rhh: float
    rfg: float
    rfh: float
    rgh: float

    @property
    def rgf(self) -> float:
        return -self.rfg

    @property
    def rhf(self) -> float:
        return -self.rfh

    @property
    def rhg(self) -> float:
        return self.rgh


def isotropic_covariances(psd: Callable[[float], float], xi: float,
                          theta: float, k_max: float = np.inf) -> IsoCov:
    """Assemble the six covariances of an isotropic field at one polar lag.

    Everything reduces to three radial integrals: the order-0 and order-1
    inverse Hankel transforms of the density and the order-1 transform of
    the density divided by the wavenumber.
    """
    h0 = inverse_hankel(psd, 0, xi, k_max)
    if xi == 0.0:
        h1 = 0.0
        ring = 0.5 * h0  # limit of (1/xi) * H1(psd/k, xi) as xi -> 0
    else:
        h1 = inverse_hankel(psd, 1, xi, k_max)
        result = integrate.quad(
            lambda k: psd(k) * special.jv(1, k * xi), 0.0, k_max,
            epsabs=QUAD_ABS_TOL, limit=QUAD_LIMIT, full_output=1)
        if len(result) > 3:
            raise RuntimeError(f"Hankel quadrature did not converge: {result[3]}")
        ring = result[0] / xi
    tau = 2.0 * math.pi
    c2, s2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    return IsoCov(
        rff=tau * h0,
        rgg=tau * (math.cos(theta) ** 2 * h0 - c2 * ring),
        rhh=tau * (math.sin(theta) ** 2 * h0 + c2 * ring),
        rfg=-tau * math.cos(theta) * h1,
        rfh=-tau * math.sin(theta) * h1,
        rgh=s2 * (math.pi * h0 - tau * ring),
    )
