"""Unidirectionality measure, direction estimate, and baseline measures.

The measure is u = 2*lambda_max(R)/(rff + rgg + rhh) - 1 with R the 2x2
matrix of the stats module; it lies in [0, 1], is one exactly when all the
signal energy follows a single direction, and zero when the two transform
channels carry balanced, uncorrelated energy.  Directions are axial: angles
are measured counterclockwise from the x1 axis and reduced to [0, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import RealGrid
from .riesz import MonogenicGrid
from .stats import CovZero, cov_zero

#: eigenvalue gap below which the direction is reported as undefined
DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class DirectionalityResult:
    u_hat: float
    angle: float | None
    lambda_max: float
    lambda_min: float
    cov: CovZero


def _principal_angle(a: float, b: float, c: float, lam: float) -> float:
    """Angle of the eigenvector of [[a, b], [b, c]] for eigenvalue lam."""
    if b == 0.0:
        theta = 0.0 if a >= c else 0.5 * math.pi
    else:
        theta = math.atan2(lam - a, b)
    return theta % math.pi


def unidirectionality(m: MonogenicGrid) -> DirectionalityResult:
    """Estimate the degree of unidirectionality and the preferred direction.

    The angle is None when the two eigenvalues are numerically
    indistinguishable (gap below DEGENERATE_RTOL * rff), in which case the
    field carries no orientation information at lag zero.
    """
    c = cov_zero(m)
    if c.rff <= 0.0:
        raise ValueError("degenerate all-zero field")
    spread = math.hypot(c.rgg - c.rhh, 2.0 * c.rgh)
    lam_max = c.rff + spread
    lam_min = c.rff - spread
    u = 2.0 * lam_max / c.total - 1.0
    if lam_max - lam_min < DEGENERATE_RTOL * c.rff:
        angle = None
    else:
        angle = _principal_angle(c.rff + c.rgg - c.rhh, 2.0 * c.rgh,
                                 c.rff - c.rgg + c.rhh, lam_max)
    return DirectionalityResult(u_hat=u, angle=angle,
                                lambda_max=lam_max, lambda_min=lam_min, cov=c)


def coherency_index(m: MonogenicGrid) -> float:
    """Eigenvalue contrast of the 2x2 moment matrix of the two transforms.

    chi = (lmax - lmin)/(lmax + lmin) for J = [[rgg, rgh], [rgh, rhh]];
    numerically equal to the unidirectionality measure on zero-mean grids.
    """
    c = cov_zero(m)
    trace = c.rgg + c.rhh
    if trace <= 0.0:
        raise ValueError("degenerate moment matrix with zero trace")
    return math.hypot(c.rgg - c.rhh, 2.0 * c.rgh) / trace


def tensor_direction(f: RealGrid) -> float | None:
    """Gradient-tensor estimate of the variation direction of a field.

    Central differences with periodic wrap feed the 2x2 gradient moment
    matrix; the dominant eigenvector points along the direction in which a
    striped field varies, matching the monogenic angle convention.  Returns
    None when the tensor is proportional to the identity (no direction).
    """
    if f.n < 4:
        raise ValueError("need side length >= 4 for central differences")
    d = f.data
    f1 = 0.5 * (np.roll(d, -1, axis=1) - np.roll(d, 1, axis=1))
    f2 = 0.5 * (np.roll(d, -1, axis=0) - np.roll(d, 1, axis=0))
    s11 = float(np.mean(f1 * f1))
    s22 = float(np.mean(f2 * f2))
    s12 = float(np.mean(f1 * f2))
    spread = math.hypot(s11 - s22, 2.0 * s12)
    trace = s11 + s22
    if trace <= 0.0 or spread < DEGENERATE_RTOL * trace:
        return None
    lam_max = 0.5 * (trace + spread)
    return _principal_angle(s11, s12, s22, lam_max)
