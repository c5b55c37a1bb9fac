"""Sample covariance machinery for the monogenic representation.

Covariances divide by n^2 (no bias correction) and lags are circular,
consistent with the periodic transforms.  r_ab(xi) averages
a(x) * b(x - xi) over the torus, with xi = (xi1, xi2) in the (x1, x2)
coordinates of the grid module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as _fft

from .quaternion import Quaternion, eta_basis, involution_matrix, qmul_components
from .riesz import MonogenicGrid

#: circular lags probed by the propriety diagnostic, as (xi1, xi2) pairs
PROPRIETY_LAGS = ((0, 0), (1, 0), (0, 1), (2, 3), (5, 5))


@dataclass(frozen=True)
class CovZero:
    """Lag-zero covariances of a monogenic grid (field-variance units)."""

    rff: float
    rgg: float
    rhh: float
    rgh: float

    @property
    def total(self) -> float:
        """Energy of the monogenic signal, rff + rgg + rhh."""
        return self.rff + self.rgg + self.rhh


@dataclass(frozen=True)
class QuatCov:
    """Quaternion-valued lag-zero covariances of m, m^(i) and m^(j)."""

    rmm: Quaternion
    rmmi: Quaternion
    rmmj: Quaternion


def cov_zero(m: MonogenicGrid) -> CovZero:
    f, g, h = m.f.data, m.g.data, m.h.data
    return CovZero(
        rff=float(np.mean(f * f)),
        rgg=float(np.mean(g * g)),
        rhh=float(np.mean(h * h)),
        rgh=float(np.mean(g * h)),
    )


def r_matrix(c: CovZero) -> np.ndarray:
    """2x2 symmetric matrix whose dominant eigenpair carries the direction."""
    return np.array([
        [c.rff + c.rgg - c.rhh, 2.0 * c.rgh],
        [2.0 * c.rgh, c.rff - c.rgg + c.rhh],
    ])


def _shift(a: np.ndarray, lag: tuple[int, int]) -> np.ndarray:
    # value of a at (x - xi): roll content forward by (xi2, xi1) in array axes
    xi1, xi2 = lag
    return np.roll(a, shift=(xi2, xi1), axis=(0, 1))


def lagged_cov(a: np.ndarray, b: np.ndarray, lag: tuple[int, int]) -> float:
    """Circular sample covariance mean(a(x) * b(x - xi)) for one lag."""
    return float(np.mean(a * _shift(b, lag)))


def cov_map(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All circular lags of mean(a(x) * b(x - xi)) at once, via the FFT.

    Output is indexed like the grids: out[xi2, xi1].
    """
    n2 = a.size
    prod = _fft.fft2(a) * np.conj(_fft.fft2(b))
    return _fft.ifft2(prod).real / n2


def _mono_components(m: MonogenicGrid) -> np.ndarray:
    n = m.n
    q = np.zeros((4, n, n))
    q[0] = m.f.data
    q[1] = m.g.data
    q[2] = m.h.data
    return q


def quat_cov_zero(m: MonogenicGrid) -> QuatCov:
    """Sample quaternion covariances of m against m, m^(i) and m^(j) at lag 0.

    The mixed f-g and f-h covariances vanish only in expectation; their
    sampled values survive in the i and j parts of the results.
    """
    q = _mono_components(m)
    out = []
    for eta in (None, Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0)):
        other = q if eta is None else np.einsum(
            "ab,b...->a...", involution_matrix(eta), q)
        comps = qmul_components(q[0], q[1], q[2], q[3],
                                other[0], -other[1], -other[2], -other[3])
        out.append(Quaternion(*(float(np.mean(c)) for c in comps)))
    return QuatCov(rmm=out[0], rmmi=out[1], rmmj=out[2])


def complementary_cov_lag(m: MonogenicGrid, nu: float,
                          lag: tuple[int, int]) -> Quaternion:
    """Sample covariance of m(x) with m^(eta_perp)(x - xi), one circular lag.

    eta_perp = -sin(nu)i + cos(nu)j is the in-plane axis orthogonal to the
    direction under test; for a unidirectional field at angle nu this
    covariance vanishes at every lag.
    """
    _, eta_perp = eta_basis(nu)
    q = _mono_components(m)
    other = np.einsum("ab,b...->a...", involution_matrix(eta_perp), q)
    shifted = np.stack([_shift(c, lag) for c in other])
    comps = qmul_components(q[0], q[1], q[2], q[3],
                            shifted[0], -shifted[1], -shifted[2], -shifted[3])
    return Quaternion(*(float(np.mean(c)) for c in comps))


def complementary_cov_map(m: MonogenicGrid, nu: float) -> np.ndarray:
    """All-lag complementary covariance, shape (4, n, n), via the FFT path.

    Component c of the quaternion covariance at lag (xi1, xi2) is
    out[c, xi2, xi1]; intended for audits of the fixed-lag diagnostic.
    """
    _, eta_perp = eta_basis(nu)
    q = _mono_components(m)
    other = np.einsum("ab,b...->a...", involution_matrix(eta_perp), q)
    n2 = m.n * m.n
    Fq = [_fft.fft2(c) for c in q]
    Fo = [np.conj(_fft.fft2(c)) for c in (other[0], -other[1], -other[2], -other[3])]
    # M[a][b](xi) = mean over x of q_a(x) * conj(other)_b(x - xi)
    M = [[_fft.ifft2(Fq[a] * Fo[b]).real / n2 for b in range(4)]
         for a in range(4)]
    # Hamilton product, with each component pair replaced by its lag map
    return np.stack([
        M[0][0] - M[1][1] - M[2][2] - M[3][3],
        M[0][1] + M[1][0] + M[2][3] - M[3][2],
        M[0][2] - M[1][3] + M[2][0] + M[3][1],
        M[0][3] + M[1][2] - M[2][1] + M[3][0],
    ])


def propriety_defect(m: MonogenicGrid, nu: float,
                     lags: tuple = PROPRIETY_LAGS) -> float:
    """Normalized size of the complementary covariance over a fixed lag set.

    Root-mean-square of |r_{m m^(eta_perp)}(xi)| over the lag set, divided by
    the monogenic energy r_mm(0).  Near zero when the field is unidirectional
    along nu; order one when the basis is mismatched or the field has no
    single direction.
    """
    energy = quat_cov_zero(m).rmm.w
    if energy <= 0.0:
        raise ValueError("zero field has no propriety defect")
    norms2 = []
    for lag in lags:
        r = complementary_cov_lag(m, nu, lag)
        norms2.append(r.w ** 2 + r.x ** 2 + r.y ** 2 + r.z ** 2)
    return float(np.sqrt(np.mean(norms2)) / energy)
