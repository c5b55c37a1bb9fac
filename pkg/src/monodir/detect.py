"""End-to-end unidirectionality detector.

Pipeline: periodic Riesz transforms, lag-zero covariances, the estimated
measure, then comparison against the threshold solved from the false-alarm
bound.  When the bound cannot certify the requested false-alarm level at
the given patch size the outcome is the explicit decision "undecidable"
rather than a forced call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as _fft

from .grid import RealGrid
from .measure import unidirectionality
from .riesz import monogenic
from .theory import threshold_for_epsilon

DECISION_UNIDIRECTIONAL = "unidirectional"
DECISION_NOT = "not-unidirectional"
DECISION_UNDECIDABLE = "undecidable"


@dataclass(frozen=True)
class DetectorConfig:
    """False-alarm budget and lower cutoff frequency of the band."""

    epsilon: float
    lambda_l: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0.0 < self.lambda_l < 0.5:
            raise ValueError("lambda_l must lie in (0, 1/2)")


@dataclass(frozen=True)
class Detection:
    u_hat: float
    threshold: float | None
    decision: str
    angle: float | None
    eta: float


def detect(field: RealGrid, cfg: DetectorConfig) -> Detection:
    """Decide whether a field is unidirectional at the configured budget."""
    result = unidirectionality(monogenic(field))
    solved = threshold_for_epsilon(cfg.epsilon, cfg.lambda_l, field.n)
    if solved.threshold is None:
        decision = DECISION_UNDECIDABLE
    elif result.u_hat >= solved.threshold:
        decision = DECISION_UNIDIRECTIONAL
    else:
        decision = DECISION_NOT
    return Detection(u_hat=result.u_hat, threshold=solved.threshold,
                     decision=decision, angle=result.angle, eta=solved.eta)


def estimate_lambda_l(field: RealGrid, fraction: float = 0.01) -> float:
    """Advisory lower-cutoff estimate from the radial periodogram.

    Returns the smallest radial frequency (cycles/sample) at which the
    cumulative periodogram power, DC excluded, reaches the given fraction
    of the total.  Never substituted for a configured cutoff.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    d = field.data - field.data.mean()
    power = np.abs(_fft.fft2(d)) ** 2
    lam = _fft.fftfreq(field.n)
    radius = np.hypot(lam[np.newaxis, :], lam[:, np.newaxis]).ravel()
    p = power.ravel()
    order = np.argsort(radius, kind="stable")
    radius, p = radius[order], p[order]
    total = p.sum()
    if total <= 0.0:
        raise ValueError("zero field has no spectral content")
    idx = int(np.searchsorted(np.cumsum(p), fraction * total))
    return float(radius[min(idx, radius.size - 1)])
