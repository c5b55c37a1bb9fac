"""Scalar quaternion algebra: Hamilton products, conjugation, involutions.

Quaternions are written q = w + x*i + y*j + z*k.  Involutions over pure unit
quaternions are the reflections q -> -eta*q*eta used by the directional
propriety diagnostics; the basis helper returns the rotated pair
(cos(v)i + sin(v)j, -sin(v)i + cos(v)j) that, together with k, forms the
orthogonal basis adapted to a direction at angle v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    """Quaternion with float64 components w + x*i + y*j + z*k."""

    w: float
    x: float
    y: float
    z: float

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion(self.w * other, self.x * other,
                          self.y * other, self.z * other)

    def __rmul__(self, other):
        # other is a real scalar; real scalars commute with quaternions
        return Quaternion(self.w * other, self.x * other,
                          self.y * other, self.z * other)

    def conjugate(self) -> "Quaternion":
        return qconj(self)

    def norm(self) -> float:
        return qnorm(self)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class PureUnitQuaternion:
    """Unit-norm quaternion with zero real part, x*i + y*j + z*k."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.hypot(self.x, self.y, self.z)
        if abs(n - 1.0) > _UNIT_TOL:
            raise ValueError(f"components must have unit norm, got |.|={n!r}")

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with ij = k, jk = i, ki = j and i^2 = j^2 = k^2 = -1."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def qnorm(q: Quaternion) -> float:
    return math.hypot(q.w, q.x, q.y, q.z)


def qinv(q: Quaternion) -> Quaternion:
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 == 0.0:
        raise ValueError("the zero quaternion has no inverse")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def inner(a: Quaternion, b: Quaternion) -> float:
    """Inner product Re(a*b)."""
    return qmul(a, b).w


def _coerce_pure_unit(eta) -> Quaternion:
    if isinstance(eta, PureUnitQuaternion):
        return eta.as_quaternion()
    if abs(eta.w) > _UNIT_TOL or abs(qnorm(eta) - 1.0) > _UNIT_TOL:
        raise ValueError("involution axis must be a pure unit quaternion")
    return eta


def involution(q: Quaternion, eta) -> Quaternion:
    """Involution of q over the pure unit quaternion eta: -eta*q*eta.

    For eta = i this fixes the w and x components and negates y and z.
    """
    e = _coerce_pure_unit(eta)
    return -qmul(qmul(e, q), e)


def eta_basis(nu: float) -> tuple[Quaternion, Quaternion]:
    """Pure unit pair (eta, eta_perp) adapted to the direction angle nu.

    eta = cos(nu)i + sin(nu)j and eta_perp = -sin(nu)i + cos(nu)j; together
    with k they form an orthogonal basis of the imaginary quaternions.
    """
    c, s = math.cos(nu), math.sin(nu)
    return Quaternion(0.0, c, s, 0.0), Quaternion(0.0, -s, c, 0.0)


def involution_matrix(eta) -> np.ndarray:
    """4x4 real matrix of q -> -eta*q*eta acting on (w, x, y, z) components."""
    e = _coerce_pure_unit(eta)
    cols = [involution(basis, e) for basis in (ONE, I, J, K)]
    return np.array([[c.w for c in cols],
                     [c.x for c in cols],
                     [c.y for c in cols],
                     [c.z for c in cols]], dtype=float)


def qmul_components(aw, ax, ay, az, bw, bx, by, bz):
    """Hamilton product on parallel component arrays (or scalars)."""
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )
