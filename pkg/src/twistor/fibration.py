"""The twistor projection CP^3 -> S^4 and the antiholomorphic lift.

Points of S^4 are returned as real 5-vectors (Re A, Im A, Re B, Im B, C),
where A + Bj = 2 conj(q1) q2 / (|q1|^2 + |q2|^2) in the quaternions and
C = (|q1|^2 - |q2|^2) / (|q1|^2 + |q2|^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import CurveCP3
from .errors import DegenerateInputError


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    @classmethod
    def from_complex_pair(cls, a: complex, b: complex) -> Quaternion:
        """a + b j, using (x + iy) j = x j + y k."""
        return cls(a.real, a.imag, b.real, b.imag)

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def __mul__(self, o):
        if not isinstance(o, Quaternion):
            return Quaternion(self.w * o, self.x * o, self.y * o, self.z * o)
        return Quaternion(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    __rmul__ = __mul__

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])


def project(z) -> np.ndarray:
    """Twistor projection of homogeneous coordinates.

    ``z`` has shape (4,) or (4, ...); the result has shape (5,) or (5, ...).
    """
    z = np.asarray(z, dtype=complex)
    z1, z2, z3, z4 = z
    total = np.abs(z1) ** 2 + np.abs(z2) ** 2 + np.abs(z3) ** 2 + np.abs(z4) ** 2
    if np.any(total == 0):
        raise DegenerateInputError("the zero vector is not a point of CP^3")
    A = 2 * (np.conj(z1) * z3 + z2 * np.conj(z4))
    B = 2 * (np.conj(z1) * z4 - z2 * np.conj(z3))
    C = np.abs(z1) ** 2 + np.abs(z2) ** 2 - np.abs(z3) ** 2 - np.abs(z4) ** 2
    return np.stack([A.real, A.imag, B.real, B.imag, C]) / total


def project_via_hopf(z) -> np.ndarray:
    """Same map as :func:`project`, computed through quaternion arithmetic."""
    z1, z2, z3, z4 = (complex(v) for v in z)
    q1 = Quaternion.from_complex_pair(z1, z2)
    q2 = Quaternion.from_complex_pair(z3, z4)
    n1, n2 = q1.norm2(), q2.norm2()
    if n1 + n2 == 0:
        raise DegenerateInputError("the zero vector is not a point of CP^3")
    top = (q1.conj() * q2) * 2.0
    return np.append(top.as_array(), n1 - n2) / (n1 + n2)


def project_curve(c: CurveCP3, z) -> np.ndarray:
    """pi(psi(z)); honours the conjugation flag of antiholomorphic curves."""
    return project(c.evaluate(z))


def antiholomorphic_lift(c: CurveCP3) -> CurveCP3:
    """The lift z -> [conj(f2), -conj(f1), conj(f4), -conj(f3)].

    Stored as the polynomial quadruple (f2, -f1, f4, -f3) with the
    conjugation flag toggled, so that evaluation returns the conjugate.
    """
    F = c.coeffs
    G = np.array([F[1], -F[0], F[3], -F[2]])
    return CurveCP3(G, antiholomorphic=not c.antiholomorphic, validate=False)
