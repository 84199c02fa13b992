"""Constructors for the canonical curve families of degrees 3 to 6."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..curve import CurveCP3
from ..errors import ConstructionError, DegenerationWarning, DomainError

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)
M_MIN = math.sqrt(5.0 / 3.0)
CONSTRAINT_TOL = 1e-10

__all__ = ["SQ2", "SQ3", "M_MIN", "psi3", "psi5_eta", "psi5_eta_coefficients", "psi5_m", "psi5_m_coefficients", "psi5_m_limit", "psi4_a", "psi5_1", "psi5_2", "psi5_0", "bryant_canonical", "Psi5GeneralParams", "PSI5_0_PARAMS", "psi5_general"]


def _curve(rows, **kw) -> CurveCP3:
    d = max(len(r) for r in rows) - 1
    F = np.zeros((4, d + 1), dtype=complex)
    for i, r in enumerate(rows):
        F[i, :len(r)] = r
    return CurveCP3(F, **kw)


def psi3() -> CurveCP3:
    """[1, -z^3, sqrt3 z, sqrt3 z^2]: the unique degree-3 class up to symmetry."""
    return _curve([[1], [0, 0, 0, -1], [0, SQ3], [0, 0, SQ3]])


def psi5_eta_coefficients(eta: float) -> tuple[float, float]:
    """(q, mu) for the invariant degree-5 family."""
    k = math.sqrt((eta * eta + 5) / (eta * eta + 4))
    return eta / SQ3 * k, 2 / SQ3 * k


def psi5_eta(eta: float) -> CurveCP3:
    """[1 + qz, -q z^4 + z^5, mu z + eta z^2, eta z^3 - mu z^4] with eta real."""
    eta = float(eta)
    if not math.isfinite(eta):
        raise DomainError("eta must be finite")
    q, mu = psi5_eta_coefficients(eta)
    return _curve([[1, q], [0, 0, 0, 0, -q, 1], [0, mu, eta], [0, 0, 0, eta, -mu]])


def psi5_m_coefficients(m: float) -> tuple[float, float]:
    """(n, p) for the real-singularity family; requires |m| >= sqrt(5/3)."""
    m = float(m)
    rad = (3 * m * m - 5) / (m * m + 9)
    if rad < 0:
        # allow float round-off at the junction m = sqrt(5/3)
        if rad > -1e-14:
            rad = 0.0
        else:
            raise DomainError(f"|m| must be at least sqrt(5/3), got {m}")
    n = 3 * math.sqrt(rad)
    return n, n * m / 3


def psi5_m(m: float) -> CurveCP3:
    """[1 + p z^2, p z^3 + z^5, m z + n z^3, -n z^2 - m z^4]."""
    n, p = psi5_m_coefficients(m)
    return _curve([[1, 0, p], [0, 0, 0, p, 0, 1], [0, m, 0, n], [0, 0, -n, 0, -m]])


def psi5_m_limit() -> CurveCP3:
    """The degree-3 curve [z, z^2, 1/sqrt3, -z^3/sqrt3] reached as m -> infinity."""
    return _curve([[0, 1], [0, 0, 1], [1 / SQ3], [0, 0, 0, -1 / SQ3]])


def psi4_a(a: float) -> CurveCP3:
    """[1 + az, -z^4, sqrt2 z (1 + 3az/2), sqrt2 z^3]."""
    a = float(a)
    return _curve([[1, a], [0, 0, 0, 0, -1], [0, SQ2, 1.5 * SQ2 * a], [0, 0, 0, SQ2]])


def psi5_1() -> CurveCP3:
    return _curve([[1], [0, 0, 0, 0, 0, 1], [0, 0, 2], [0, 0, 0, -2.5]])


def psi5_2() -> CurveCP3:
    return _curve([[1], [0, 0, 0, 0, 0, 1], [0, 1], [0, 0, 0, 0, -5 / 3]])


def bryant_canonical(k1: int, k2: int) -> CurveCP3:
    """[1, k2 z^d, -d z^k1, z^(k1+k2)] with d = 2 k1 + k2."""
    if int(k1) != k1 or int(k2) != k2 or k1 < 1 or k2 < 1:
        raise DomainError("k1 and k2 must be positive integers")
    k1, k2 = int(k1), int(k2)
    d = 2 * k1 + k2
    F = np.zeros((4, d + 1), dtype=complex)
    F[0, 0] = 1
    F[1, d] = k2
    F[2, k1] = -d
    F[3, k1 + k2] = 1
    return CurveCP3(F)


@dataclass(frozen=True)
class Psi5GeneralParams:
    """Parameters of [1 + az, (h + z) z^4, (r + lz) z, (m + sz) z^3]."""

    a: complex
    h: complex
    r: complex
    l: complex
    m: complex
    s: complex

    def residuals(self) -> tuple[complex, complex, complex]:
        a, h, r, l, m, s = self.astuple()
        return (2 * a + l * s, 5 + 3 * a * h + l * m + 3 * r * s, 2 * h + r * m)

    def astuple(self) -> tuple[complex, ...]:
        return (self.a, self.h, self.r, self.l, self.m, self.s)

    def __post_init__(self):
        for name in "ahrlms":
            object.__setattr__(self, name, complex(getattr(self, name)))
        scale = max(1.0, max(abs(v) for v in self.astuple()) ** 2)
        bad = max(abs(v) for v in self.residuals())
        if bad > CONSTRAINT_TOL * scale:
            raise ConstructionError(f"degree-5 constraints violated (residual {bad:.3e})")

    def on_degeneration_locus(self, tol: float = 1e-9) -> bool:
        """ah = 1, rs = lm = -2, hl = r: two singularities merge and the degree drops."""
        a, h, r, l, m, s = self.astuple()
        return (abs(a * h - 1) <= tol and abs(r * s + 2) <= tol
                and abs(l * m + 2) <= tol and abs(h * l - r) <= tol)


PSI5_0_PARAMS = dict(a=1, h=2, r=1, l=2, m=-4, s=-1)


def psi5_general(p: Psi5GeneralParams) -> CurveCP3:
    if p.on_degeneration_locus():
        warnings.warn("parameters lie on the degeneration locus; the curve has degree 4",
                      DegenerationWarning, stacklevel=2)
        F = np.zeros((4, 6), dtype=complex)
        F[0, :2] = [1, p.a]
        F[1, 4:] = [p.h, 1]
        F[2, 1:3] = [p.r, p.l]
        F[3, 3:5] = [p.m, p.s]
        return CurveCP3(F, validate=False)
    return _curve([[1, p.a], [0, 0, 0, 0, p.h, 1], [0, p.r, p.l], [0, 0, 0, p.m, p.s]])


def psi5_0() -> CurveCP3:
    """[1 + z, (2 + z) z^4, (1 + 2z) z, -(4 + z) z^3]."""
    return psi5_general(Psi5GeneralParams(**PSI5_0_PARAMS))
