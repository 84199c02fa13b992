"""Induced metric, area quadrature and the bubbling experiment.

The pulled-back Fubini-Study density is computed from Pluecker
polynomials P_ij = f_i f_j' - f_j f_i' (Lagrange's identity):

    fs_density = 4 sum_{i<j} |P_ij|^2 / |f|^4

so no numerical differentiation is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .canonical.families import M_MIN, psi5_m, psi5_m_coefficients
from .curve import INF, CurveCP3, is_linearly_full
from .errors import DomainError, PreconditionError, QuadratureAccuracyError
from .groups import MoebiusMap, act_pre, su2_moving_to_zero

AREA_TOL = 1e-9
_CHUNK = 1 << 16
_PAIRS = tuple(combinations(range(4), 2))


@dataclass(frozen=True)
class AreaResult:
    value: float
    estimated_error: float
    nodes: int


@dataclass(frozen=True)
class ConformalSample:
    z: complex
    h: float


def pluecker_coefficients(c: CurveCP3) -> np.ndarray:
    """6 x (2d) array of coefficients of f_i f_j' - f_j f_i', i < j."""
    F = c.coeffs
    d = c.degree
    dF = F[:, 1:] * np.arange(1, d + 1) if d > 0 else np.zeros((4, 1), complex)
    out = np.zeros((6, max(2 * d, 1)), dtype=complex)
    for k, (i, j) in enumerate(_PAIRS):
        w = np.convolve(F[i], dF[j]) - np.convolve(F[j], dF[i])
        out[k, :w.size] = w
    return out


def _horner(C: np.ndarray, z: np.ndarray) -> np.ndarray:
    # rows of C are polynomials (lowest order first); returns (rows, *z.shape)
    acc = np.zeros((C.shape[0],) + z.shape, dtype=complex)
    for k in range(C.shape[1] - 1, -1, -1):
        acc = acc * z + C[:, k].reshape((-1,) + (1,) * z.ndim)
    return acc


class _Density:
    """Vectorized fs_density evaluator for one curve, chart-switching at |z| = 1."""

    def __init__(self, c: CurveCP3):
        self.d = c.degree
        self.F = c.coeffs
        self.P = pluecker_coefficients(c)
        self.Fr = c.coeffs[:, ::-1]
        self.Pr = pluecker_coefficients(c.reversed())

    @staticmethod
    def _raw(F, P, z):
        f2 = np.sum(np.abs(_horner(F, z)) ** 2, axis=0)
        p2 = np.sum(np.abs(_horner(P, z)) ** 2, axis=0)
        return 4 * p2 / f2 ** 2

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape)
        inner = np.abs(z) <= 1
        out[inner] = self._raw(self.F, self.P, z[inner])
        zo = z[~inner]
        if zo.size:
            out[~inner] = self._raw(self.Fr, self.Pr, 1 / zo) / np.abs(zo) ** 4
        return out


def fs_density(c: CurveCP3, z):
    """Pulled-back Fubini-Study density 4(|f|^2|f'|^2 - |<f,f'>|^2)/|f|^4."""
    v = _Density(c)(z)
    return float(v) if v.ndim == 0 else v


def conformal_factor(c: CurveCP3, z):
    """Ratio of the induced metric to the round metric 4|dz|^2/(1+|z|^2)^2."""
    z = np.asarray(z, dtype=complex)
    v = _Density(c)(z) * (1 + np.abs(z) ** 2) ** 2 / 4
    return float(v) if v.ndim == 0 else v


# -- quadrature ------------------------------------------------------------

def _radial_panels(r_in: float, r_out: float, levels: int) -> np.ndarray:
    """Panel edges graded geometrically toward r_in (or dyadically toward 0)."""
    if r_in > 0:
        k = max(1, math.ceil(math.log2(r_out / r_in)))
        edges = r_in * (r_out / r_in) ** (np.arange(k + 1) / k)
    else:
        edges = np.concatenate([[0.0], r_out * 2.0 ** -np.arange(levels, -1, -1)])
    return edges


def _polar_rule(edges: np.ndarray, n_r: int, n_phi: int):
    x, w = np.polynomial.legendre.leggauss(n_r)
    a, b = edges[:-1, None], edges[1:, None]
    r = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
    wr = (0.5 * (b - a) * w).ravel()
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    return r, wr, phi


def polar_integral(func, r_in: float, r_out: float, *, tol: float = AREA_TOL,
                   levels: int = 30, n_r: int = 8, n_phi: int = 32,
                   max_n_r: int = 128, max_n_phi: int = 2048) -> AreaResult:
    """Integral of func(z) dx dy over an annulus r_in <= |z| <= r_out.

    Gauss-Legendre on graded radial panels times the periodic trapezoid
    rule in angle.  Both orders are doubled until successive results agree
    to ``tol`` relative.
    """
    edges = _radial_panels(r_in, r_out, levels)

    def rule(nr, nphi):
        r, wr, phi = _polar_rule(edges, nr, nphi)
        e = np.exp(1j * phi)[None, :]
        total = 0.0
        step = max(1, _CHUNK // nphi)
        for k in range(0, r.size, step):
            rk = r[k:k + step, None]
            vals = func(rk * e)
            total += float(np.sum(vals.sum(axis=1) * wr[k:k + step] * r[k:k + step]))
        return total * 2 * np.pi / nphi, r.size * nphi

    prev, _ = rule(n_r, n_phi)
    while True:
        n_r, n_phi = 2 * n_r, 2 * n_phi
        cur, nodes = rule(n_r, n_phi)
        err = abs(cur - prev)
        if err <= tol * max(abs(cur), 1e-300):
            return AreaResult(cur, err, nodes)
        if n_r >= max_n_r or n_phi >= max_n_phi:
            raise QuadratureAccuracyError(prev, cur, tol)
        prev = cur


REGIONS = ("sphere", "unit_disk")


def induced_area(c: CurveCP3, region: str = "sphere", tol: float = AREA_TOL) -> AreaResult:
    """Area of the sphere (or the unit disk |z| <= 1) in the induced metric."""
    if region in ("disk", "unit_disk"):
        region = "unit_disk"
    if region not in REGIONS:
        raise DomainError(f"unknown region {region!r}; expected one of {REGIONS}")
    if not is_linearly_full(c):
        raise PreconditionError("induced area needs a linearly full curve")
    if region == "unit_disk":
        return _disk_area(c, tol)
    # A rotation of the sphere is an isometry, so it cannot distort the
    # integrand the way a disk automorphism does.  Put the worst
    # concentration at 0; for invariant curves its antipode lands at infinity.
    c = act_pre(su2_moving_to_zero(_sphere_peak(c)).inverse(), c)
    inner = polar_integral(_Density(c), 0.0, 1.0, tol=tol)
    outer = polar_integral(_Density(c.reversed()), 0.0, 1.0, tol=tol)
    return AreaResult(inner.value + outer.value,
                      inner.estimated_error + outer.estimated_error,
                      inner.nodes + outer.nodes)


def density_peak(c: CurveCP3, n_r: int = 48, n_phi: int = 128) -> complex:
    """Approximate location of the largest density value in the unit disk."""
    r = np.concatenate([[0.0], np.geomspace(1e-6, 1.0, n_r)])
    z = r[:, None] * np.exp(2j * np.pi * np.arange(n_phi) / n_phi)[None, :]
    vals = _Density(c)(z)
    return complex(z.ravel()[int(np.argmax(vals))])


def _peak_grid(n_r: int = 48, n_phi: int = 128) -> np.ndarray:
    r = np.concatenate([[0.0], np.geomspace(1e-6, 1.0, n_r)])
    return (r[:, None] * np.exp(2j * np.pi * np.arange(n_phi) / n_phi)[None, :]).ravel()


def _sphere_peak(c: CurveCP3) -> complex:
    """Grid maximum of the conformal factor over both hemispheres."""
    z = _peak_grid()
    h_in, h_out = conformal_factor(c, z), conformal_factor(c.reversed(), z)
    k_in, k_out = int(np.argmax(h_in)), int(np.argmax(h_out))
    if h_in[k_in] >= h_out[k_out]:
        return complex(z[k_in])
    w = z[k_out]
    return INF if w == 0 else complex(1 / w)


def _disk_area(c: CurveCP3, tol: float) -> AreaResult:
    # The density is a 2-form, so precomposing with the disk automorphism
    # w -> (w + a)/(1 + conj(a) w) leaves the disk area unchanged while
    # moving a concentration point a to the centre of the graded mesh.
    a = density_peak(c)
    if 0 < abs(a) < 0.9:
        c = act_pre(MoebiusMap(np.array([[1, a], [np.conj(a), 1]])), c)
    return polar_integral(_Density(c), 0.0, 1.0, tol=tol)


def round_area(eps: float) -> float:
    """Round-metric area of the disk |z| < eps: 4 pi eps^2 / (1 + eps^2)."""
    return 4 * math.pi * eps * eps / (1 + eps * eps)


# -- the real-singularity family and its bubble ----------------------------

def w_m(m: float, r, phi):
    """2 p r^2 cos 2phi + r^4 + (m^2 - 3) r^2 + 1, the quotient |f|^2/(1+r^2)^3."""
    _, p = psi5_m_coefficients(m)
    r = np.asarray(r, dtype=float)
    v = 2 * p * r ** 2 * np.cos(2 * np.asarray(phi)) + r ** 4 + (m * m - 3) * r ** 2 + 1
    return float(v) if np.ndim(v) == 0 else v


def annulus_bound(m: float) -> float:
    """4 pi / (m^2 - 2p - 2)."""
    _, p = psi5_m_coefficients(m)
    return 4 * math.pi / (m * m - 2 * p - 2)


def annulus_mass(m: float, tol: float = AREA_TOL) -> AreaResult:
    """Integral of (h - 3) against the round area form over 1/m <= |z| <= 1."""
    if not m >= 2:
        raise PreconditionError(f"annulus mass needs m >= 2 so that 1/m < 1 (got {m})")
    dens = _Density(psi5_m(m))

    def excess(z):
        return dens(z) - 12 / (1 + np.abs(z) ** 2) ** 2

    return polar_integral(excess, 1 / m, 1.0, tol=tol)


def bubble_profile(m: float, eps: float, tol: float = AREA_TOL) -> AreaResult:
    """Induced area of the disk |z| < eps for psi5_m(m)."""
    if not 0 < eps <= 1:
        raise DomainError("eps must lie in (0, 1]")
    if abs(m) < M_MIN * (1 - 1e-15):
        raise DomainError(f"|m| must be at least sqrt(5/3), got {m}")
    return polar_integral(_Density(psi5_m(m)), 0.0, eps, tol=tol)


def bubble_limit(eps: float) -> float:
    """Weak-limit prediction 4 pi + 3 A(eps) for the mass inside |z| < eps."""
    return 4 * math.pi + 3 * round_area(eps)
