"""Polynomial curves in CP^3, horizontality, and higher singularities."""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cpoly import CPoly, coprime, derivative, roots, wronskian2
from .errors import ConstructionError, PreconditionError, ResolutionError

INF = complex(float("inf"), 0.0)

HORIZONTAL_TOL = 1e-10
SINGULARITY_GATE_TOL = 1e-8
FULLNESS_TOL = 1e-8
ORDER_ZERO_TOL = 1e-7


def is_infinite(p) -> bool:
    return p is None or cmath.isinf(complex(p))


class CurveCP3:
    """A quadruple of polynomials sharing a formal degree d.

    The coefficient matrix ``coeffs`` has shape (4, d+1) with entry (i, j)
    the coefficient of z^j in the i-th component.  ``antiholomorphic``
    marks curves whose value at z is the complex conjugate of the
    polynomial vector; only the projection to S^4 should see those.
    """

    __slots__ = ("_F", "antiholomorphic")

    def __init__(self, coeffs, *, antiholomorphic: bool = False, validate: bool = True):
        F = np.array(coeffs, dtype=complex)
        if F.ndim != 2 or F.shape[0] != 4 or F.shape[1] < 1:
            raise ConstructionError(f"coefficient matrix must be 4 x (d+1), got {F.shape}")
        if not np.all(np.isfinite(F)):
            raise ConstructionError("coefficients must be finite")
        F.flags.writeable = False
        self._F = F
        self.antiholomorphic = antiholomorphic
        if validate:
            self._validate()

    def _validate(self):
        F = self._F
        top = np.abs(F).max()
        if top == 0:
            raise ConstructionError("zero curve")
        if np.abs(F[:, -1]).max() <= 1e-12 * top:
            raise ConstructionError(f"no component reaches degree {self.degree}")
        if not coprime(self.polys):
            raise ConstructionError("components share a common zero (not in reduced form)")

    @classmethod
    def from_polys(cls, polys: Sequence, **kw) -> CurveCP3:
        ps = [p if isinstance(p, CPoly) else CPoly(p) for p in polys]
        if len(ps) != 4:
            raise ConstructionError("a curve in CP^3 needs four components")
        d = max(p.formal_degree for p in ps)
        return cls(np.array([p.with_formal_degree(d).coeffs for p in ps]), **kw)

    @property
    def coeffs(self) -> np.ndarray:
        return self._F

    @property
    def degree(self) -> int:
        return self._F.shape[1] - 1

    @property
    def polys(self) -> tuple[CPoly, CPoly, CPoly, CPoly]:
        return tuple(CPoly(row) for row in self._F)

    f1 = property(lambda self: CPoly(self._F[0]))
    f2 = property(lambda self: CPoly(self._F[1]))
    f3 = property(lambda self: CPoly(self._F[2]))
    f4 = property(lambda self: CPoly(self._F[3]))

    def evaluate(self, z):
        """Homogeneous coordinates at z; shape (4,) or (4, *z.shape)."""
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** np.arange(self.degree + 1)
        vals = np.moveaxis(powers @ self._F.T, -1, 0)
        return np.conj(vals) if self.antiholomorphic else vals

    def derivative_values(self, z):
        z = np.asarray(z, dtype=complex)
        d = self.degree
        dF = self._F[:, 1:] * np.arange(1, d + 1)
        if d == 0:
            return np.zeros((4,) + z.shape, dtype=complex)
        powers = z[..., None] ** np.arange(d)
        return np.moveaxis(powers @ dF.T, -1, 0)

    def reversed(self) -> CurveCP3:
        """The same curve in the chart w = 1/z."""
        return CurveCP3(self._F[:, ::-1], antiholomorphic=self.antiholomorphic,
                        validate=False)

    def with_coeffs(self, F, validate: bool = False) -> CurveCP3:
        return CurveCP3(F, antiholomorphic=self.antiholomorphic, validate=validate)

    def normalized(self) -> CurveCP3:
        F = self._F
        k = np.unravel_index(np.argmax(np.abs(F)), F.shape)
        return self.with_coeffs(F / F[k])

    def __repr__(self):
        tag = ", antiholomorphic" if self.antiholomorphic else ""
        return f"CurveCP3(d={self.degree}{tag}, coeffs={self._F.tolist()!r})"


def coefficient_matrix(c: CurveCP3) -> np.ndarray:
    return c.coeffs


def projective_distance(a: CurveCP3, b: CurveCP3) -> float:
    """Max entry difference after scaling both at b's largest entry to 1."""
    if a.degree != b.degree:
        return float("inf")
    A, B = a.coeffs, b.coeffs
    k = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if A[k] == 0:
        return float("inf")
    return float(np.max(np.abs(A / A[k] - B / B[k])))


def horizontality_residual(c: CurveCP3) -> CPoly:
    f1, f2, f3, f4 = c.polys
    return wronskian2(f1, f2) + wronskian2(f3, f4)


def horizontality_error(c: CurveCP3) -> float:
    """Largest residual coefficient relative to max|a|^2 * d."""
    scale = np.abs(c.coeffs).max() ** 2 * max(c.degree, 1)
    return float(np.abs(horizontality_residual(c).coeffs).max() / scale)


def is_horizontal(c: CurveCP3, tol: float = HORIZONTAL_TOL) -> bool:
    return horizontality_error(c) <= tol


def fullness_ratio(c: CurveCP3) -> float:
    s = np.linalg.svd(c.coeffs, compute_uv=False)
    if s.size < 4 or s[0] == 0:
        return 0.0
    return float(s[3] / s[0])


def is_linearly_full(c: CurveCP3, tol: float = FULLNESS_TOL) -> bool:
    if c.degree < 3:
        return False
    return fullness_ratio(c) > tol


def second_wronskian(c: CurveCP3) -> CPoly:
    """f1''f2' - f1'f2'' + f3''f4' - f3'f4'' with the top coefficient zeroed.

    No horizontality gate; the z^(2d-3) term cancels for any quadruple.
    """
    d1, d2, d3, d4 = (derivative(f) for f in c.polys)
    return wronskian2(d1, d2) + wronskian2(d3, d4)


def singularity_poly(c: CurveCP3, gate_tol: float = SINGULARITY_GATE_TOL) -> CPoly:
    """Polynomial whose finite zeros are the higher singularities.

    For a horizontal curve of degree d its three top formal coefficients
    (z^(2d-3), z^(2d-4), z^(2d-5)) cancel identically and are set to zero,
    leaving actual degree at most 2d-6.
    """
    if not is_horizontal(c, gate_tol):
        raise PreconditionError(
            f"singularity criterion needs a horizontal curve "
            f"(residual {horizontality_error(c):.2e})")
    w = np.array(second_wronskian(c).coeffs)
    d = c.degree
    lo = max(2 * d - 5, 0)
    w[lo:] = 0.0
    return CPoly(w)


# -- vanishing orders of wedge products -------------------------------------

def _det_poly(rows: list[list[np.ndarray]], cols: tuple[int, ...]) -> np.ndarray:
    # Laplace expansion along the first row; entries are coefficient arrays
    if len(rows) == 1:
        return rows[0][cols[0]]
    acc = None
    for k, col in enumerate(cols):
        minor = _det_poly(rows[1:], cols[:k] + cols[k + 1:])
        term = np.convolve(rows[0][col], minor)
        if k % 2:
            term = -term
        acc = term if acc is None else _padd(acc, term)
    return acc


def _padd(a, b):
    if a.size < b.size:
        a, b = b, a
    out = a.copy()
    out[:b.size] += b
    return out


def _order(c: np.ndarray, threshold: float) -> int | None:
    hits = np.nonzero(np.abs(c) >= threshold)[0]
    return int(hits[0]) if hits.size else None


def wedge_orders(polys: Sequence[CPoly], tol: float = ORDER_ZERO_TOL) -> tuple[int, int, int]:
    """Vanishing orders at z=0 of f^f', f^f'^f'' and f^f'^f''^f'''.

    A coefficient counts as zero below ``tol`` times the largest
    coefficient among all minors of the same size.
    """
    rows = [[np.asarray(p.coeffs) for p in polys]]
    for _ in range(3):
        rows.append([derivative(CPoly(a)).coeffs for a in rows[-1]])
    out = []
    for k in (2, 3, 4):
        minors = [_det_poly(rows[:k], cols) for cols in itertools.combinations(range(4), k)]
        scale = max(np.abs(m).max() for m in minors)
        if scale == 0:
            raise ResolutionError(f"wedge of {k} derivatives vanishes identically")
        orders = [_order(m, tol * scale) for m in minors]
        out.append(min(o for o in orders if o is not None))
    return tuple(out)


def unitary_chart(F: np.ndarray, p) -> np.ndarray:
    """Coefficients of the curve precomposed with a rotation sending 0 to p."""
    d = F.shape[1] - 1
    if is_infinite(p):
        a, b, c, e = 0.0, 1.0, -1.0, 0.0
    else:
        p = complex(p)
        n = (1 + abs(p) ** 2) ** 0.5
        a, b, c, e = 1 / n, p / n, -p.conjugate() / n, 1 / n
    num = [np.array([1.0 + 0j])]
    den = [np.array([1.0 + 0j])]
    for _ in range(d):
        num.append(np.convolve(num[-1], [b, a]))
        den.append(np.convolve(den[-1], [e, c]))
    T = np.array([np.convolve(num[j], den[d - j]) for j in range(d + 1)])
    return F @ T


def singularity_type_at(c: CurveCP3, p, tol: float = ORDER_ZERO_TOL) -> tuple[int, int, int]:
    """Ramification integers (r0, r1, r2) at a point p (complex or INF).

    Read off from the vanishing orders of the osculating wedges:
    ord(f^f') = r0, ord(f^f'^f'') = 2r0 + r1,
    ord(f^f'^f''^f''') = 3r0 + 2r1 + r2.
    Orders are taken at 0 after a unitary change of chart moving p to 0;
    a plain Taylor shift unbalances the coefficients when |p| is large.
    """
    if not is_linearly_full(c):
        raise PreconditionError("singularity type needs a linearly full curve")
    G = unitary_chart(c.coeffs, p)
    G = G / np.abs(G).max()
    o1, o2, o3 = wedge_orders([CPoly(row) for row in G], tol)
    cap = 3 * c.degree
    if max(o1, o2, o3) > cap:
        raise ResolutionError(f"vanishing order exceeds {cap}")
    r0 = o1
    r1 = o2 - 2 * r0
    r2 = o3 - 3 * r0 - 2 * r1
    if min(r0, r1, r2) < 0:
        raise ResolutionError(f"inconsistent wedge orders {(o1, o2, o3)}")
    return (r0, r1, r2)


@dataclass(frozen=True)
class SingularPoint:
    point: complex
    r0: int
    r1: int
    r2: int
    multiplicity: int = 0

    @property
    def type(self) -> tuple[int, int, int]:
        return (self.r0, self.r1, self.r2)


@dataclass(frozen=True)
class SingularityReport:
    degree: int
    finite_points: tuple[SingularPoint, ...]
    at_infinity: tuple[int, int, int]
    total_r0: int
    total_r1: int
    total_r2: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def count_ok(self) -> bool:
        return 2 * self.total_r0 + self.total_r1 == 2 * self.degree - 6

    @property
    def symmetric_ok(self) -> bool:
        pts = [p.type for p in self.finite_points] + [self.at_infinity]
        return all(t[0] == t[2] for t in pts)

    @property
    def points(self) -> list[tuple[complex, tuple[int, int, int]]]:
        """All singular points including INF when it carries a nonzero type."""
        out = [(p.point, p.type) for p in self.finite_points]
        if any(self.at_infinity):
            out.append((INF, self.at_infinity))
        return out

    def type_multiset(self) -> list[tuple[int, int, int]]:
        return sorted(t for _, t in self.points)


def singularity_report(c: CurveCP3) -> SingularityReport:
    poly = singularity_poly(c)
    d = c.degree
    notes = []
    finite = []
    if poly.actual_degree() < 0:
        raise ResolutionError("singularity polynomial vanishes identically")
    for z, mult in roots(poly) if poly.actual_degree() >= 1 else []:
        r = singularity_type_at(c, z)
        if 2 * r[0] + r[1] != mult:
            notes.append(f"root {z:.6g} has multiplicity {mult} but 2r0+r1={2 * r[0] + r[1]}")
        finite.append(SingularPoint(z, *r, multiplicity=mult))
    inf_type = singularity_type_at(c, INF)
    deficit = (2 * d - 6) - poly.actual_degree()
    if 2 * inf_type[0] + inf_type[1] != deficit:
        notes.append(f"degree deficit {deficit} disagrees with type at infinity {inf_type}")
    pts = [p.type for p in finite] + [inf_type]
    tot = [sum(t[k] for t in pts) for k in range(3)]
    if 2 * tot[0] + tot[1] != 2 * d - 6:
        notes.append(f"2r0+r1 = {2 * tot[0] + tot[1]} but 2d-6 = {2 * d - 6}")
    if any(t[0] != t[2] for t in pts):
        notes.append("r0 != r2 at some point")
    return SingularityReport(d, tuple(finite), inf_type, *tot, notes=tuple(notes))
