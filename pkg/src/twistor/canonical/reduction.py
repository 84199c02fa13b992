"""Reduction of curves to canonical form by group actions.

Every reduction runs a small pipeline that applies post-actions
(Sp(2) or Sp(2,C)), pre-actions (Moebius maps) and projective rescalings
to a working copy of the curve while accumulating the group elements, so
that the result satisfies

    act_post(result.g, act_pre(result.omega, input)) ~ result.canonical

up to a scalar.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..curve import (INF, CurveCP3, is_horizontal, is_infinite, is_linearly_full,
                     projective_distance, singularity_report)
from ..errors import ConsistencyError, PivotError, PreconditionError
from ..groups import (GroupElement, MoebiusMap, act_post, act_pre, diagonal_element,
                      sp2_sending_to_e1, stabilizer_element, su2_moving_to_zero, u2_block)
from ..invariance import invariance_check, normalize_beta
from .families import SQ2, SQ3, psi3, psi4_a, psi5_eta

__all__ = [
    "ReductionResult", "Degree5ReducedParams", "reduce_to_sparse_form",
    "reduce_degree3_invariant", "reduce_degree5_invariant",
    "reduce_degree3_full", "reduce_degree4_full", "choose_singularity",
    "REDUCTION_CLASSES", "reduce",
]

PATTERN_TOL = 1e-8
PIVOT_TOL = 1e-9
EQ61_TOL = 1e-6

# (row, column) entries forced to vanish once column 0 is (*, 0, 0, 0)
SPARSE_ZEROS = ((1, 0), (1, 1), (1, 2), (2, 0), (3, 0), (3, 1))


def _edge_zeros(d: int):
    # extra zeros of an antipodally invariant curve in sparse form
    return ((0, d), (0, d - 1), (0, d - 2), (2, d), (2, d - 1), (3, d))


@dataclass(frozen=True)
class ReductionResult:
    g: GroupElement
    omega: MoebiusMap
    canonical: CurveCP3
    params: dict = field(default_factory=dict)
    residual: float = 0.0
    reduced: CurveCP3 | None = None


@dataclass(frozen=True)
class Degree5ReducedParams:
    """Entries q = F[0,1], p = F[0,2], mu = F[2,1], eta = F[2,2], nu = F[2,3]
    of a sparse invariant degree-5 matrix with beta = 1."""

    q: complex
    p: complex
    mu: complex
    eta: complex
    nu: complex

    def residuals(self) -> tuple[complex, complex, float]:
        q, p, mu, eta, nu = self.q, self.p, self.mu, self.eta, self.nu
        c = np.conj
        return (-3 * p + nu * c(mu),
                2 * q - p * c(q) - eta * c(mu),
                (-3 * abs(q) ** 2 + abs(p) ** 2 + 5 - 3 * abs(mu) ** 2
                 + abs(eta) ** 2 + abs(nu) ** 2))

    def max_residual(self) -> float:
        return float(max(abs(v) for v in self.residuals()))


class _Pipeline:
    """Working curve together with the accumulated post and pre actions."""

    def __init__(self, c: CurveCP3):
        self.source = c
        self.F = np.array(c.coeffs, dtype=complex)
        self.G = np.eye(4, dtype=complex)
        self.omega = MoebiusMap.identity()

    @property
    def curve(self) -> CurveCP3:
        return CurveCP3(self.F, validate=False)

    def post(self, g: GroupElement):
        self.F = g.matrix @ self.F
        self.G = g.matrix @ self.G

    def pre(self, w: MoebiusMap):
        self.F = act_pre(w, self.curve).coeffs.copy()
        self.omega = self.omega.compose(w)

    def rotate(self, lam: complex):
        """z -> lam z as a pure column scaling F[:, j] *= lam^j."""
        w = MoebiusMap.rotation(lam)
        self.pre(w)
        self.scale(w.matrix[0, 0] ** (self.F.shape[1] - 1))

    def scale(self, tau: complex):
        self.F = self.F * tau

    def entry_scale(self) -> float:
        return float(np.abs(self.F).max())

    def finish(self, canonical: CurveCP3, params: dict) -> ReductionResult:
        g = GroupElement(self.G, tol=1e-7)
        reduced = act_post(g, act_pre(self.omega, self.source))
        res = projective_distance(reduced, canonical)
        return ReductionResult(g, self.omega, canonical, params, res, reduced)


def _require_class(c: CurveCP3, degree: int | None = None, invariant: bool = False):
    if degree is not None and c.degree != degree:
        raise PreconditionError(f"expected a curve of degree {degree}, got degree {c.degree}")
    if not is_linearly_full(c):
        raise PreconditionError("curve is not linearly full")
    if not is_horizontal(c, 1e-8):
        raise PreconditionError("curve is not horizontal")
    if invariant and not invariance_check(c).invariant:
        raise PreconditionError("curve is not antipodally invariant")


def _sparse_steps(P: _Pipeline, invariant: bool):
    P.post(sp2_sending_to_e1(P.F[:, 0]))
    x, y = P.F[2, 1], P.F[3, 1]
    n = math.hypot(abs(x), abs(y))
    if n > 0:
        P.post(u2_block(np.conj(x) / n, -y / n))
    _assert_zeros(P, SPARSE_ZEROS, "sparse pattern")
    if invariant:
        _assert_zeros(P, _edge_zeros(P.F.shape[1] - 1), "invariant edge pattern")
    for i, j in SPARSE_ZEROS + (_edge_zeros(P.F.shape[1] - 1) if invariant else ()):
        P.F[i, j] = 0.0


def _assert_zeros(P: _Pipeline, entries, what: str):
    scale = P.entry_scale()
    worst = max(abs(P.F[i, j]) for i, j in entries)
    if worst > PATTERN_TOL * scale:
        raise ConsistencyError(f"{what} violated: entry of size {worst / scale:.2e} should vanish")


def reduce_to_sparse_form(c: CurveCP3) -> ReductionResult:
    """Sp2 element bringing the coefficient matrix to the sparse pattern.

    Column 0 becomes (*, 0, 0, 0); horizontality then forces zeros at
    row 1 columns 0..2, row 2 column 0 and row 3 columns 0..1.  For an
    invariant curve the mirrored entries at the right edge vanish too.
    """
    _require_class(c)
    invariant = invariance_check(c).invariant
    P = _Pipeline(c)
    _sparse_steps(P, invariant)
    sparse = P.curve
    r = P.finish(sparse, {"invariant": invariant})
    return r


def _normalize_leading(P: _Pipeline):
    P.scale(1 / P.F[0, 0])


def _normalize_beta(P: _Pipeline):
    w, _ = normalize_beta(P.curve)
    P.rotate(w.apply(1.0))


def reduce_degree3_invariant(c: CurveCP3) -> ReductionResult:
    """Reduce an invariant degree-3 curve to psi3 using Sp2 and SU2 only."""
    _require_class(c, 3, invariant=True)
    P = _Pipeline(c)
    _sparse_steps(P, True)
    _normalize_leading(P)
    _normalize_beta(P)
    # now [1, z^3, a z, -conj(a) z^2]
    a = P.F[2, 1]
    P.rotate(-1)
    P.post(diagonal_element(1, -cmath.exp(-1j * cmath.phase(a))))
    return P.finish(psi3(), {"abs_a": abs(a)})


def choose_singularity(points) -> complex:
    """Deterministic choice: largest modulus, then largest argument; INF last resort."""
    finite = [p for p in points if not is_infinite(p)]
    if not finite:
        if any(is_infinite(p) for p in points):
            return INF
        raise ConsistencyError("no higher singularity found")
    return max(finite, key=lambda z: (round(abs(z), 9), cmath.phase(z)))


def _singular_points(c: CurveCP3) -> list:
    return [p for p, _ in singularity_report(c).points]


def _degree5_from_point(c: CurveCP3, point) -> tuple[_Pipeline, Degree5ReducedParams, float]:
    P = _Pipeline(c)
    P.pre(su2_moving_to_zero(point).inverse())
    _sparse_steps(P, True)
    _normalize_leading(P)
    _normalize_beta(P)
    F = P.F
    red = Degree5ReducedParams(F[0, 1], F[0, 2], F[2, 1], F[2, 2], F[2, 3])
    if red.max_residual() > EQ61_TOL:
        raise ConsistencyError(f"reduced degree-5 system violated (residual {red.max_residual():.2e})")
    q = F[0, 1]
    lam = cmath.exp(-1j * cmath.phase(q)) if abs(q) > 1e-12 else 1.0
    P.rotate(lam)
    P.scale(cmath.exp(-2.5j * cmath.phase(lam)))
    x1 = 1 / P.F[0, 0]
    mu = P.F[2, 1]
    P.post(diagonal_element(x1, cmath.exp(-1j * cmath.phase(mu))))
    eta = P.F[2, 2].real
    if eta < 0:
        # psi5_eta(-eta) ~ psi5_eta(eta) via z -> -z and diag(i, -i, -i, i)
        P.rotate(-1)
        P.post(diagonal_element(1j, -1j))
        eta = -eta
    return P, red, eta


def reduce_degree5_invariant(c: CurveCP3) -> ReductionResult:
    """Reduce an invariant degree-5 curve to psi5_eta(eta) with eta >= 0.

    A singular point is rotated to 0.  The value of eta depends on which
    point is chosen; ``params["candidates"]`` lists the value reached from
    every singular point.
    """
    _require_class(c, 5, invariant=True)
    points = _singular_points(c)
    chosen = choose_singularity(points)
    P, red, eta = _degree5_from_point(c, chosen)
    candidates = {}
    for p in points:
        try:
            candidates[p] = _degree5_from_point(c, p)[2]
        except ConsistencyError:
            continue
    params = {"eta": eta, "point": chosen, "reduced": red, "candidates": candidates}
    return P.finish(psi5_eta(eta), params)


def _pivot(P: _Pipeline, i: int, j: int, name: str) -> complex:
    v = P.F[i, j]
    if abs(v) <= PIVOT_TOL * P.entry_scale():
        raise PivotError(name, v)
    return v


def _full_pipeline(P: _Pipeline):
    """Stabilizer eliminations followed by the diagonal normalization.

    Ends with [[x0, ..., 0], [0, ..., -1], [0, S, ...], [0, ..., S, 0]].
    """
    F = P.F
    d = F.shape[1] - 1
    D = _pivot(P, 1, d, "d")
    t = F[3, d]
    P.post(stabilizer_element(1, 0, 1, 0, -t, 1 / D, 0, 0, D))
    q = P.F[2, d]
    D = P.F[1, d]
    P.post(stabilizer_element(1, 0, 1, -q, 0, D, 0, 0, 1 / D))
    s = _pivot(P, 3, d - 1, "s")
    p = P.F[2, d - 1]
    P.post(stabilizer_element(1, 0, 1, 0, 0, s, -p, 0, 1 / s))
    D = P.F[1, d]
    c = P.F[0, d]
    P.post(stabilizer_element(D, -c, 1 / D, 0, 0, 1, 0, 0, 1))
    x0 = P.F[0, 0]
    y = P.F[1, d]
    r = _pivot(P, 2, 1, "r")
    s = P.F[3, d - 1]
    kappa = cmath.sqrt(-1 / (x0 * y))
    v = cmath.sqrt(s / r)
    P.scale(kappa)
    P.post(diagonal_element(1 / (kappa * x0), v))
    S = P.F[3, d - 1]
    if S.real < 0:
        P.post(diagonal_element(1, -1))


def _with_retry(c: CurveCP3, run):
    # a vanishing pivot is a chart artefact when no point is pinned:
    # retry once after a fixed generic rotation of the sphere
    try:
        return run(c, MoebiusMap.identity())
    except PivotError:
        w = su2_moving_to_zero(complex(0.37, -0.61)).inverse()
        return run(c, w)


def reduce_degree3_full(c: CurveCP3) -> ReductionResult:
    """Reduce any linearly full horizontal degree-3 curve to psi3 with Sp(2,C) x PSL(2,C)."""
    _require_class(c, 3)

    def run(c, w):
        P = _Pipeline(c)
        P.pre(w)
        _sparse_steps(P, False)
        _full_pipeline(P)
        return P.finish(psi3(), {"S": P.F[3, 2] / P.F[0, 0]})

    return _with_retry(c, run)


def reduce_degree4_full(c: CurveCP3) -> ReductionResult:
    """Reduce a degree-4 curve to psi4_a(a) with a >= 0.

    The chosen singular point is rotated to 0 by SU2; every later step is
    a post-action or a rotation about the 0-infinity axis, so the other
    singular point w keeps its modulus and a = 2/|w|.
    """
    _require_class(c, 4)
    chosen = choose_singularity(_singular_points(c))
    P = _Pipeline(c)
    P.pre(su2_moving_to_zero(chosen).inverse())
    _sparse_steps(P, False)
    _normalize_leading(P)
    if abs(P.F[3, 2]) > PATTERN_TOL * P.entry_scale():
        # rl = 0 at a singular point; l != 0 forces r = 0 (a branch point)
        raise PivotError("r", P.F[2, 1])
    P.F[3, 2] = 0.0
    _full_pipeline(P)
    _normalize_leading(P)
    a = P.F[0, 1]
    lam = cmath.exp(-1j * cmath.phase(a)) if abs(a) > 1e-12 else 1.0
    P.rotate(lam)
    kappa = lam ** -2
    P.scale(kappa)
    P.post(diagonal_element(lam ** 2, lam))
    a_rec = P.F[0, 1].real
    return P.finish(psi4_a(a_rec), {"a": a_rec, "point": chosen, "S": P.F[2, 1] / SQ2})


REDUCTION_CLASSES = {
    "deg3-inv": reduce_degree3_invariant,
    "deg5-inv": reduce_degree5_invariant,
    "deg3-full": reduce_degree3_full,
    "deg4-full": reduce_degree4_full,
}


def reduce(c: CurveCP3, cls: str) -> ReductionResult:
    try:
        fn = REDUCTION_CLASSES[cls]
    except KeyError:
        raise PreconditionError(f"unknown reduction class {cls!r}") from None
    return fn(c)
