"""Antipodal invariance of curves and the even-degree obstruction.

A curve factors through RP^2 exactly when, for a unit complex beta,

    f2 = beta C(f1),  f4 = beta C(f3),  f1 = -beta C(f2),  f3 = -beta C(f4)

with C the conjugate-antipodal coefficient map of :mod:`twistor.cpoly`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .cpoly import CPoly, conj_antipodal
from .curve import CurveCP3, is_linearly_full
from .errors import ConstructionError, PreconditionError
from .groups import MoebiusMap, act_post, act_pre, random_sp2, random_su2

INVARIANCE_TOL = 1e-8


@dataclass(frozen=True)
class InvarianceWitness:
    invariant: bool
    beta: complex | None
    residual: float
    identity_residuals: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)


def _pairs(F: np.ndarray):
    # (lhs, rhs) with lhs = beta * rhs expected for an invariant curve
    C = [conj_antipodal(CPoly(row)).coeffs for row in F]
    return [(F[1], C[0]), (F[3], C[2]), (F[0], -C[1]), (F[2], -C[3])]


def _fit_beta(pairs) -> complex:
    lhs = np.concatenate([p[0] for p in pairs])
    rhs = np.concatenate([p[1] for p in pairs])
    # seed from the largest entry, then least squares over every entry
    k = int(np.argmax(np.abs(rhs)))
    seed = lhs[k] / rhs[k]
    den = np.vdot(rhs, rhs).real
    return complex(np.vdot(rhs, lhs) / den) if den > 0 else seed


def invariance_check(c: CurveCP3, tol: float = INVARIANCE_TOL) -> InvarianceWitness:
    if not is_linearly_full(c):
        raise PreconditionError("invariance check needs a linearly full curve")
    F = c.coeffs / np.abs(c.coeffs).max()
    pairs = _pairs(F)
    beta = _fit_beta(pairs)
    res = tuple(float(np.abs(l - beta * r).max()) for l, r in pairs)
    residual = max(res)
    ok = residual <= tol and abs(abs(beta) - 1) <= 1e-10 + tol
    if ok:
        beta /= abs(beta)
    return InvarianceWitness(ok, beta if ok else None, residual, res)


def normalize_beta(c: CurveCP3, w: InvarianceWitness | None = None) -> tuple[MoebiusMap, CurveCP3]:
    """Rotate z -> lam z so that the invariance constant becomes 1.

    The rotation multiplies beta by lam^d, so lam = beta^(-1/d).
    """
    d = c.degree
    if d % 2 == 0:
        raise PreconditionError("even-degree curves are never invariant")
    if w is None:
        w = invariance_check(c)
    if not w.invariant:
        raise PreconditionError("curve is not antipodally invariant")
    lam = cmath.exp(-1j * cmath.phase(w.beta) / d)
    omega = MoebiusMap.rotation(lam)
    # drop the scalar s^-d carried by the SU2 matrix diag(s, 1/s); a scalar
    # tau would multiply beta by tau / conj(tau)
    rotated = act_pre(omega, c)
    return omega, rotated.with_coeffs(rotated.coeffs * omega.matrix[0, 0] ** d)


def make_invariant(f1, f3, beta: complex, d: int) -> CurveCP3:
    """The curve [f1, beta C(f1), f3, beta C(f3)] at formal degree d.

    Invariance holds by construction; horizontality does not and must be
    checked by the caller.
    """
    if d % 2 == 0:
        raise ConstructionError("invariant curves have odd degree")
    if abs(abs(beta) - 1) > 1e-10:
        raise ConstructionError("beta must have modulus 1")
    p1 = (f1 if isinstance(f1, CPoly) else CPoly(f1)).with_formal_degree(d)
    p3 = (f3 if isinstance(f3, CPoly) else CPoly(f3)).with_formal_degree(d)
    F = np.array([p1.coeffs, beta * conj_antipodal(p1).coeffs,
                  p3.coeffs, beta * conj_antipodal(p3).coeffs])
    c = CurveCP3(F)
    if not is_linearly_full(c):
        raise ConstructionError("resulting curve is not linearly full")
    return c


@dataclass(frozen=True)
class ObstructionTrial:
    residual: float
    beta_forward: complex
    beta_backward: complex

    @property
    def chained_beta_product(self) -> complex:
        """beta_backward * conj(beta_forward).

        A single beta solving both halves would make this |beta|^2, yet for
        even n the chain forces it to equal -1.
        """
        return self.beta_backward * self.beta_forward.conjugate()


@dataclass(frozen=True)
class ObstructionReport:
    degree: int
    trials: tuple[ObstructionTrial, ...]
    implied_beta_modulus_sq: float
    min_residual: float

    @property
    def confirmed(self) -> bool:
        return all(t.residual > 0.1 for t in self.trials)


def _even_seed(n: int, rng: np.random.Generator) -> CurveCP3:
    from .canonical import bryant_canonical, psi4_a

    if n == 4:
        return psi4_a(float(rng.uniform(-2, 2)))
    return bryant_canonical(1, n - 2)


def even_degree_obstruction_demo(n: int, trials: int = 10, rng=None, seed: CurveCP3 | None = None) -> ObstructionReport:
    """Show numerically that no even-degree curve passes the invariance test.

    Chaining f2 = beta C(f1) into f1 = -beta C(f2) gives
    f1 = -|beta|^2 (-1)^n f1, so for even n a nonzero leading coefficient
    would need |beta|^2 = -1.  Each trial scrambles a horizontal seed by
    random Sp2 and SU2 elements and records the best-fit residual together
    with the two one-sided beta fits.
    """
    if n % 2 or n < 4:
        raise PreconditionError("obstruction demo needs an even degree n >= 4")
    rng = np.random.default_rng() if rng is None else rng
    out = []
    for _ in range(trials):
        base = seed if seed is not None else _even_seed(n, rng)
        c = act_post(random_sp2(rng), act_pre(random_su2(rng), base))
        F = c.coeffs / np.abs(c.coeffs).max()
        pairs = _pairs(F)
        w = invariance_check(c)
        out.append(ObstructionTrial(w.residual, _fit_beta(pairs[:2]), _fit_beta(pairs[2:])))
    implied = -((-1.0) ** n)
    return ObstructionReport(n, tuple(out), implied, min(t.residual for t in out))
