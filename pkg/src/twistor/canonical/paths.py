"""Continuous families joining canonical curves.

``gamma_path`` runs through the invariant degree-5 family and ends at the
degree-3 curve, where one bubble of area 4 pi splits off.

``deformation_path`` joins degree-5 curves of the general family to the
base point ``psi5_0``.  Every path keeps the three parameter constraints
exactly, so each curve along it is horizontal.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np

from ..curve import CurveCP3
from ..errors import DegenerationWarning, DomainError, PreconditionError
from ..groups import GroupElement, diagonal_element
from .families import Psi5GeneralParams, psi3, psi5_1, psi5_eta, psi5_general

PATH_CASES = ("psi1", "psi2", "case1", "case2", "case3")
HYPOTHESIS_TOL = 1e-9
DETOUR_RADIUS = 0.5

__all__ = ["PATH_CASES", "gamma_path", "deformation_params", "deformation_path", "terminal_element", "path_endpoint_target"]


def gamma_path(t: float) -> CurveCP3:
    """psi5_eta(tan(pi t / 2)) for t < 1 and psi3 at t = 1."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError("gamma_path is defined for t in [0, 1]")
    if t == 1.0:
        return psi3()
    return psi5_eta(math.tan(math.pi * t / 2))


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError("path parameter must lie in [0, 1]")
    return t


def _psi1_params(t: float) -> Psi5GeneralParams:
    k = 1 / (4 - 3 * t * t)
    return Psi5GeneralParams(a=t, h=t * (1 + k), r=t, l=2, m=-2 - 2 * k, s=-t)


def _psi2_params(t: float) -> Psi5GeneralParams:
    # lm = 4(e^{i pi t} - 1) and rs = -(e^{-i pi t} + 4)/3 keep
    # (lm + 4)(3rs + 4) = -4, the constraint after eliminating a and h
    e = cmath.exp(1j * math.pi * t)
    l = 2 * math.sqrt(t)
    m = 2 * (e - 1) / math.sqrt(t) if t > 0 else 0.0
    s = (-1 / e - 4) / 3
    return Psi5GeneralParams(a=-l * s / 2, h=-m / 2, r=1, l=l, m=m, s=s)


def _require(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def _case_params(case: str, t: float, p: Psi5GeneralParams) -> Psi5GeneralParams:
    a, h, r, l, m, s = p.astuple()
    u = 1 - t
    small = lambda v: abs(v) <= HYPOTHESIS_TOL
    if case == "case1":
        _require(small(r * s) and small(l * m + 5), "case1 needs rs = 0 and lm = -5")
        return Psi5GeneralParams(a * u, h * u, r * u, l, m, s * u)
    if case == "case2":
        _require(small(l * m) and small(r * s + 5 / 3), "case2 needs lm = 0 and rs = -5/3")
        return Psi5GeneralParams(a * u, h * u, r, l * u, m * u, s)
    _require(not any(small(v) for v in (r, l, m, s)), "case3 needs r, l, m, s all nonzero")
    X = l * m
    if _segment_distance(-4.0, 0.0, X) > DETOUR_RADIUS:
        l2, m2, X2 = l * u, m * u, X * u * u
    else:
        # shrink X + 4 geometrically from X + 4 to 4, never through 0
        X2 = 4 * ((X + 4) / 4) ** u - 4
        l2 = l * math.sqrt(u)
        m2 = X2 / l2 if u > 0 else 0.0
    s2 = -4 * (5 + X2) / (3 * r * (X2 + 4))
    return Psi5GeneralParams(-l2 * s2 / 2, -r * m2 / 2, r, l2, m2, s2)


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(z - a)
    k = min(1.0, max(0.0, ((z - a) * ab.conjugate()).real / abs(ab) ** 2))
    return abs(z - (a + k * ab))


def deformation_params(case: str, t: float, params: Psi5GeneralParams | None = None) -> Psi5GeneralParams:
    """Parameters of the path curve at time t.

    ``psi1`` and ``psi2`` run from psi5_1 and psi5_2 to psi5_0 and take
    no parameters.  ``case1``, ``case2`` and ``case3`` start from the
    given family member and end, up to ``terminal_element``, at psi5_1,
    psi5_2 and psi5_2 respectively.
    """
    t = _check_t(t)
    if case == "psi1":
        return _psi1_params(t)
    if case == "psi2":
        return _psi2_params(t)
    if case not in PATH_CASES:
        raise DomainError(f"unknown path case {case!r}; expected one of {PATH_CASES}")
    if params is None:
        raise PreconditionError(f"{case} needs starting parameters")
    if params.on_degeneration_locus():
        warnings.warn("starting parameters lie on the degeneration locus",
                      DegenerationWarning, stacklevel=3)
    return _case_params(case, t, params)


def deformation_path(case: str, t: float, params: Psi5GeneralParams | None = None) -> CurveCP3:
    return psi5_general(deformation_params(case, t, params))


def terminal_element(case: str, params: Psi5GeneralParams | None = None) -> GroupElement:
    """Diagonal element carrying the path's end curve to psi5_1 or psi5_2."""
    if case in ("psi1", "psi2"):
        return GroupElement.identity()
    end = deformation_params(case, 1.0, params)
    if case == "case1":
        return diagonal_element(1, 2 / end.l)
    if case == "case2":
        return diagonal_element(1, 1 / end.r)
    return diagonal_element(1, 1 / end.r)


def path_endpoint_target(case: str) -> CurveCP3:
    from .families import psi5_0, psi5_2

    return {"psi1": psi5_0, "psi2": psi5_0, "case1": psi5_1}.get(case, psi5_2)()
