"""Dense complex polynomials in one variable.

Coefficients are stored lowest order first, so ``coeffs[j]`` multiplies
``z**j``.  A polynomial carries a *formal* degree (the length of its
coefficient vector minus one) that may exceed its actual degree; curves
in CP^3 rely on this to keep four components on a shared degree.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInputError, DegreeMismatchError

ACTUAL_DEGREE_TOL = 1e-12
CLUSTER_TOL = 1e-6


class CPoly:
    """Immutable complex polynomial with a formal degree."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex], formal_degree: int | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel().copy()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if formal_degree is not None:
            if formal_degree < 0:
                raise ValueError("formal degree must be non-negative")
            if c.size > formal_degree + 1:
                if np.any(c[formal_degree + 1:] != 0):
                    raise DegreeMismatchError(
                        f"{c.size - 1} coefficients do not fit formal degree {formal_degree}")
                c = c[:formal_degree + 1]
            elif c.size < formal_degree + 1:
                c = np.concatenate([c, np.zeros(formal_degree + 1 - c.size, dtype=complex)])
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def monomial(cls, j: int, coefficient: complex = 1.0, formal_degree: int | None = None):
        c = np.zeros(j + 1, dtype=complex)
        c[j] = coefficient
        return cls(c, formal_degree)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def formal_degree(self) -> int:
        return self._c.size - 1

    def actual_degree(self, tol: float = ACTUAL_DEGREE_TOL) -> int:
        """Largest j with |a_j| > tol * max|a|; -1 for the zero polynomial."""
        mags = np.abs(self._c)
        top = mags.max()
        if top == 0:
            return -1
        return int(np.nonzero(mags > tol * top)[0][-1])

    def is_zero(self) -> bool:
        return not np.any(self._c)

    def with_formal_degree(self, n: int) -> CPoly:
        return CPoly(self._c, n)

    def trimmed(self, tol: float = ACTUAL_DEGREE_TOL) -> CPoly:
        return CPoly(self._c[:max(self.actual_degree(tol), 0) + 1])

    def __call__(self, z):
        return evaluate(self, z)

    def __neg__(self):
        return CPoly(-self._c)

    def __add__(self, other):
        if isinstance(other, CPoly):
            n = max(self.formal_degree, other.formal_degree)
            return CPoly(self.with_formal_degree(n)._c + other.with_formal_degree(n)._c)
        c = self._c.copy()
        c[0] += other
        return CPoly(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return CPoly(np.convolve(self._c, other._c))
        return CPoly(self._c * other)

    __rmul__ = __mul__

    def allclose(self, other: CPoly, atol: float = 1e-12) -> bool:
        n = max(self.formal_degree, other.formal_degree)
        a = np.concatenate([self._c, np.zeros(n + 1 - self._c.size)])
        b = np.concatenate([other._c, np.zeros(n + 1 - other._c.size)])
        return bool(np.max(np.abs(a - b)) <= atol)

    def __repr__(self):
        return f"CPoly({self._c.tolist()!r})"


def _as_cpoly(f) -> CPoly:
    return f if isinstance(f, CPoly) else CPoly(f)


def derivative(f: CPoly) -> CPoly:
    """Formal derivative; formal degree drops by one (stays 0 for constants)."""
    c = f.coeffs
    if c.size == 1:
        return CPoly([0.0])
    return CPoly(c[1:] * np.arange(1, c.size))


def wronskian2(f: CPoly, g: CPoly) -> CPoly:
    """f'g - fg' with formal degree 2n-1 and the top coefficient set to zero."""
    if f.formal_degree != g.formal_degree:
        raise DegreeMismatchError(
            f"formal degrees differ: {f.formal_degree} vs {g.formal_degree}")
    n = f.formal_degree
    if n == 0:
        return CPoly([0.0])
    df, dg = derivative(f).coeffs, derivative(g).coeffs
    w = np.convolve(df, g.coeffs) - np.convolve(f.coeffs, dg)
    w = w[:2 * n]
    w[2 * n - 1] = 0.0
    return CPoly(w)


def evaluate(f: CPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = f.coeffs
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    return acc[()] if acc.ndim == 0 else acc


def taylor_shift(f: CPoly, p: complex) -> CPoly:
    """Coefficients of f(z + p), i.e. the Taylor coefficients of f at p."""
    c = np.array(f.coeffs, dtype=complex)
    n = c.size - 1
    # repeated synthetic division by (z - p)
    for k in range(n):
        for j in range(n - 1, k - 1, -1):
            c[j] += p * c[j + 1]
    return CPoly(c)


def reversed_poly(f: CPoly) -> CPoly:
    """z^n f(1/z) at the same formal degree n."""
    return CPoly(f.coeffs[::-1])


def _newton_polish(c: np.ndarray, z0: complex, order: int, steps: int = 3) -> complex:
    # a root of multiplicity m is a simple root of the (m-1)-th derivative
    g = CPoly(c)
    for _ in range(order):
        g = derivative(g)
    dg = derivative(g)
    z = z0
    best = abs(evaluate(g, z))
    for _ in range(steps):
        d = evaluate(dg, z)
        if d == 0:
            break
        cand = z - evaluate(g, z) / d
        val = abs(evaluate(g, cand))
        if not val < best:
            break
        z, best = cand, val
    return complex(z)


# Rounding in the coefficients moves a k-fold root by about
# (eps * S / |a_k|)^(1/k); the margin absorbs error inherited from
# whatever computation produced the coefficients.
ROOT_NOISE = 1e4 * np.finfo(float).eps
LINK_START = 1e-2


def _link(points: list[complex], tol: float) -> list[list[complex]]:
    """Single-linkage groups at relative distance ``tol``."""
    groups: list[list[complex]] = []
    for r in points:
        near = [g for g in groups if any(abs(r - q) <= tol * max(1.0, abs(q)) for q in g)]
        merged = [r] + [q for g in near for q in g]
        groups = [g for g in groups if not any(g is h for h in near)] + [merged]
    return groups


def _multiple_root_radius(c: np.ndarray, z0: complex, k: int) -> float:
    ak = abs(taylor_shift(CPoly(c), z0).coeffs[k])
    if ak == 0:
        return math.inf
    scale = float(np.sum(np.abs(c) * abs(z0) ** np.arange(c.size)))
    return (ROOT_NOISE * scale / ak) ** (1.0 / k)


def _resolve(c: np.ndarray, pts: list[complex], tol: float, floor: float) -> list[list[complex]]:
    if len(pts) == 1:
        return [pts]
    z0 = complex(np.mean(pts))
    spread = max(abs(p - z0) for p in pts)
    if spread <= floor * max(1.0, abs(z0)) or spread <= _multiple_root_radius(c, z0, len(pts)):
        return [pts]
    while tol > floor:
        tol /= 10
        groups = _link(pts, tol)
        if len(groups) > 1:
            return [cl for g in groups for cl in _resolve(c, g, tol, floor)]
    return [[p] for p in pts]


def roots(f: CPoly, cluster_tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Roots with multiplicities of ``f`` at its actual degree.

    Nearby companion-matrix eigenvalues are merged when their spread is
    what rounding would do to a multiple root (always when within
    ``cluster_tol``).  Each centroid is then polished by Newton's method
    on the derivative whose simple root it is.
    """
    n = f.actual_degree()
    if n < 0:
        raise DegenerateInputError("zero polynomial has no finite root set")
    if n == 0:
        return []
    c = f.coeffs[:n + 1]
    raw = [complex(r) for r in np.roots(c[::-1])]
    clusters = [cl for g in _link(raw, LINK_START) for cl in _resolve(c, g, LINK_START, cluster_tol)]
    out = []
    for cl in clusters:
        m = len(cl)
        z = _newton_polish(c, complex(np.mean(cl)), m - 1)
        out.append((z, m))
    out.sort(key=lambda t: (abs(t[0]), math.atan2(t[0].imag, t[0].real)))
    return out


def conj_antipodal(f: CPoly) -> CPoly:
    """Coefficients b_j = (-1)^(n-j) conj(a_(n-j)).

    This is the polynomial conj(z̄^n f(-1/z̄)), the conjugate of the
    antipodal transform of ``f`` at its formal degree n.
    """
    a = f.coeffs
    n = a.size - 1
    signs = (-1.0) ** (n - np.arange(n + 1))
    return CPoly(signs * np.conj(a[::-1]))


def coprime(fs: Sequence[CPoly], tol: float = CLUSTER_TOL) -> bool:
    """True iff the polynomials have no common complex root."""
    fs = [_as_cpoly(f) for f in fs]
    live = [f for f in fs if f.actual_degree() >= 0]
    if not live:
        raise DegenerateInputError("all polynomials are zero")
    pivot = min(live, key=lambda f: f.actual_degree())
    if pivot.actual_degree() == 0:
        return True
    others = [f for f in live if f is not pivot]
    for z, _ in roots(pivot):
        common = True
        for g in others:
            c = g.coeffs
            scale = np.sum(np.abs(c) * abs(z) ** np.arange(c.size))
            if abs(evaluate(g, z)) > tol * scale:
                common = False
                break
        if common:
            return False
    return True
