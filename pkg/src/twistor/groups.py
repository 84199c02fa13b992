"""Symplectic group elements, Moebius maps, and their actions on curves.

Sp(2,C) acts on a curve by left multiplication of its coefficient matrix;
a Moebius map acts by precomposition, which is a column transformation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .curve import INF, CurveCP3, is_infinite
from .errors import ConstructionError

J = np.array([[0, -1, 0, 0],
              [1, 0, 0, 0],
              [0, 0, 0, -1],
              [0, 0, 1, 0]], dtype=complex)
J.flags.writeable = False

GROUP_TOL = 1e-10
SP2 = "Sp2"
SP2C = "Sp2C"
GL2C = "GL2C"
SU2 = "SU2"


def symplectic_defect(A: np.ndarray) -> float:
    A = np.asarray(A, dtype=complex)
    scale = max(1.0, np.abs(A).max() ** 2)
    return float(np.abs(A.T @ J @ A - J).max() / scale)


def unitary_defect(A: np.ndarray) -> float:
    A = np.asarray(A, dtype=complex)
    return float(np.abs(A.conj().T @ A - np.eye(A.shape[0])).max())


class GroupElement:
    """A 4x4 matrix in Sp(2,C), tagged Sp2 when it is also unitary."""

    __slots__ = ("_A", "kind")

    def __init__(self, matrix, kind: str | None = None, tol: float = GROUP_TOL):
        A = np.array(matrix, dtype=complex)
        if A.shape != (4, 4):
            raise ConstructionError(f"group element must be 4x4, got {A.shape}")
        if symplectic_defect(A) > tol:
            raise ConstructionError(f"matrix is not symplectic (defect {symplectic_defect(A):.2e})")
        if kind is None:
            kind = SP2 if unitary_defect(A) <= tol else SP2C
        elif kind == SP2 and unitary_defect(A) > tol:
            raise ConstructionError(f"Sp2 element is not unitary (defect {unitary_defect(A):.2e})")
        elif kind not in (SP2, SP2C):
            raise ConstructionError(f"unknown kind {kind!r}")
        A.flags.writeable = False
        self._A = A
        self.kind = kind

    @property
    def matrix(self) -> np.ndarray:
        return self._A

    @classmethod
    def identity(cls) -> GroupElement:
        return cls(np.eye(4), SP2)

    def __matmul__(self, other: GroupElement) -> GroupElement:
        kind = SP2 if self.kind == other.kind == SP2 else SP2C
        return GroupElement(self._A @ other._A, kind, tol=1e-8)

    def inverse(self) -> GroupElement:
        # A^{-1} = -J A^t J for symplectic A
        return GroupElement(-J @ self._A.T @ J, self.kind, tol=1e-8)

    def __repr__(self):
        return f"GroupElement({self.kind}, {self._A.tolist()!r})"


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (alpha z + beta)/(gamma z + delta), stored as a 2x2 matrix."""

    matrix: np.ndarray
    kind: str = GL2C

    def __post_init__(self):
        M = np.array(self.matrix, dtype=complex)
        if M.shape != (2, 2):
            raise ConstructionError("Moebius matrix must be 2x2")
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if abs(det) <= 1e-14 * max(1.0, np.abs(M).max() ** 2):
            raise ConstructionError("Moebius matrix is singular")
        if self.kind == SU2:
            if unitary_defect(M) > GROUP_TOL or abs(det - 1) > GROUP_TOL:
                raise ConstructionError("SU2 map must be unitary with determinant 1")
        elif self.kind != GL2C:
            raise ConstructionError(f"unknown kind {self.kind!r}")
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)

    @classmethod
    def identity(cls) -> MoebiusMap:
        return cls(np.eye(2), SU2)

    @classmethod
    def rotation(cls, lam: complex) -> MoebiusMap:
        """z -> lam z; an SU2 rotation when |lam| = 1."""
        lam = complex(lam)
        if abs(abs(lam) - 1) <= GROUP_TOL:
            s = cmath.sqrt(lam)
            return cls(np.diag([s, 1 / s]), SU2)
        return cls(np.diag([lam, 1.0]), GL2C)

    def compose(self, other: MoebiusMap) -> MoebiusMap:
        """self after other."""
        kind = SU2 if self.kind == other.kind == SU2 else GL2C
        M = self.matrix @ other.matrix
        if kind == SU2 and (unitary_defect(M) > GROUP_TOL):
            kind = GL2C
        return MoebiusMap(M, kind)

    def inverse(self) -> MoebiusMap:
        if self.kind == SU2:
            return MoebiusMap(self.matrix.conj().T, SU2)
        (a, b), (c, d) = self.matrix
        return MoebiusMap(np.array([[d, -b], [-c, a]]), GL2C)

    def apply(self, z):
        (a, b), (c, d) = self.matrix
        if is_infinite(z):
            return a / c if c != 0 else INF
        den = c * z + d
        if den == 0:
            return INF
        return (a * z + b) / den


def _normalize(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def sp2_from_columns(u, v, tol: float = GROUP_TOL) -> GroupElement:
    """The unitary symplectic matrix with columns (u, J conj(u), v, J conj(v))."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if abs(np.linalg.norm(u) - 1) > tol or abs(np.linalg.norm(v) - 1) > tol:
        raise ConstructionError("columns must be unit vectors")
    ju = J @ u.conj()
    if abs(np.vdot(u, v)) > tol or abs(np.vdot(ju, v)) > tol:
        raise ConstructionError("v must be orthogonal to u and J conj(u)")
    return GroupElement(np.column_stack([u, ju, v, J @ v.conj()]), SP2)


_SEEDS = (2, 3, 0, 1)


def _complete(u) -> np.ndarray:
    ju = J @ u.conj()
    for k in _SEEDS:
        e = np.zeros(4, dtype=complex)
        e[k] = 1.0
        v = e - np.vdot(u, e) * u - np.vdot(ju, e) * ju
        if np.linalg.norm(v) >= 0.1:
            return _normalize(v)
    raise AssertionError("seed basis failed to complete a symplectic frame")


def sp2_sending_to_e1(w) -> GroupElement:
    """An Sp2 element A with A (w/|w|) = e1."""
    w = np.asarray(w, dtype=complex)
    if not np.any(w):
        raise ConstructionError("cannot send the zero vector to e1")
    u = _normalize(w)
    B = sp2_from_columns(u, _complete(u))
    return GroupElement(B.matrix.conj().T, SP2)


def act_post(g: GroupElement, c: CurveCP3) -> CurveCP3:
    """Left multiplication of the coefficient matrix by g."""
    return c.with_coeffs(g.matrix @ c.coeffs)


def precomposition_matrix(omega: MoebiusMap, d: int) -> np.ndarray:
    """T with (F @ T) the coefficients of (gamma z + delta)^d f(omega z)."""
    (a, b), (c, dd) = omega.matrix
    num = [np.array([1.0 + 0j])]
    den = [np.array([1.0 + 0j])]
    for _ in range(d):
        num.append(np.convolve(num[-1], [b, a]))
        den.append(np.convolve(den[-1], [dd, c]))
    T = np.zeros((d + 1, d + 1), dtype=complex)
    for j in range(d + 1):
        T[j] = np.convolve(num[j], den[d - j])
    return T


def act_pre(omega: MoebiusMap, c: CurveCP3) -> CurveCP3:
    """The curve z -> c(omega(z)) written with polynomial components.

    Precomposition is contravariant:
    act_pre(w2, act_pre(w1, c)) == act_pre(w1.compose(w2), c).
    """
    return c.with_coeffs(c.coeffs @ precomposition_matrix(omega, c.degree))


def su2_moving_to_zero(p) -> MoebiusMap:
    """A rotation of the sphere taking p to 0 (and its antipode to infinity)."""
    if is_infinite(p):
        return MoebiusMap(np.array([[0, -1], [1, 0]]), SU2)
    p = complex(p)
    s = np.sqrt(1 + abs(p) ** 2)
    return MoebiusMap(np.array([[1, -p], [p.conjugate(), 1]]) / s, SU2)


def stabilizer_element(xi, eta, zeta, lam, mu, alpha, beta, gamma, delta,
                       tol: float = 1e-12) -> GroupElement:
    """Element of Sp(2,C) fixing [1,0,0,0], with alpha delta - beta gamma = xi zeta = 1."""
    if abs(alpha * delta - beta * gamma - 1) > tol or abs(xi * zeta - 1) > tol:
        raise ConstructionError("stabilizer parameters must satisfy alpha*delta - beta*gamma = xi*zeta = 1")
    A = np.array([
        [xi, eta, xi * (gamma * lam - alpha * mu), xi * (delta * lam - beta * mu)],
        [0, zeta, 0, 0],
        [0, lam, alpha, beta],
        [0, mu, gamma, delta],
    ], dtype=complex)
    return GroupElement(A)


def diagonal_element(x, y) -> GroupElement:
    """diag(x, 1/x, y, 1/y)."""
    return GroupElement(np.diag([x, 1 / x, y, 1 / y]))


def u2_block(v1, v2) -> GroupElement:
    """Unitary rotation [[v1, -conj v2], [v2, conj v1]] acting on the last two slots."""
    A = np.eye(4, dtype=complex)
    A[2:, 2:] = [[v1, -np.conj(v2)], [v2, np.conj(v1)]]
    return GroupElement(A)


# -- random samplers (for tests and demos) -----------------------------------

def _gauss(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_sp2(rng: np.random.Generator) -> GroupElement:
    u = _normalize(_gauss(rng, 4))
    ju = J @ u.conj()
    v = _gauss(rng, 4)
    v = _normalize(v - np.vdot(u, v) * u - np.vdot(ju, v) * ju)
    return sp2_from_columns(u, v)


def random_sp2c(rng: np.random.Generator, spread: float = 0.5) -> GroupElement:
    """Sp2 x diagonal x stabilizer x Sp2 with moderately conditioned factors."""
    x, y = np.exp(spread * _gauss(rng, 2))
    xi = np.exp(spread * _gauss(rng, 1)[0])
    lam, mu, eta, beta, gamma = spread * _gauss(rng, 5)
    alpha = np.exp(spread * _gauss(rng, 1)[0])
    delta = (1 + beta * gamma) / alpha
    S = stabilizer_element(xi, eta, 1 / xi, lam, mu, alpha, beta, gamma, delta)
    A = random_sp2(rng).matrix @ diagonal_element(x, y).matrix @ S.matrix @ random_sp2(rng).matrix
    return GroupElement(A, SP2C, tol=1e-8)


def random_su2(rng: np.random.Generator) -> MoebiusMap:
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b = complex(q[0], q[1]), complex(q[2], q[3])
    return MoebiusMap(np.array([[a, b], [-b.conjugate(), a.conjugate()]]), SU2)


def random_moebius(rng: np.random.Generator, spread: float = 0.5) -> MoebiusMap:
    """SU2 x (z -> k z + b) with |log k| and |b| of order ``spread``."""
    k = np.exp(spread * _gauss(rng, 1)[0])
    b = spread * _gauss(rng, 1)[0]
    affine = MoebiusMap(np.array([[k, b], [0, 1]]), GL2C)
    return random_su2(rng).compose(affine)
