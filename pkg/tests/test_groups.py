import math

import numpy as np
import pytest

from twistor.canonical import bryant_canonical, psi3, psi4_a, psi5_1, psi5_eta
from twistor.curve import INF, CurveCP3, horizontality_error, projective_distance, singularity_report
from twistor.errors import ConstructionError
from twistor.groups import (GL2C, J, SP2, SP2C, SU2, GroupElement, MoebiusMap, act_post, act_pre,
                            diagonal_element, random_moebius, random_sp2, random_sp2c, random_su2,
                            sp2_from_columns, sp2_sending_to_e1, stabilizer_element,
                            su2_moving_to_zero, symplectic_defect, u2_block, unitary_defect)

E = np.eye(4, dtype=complex)


class TestSp2Construction:
    def test_standard_frame_is_identity(self):
        assert np.allclose(sp2_from_columns(E[0], E[2]).matrix, E)

    def test_second_basis_vector(self):
        A = sp2_from_columns(E[1], E[2]).matrix
        expected = np.column_stack([E[1], -E[0], E[2], E[3]])
        assert np.allclose(A, expected)
        # J conj(e2) by direct matrix-vector product
        assert np.allclose(J @ E[1], -E[0])

    def test_random_frames(self, rng):
        for _ in range(100):
            g = random_sp2(rng)
            assert g.kind == SP2
            assert symplectic_defect(g.matrix) <= 1e-12
            assert unitary_defect(g.matrix) <= 1e-12

    def test_orthogonality_violation(self):
        with pytest.raises(ConstructionError):
            sp2_from_columns(E[0], E[1])

    @pytest.mark.parametrize("w", [E[0], E[2], np.ones(4) / 2, np.array([0, 1j, 0, 0])])
    def test_sending_to_e1(self, w):
        A = sp2_sending_to_e1(w).matrix
        image = A @ (w / np.linalg.norm(w))
        assert abs(abs(image[0]) - 1) <= 1e-12 and np.allclose(image[1:], 0, atol=1e-12)
        assert symplectic_defect(A) <= 1e-12 and unitary_defect(A) <= 1e-12

    def test_sending_random_vectors(self, rng):
        for _ in range(100):
            w = rng.normal(size=4) + 1j * rng.normal(size=4)
            A = sp2_sending_to_e1(w).matrix
            assert np.linalg.norm(A @ w / np.linalg.norm(w) - E[0]) <= 1e-12

    def test_kind_detection_and_rejection(self):
        assert GroupElement(diagonal_element(2, 3).matrix).kind == SP2C
        assert GroupElement(E).kind == SP2
        with pytest.raises(ConstructionError):
            GroupElement(np.diag([2, 1, 1, 1]))

    def test_inverse_and_product(self, rng):
        g, h = random_sp2c(rng), random_sp2c(rng)
        assert np.allclose((g @ g.inverse()).matrix, E, atol=1e-10)
        assert symplectic_defect((g @ h).matrix) <= 1e-8


class TestStabilizer:
    def test_identity(self):
        assert np.allclose(stabilizer_element(1, 0, 1, 0, 0, 1, 0, 0, 1).matrix, E)

    def test_first_pipeline_matrix(self):
        t = d = 1.0
        g = stabilizer_element(1, 0, 1, 0, -t, 1 / d, 0, 0, d).matrix
        assert np.allclose(g @ E[0], E[0])
        assert symplectic_defect(g) <= 1e-12

    def test_random_admissible(self, rng):
        for _ in range(100):
            xi = complex(*rng.normal(size=2))
            alpha = complex(*rng.normal(size=2))
            eta, lam, mu, beta, gamma = rng.normal(size=5) + 1j * rng.normal(size=5)
            delta = (1 + beta * gamma) / alpha
            A = stabilizer_element(xi, eta, 1 / xi, lam, mu, alpha, beta, gamma, delta).matrix
            assert np.allclose(A @ E[0], xi * E[0])
            assert symplectic_defect(A) <= 1e-12 * max(1, np.abs(A).max() ** 2)

    def test_constraint_violation(self):
        with pytest.raises(ConstructionError):
            stabilizer_element(2, 0, 1, 0, 0, 1, 0, 0, 1)

    def test_u2_block_and_diagonal(self):
        c, s = math.cos(0.3), math.sin(0.3) * 1j
        assert GroupElement(u2_block(c, s).matrix).kind == SP2
        assert diagonal_element(2, 1j).matrix[1, 1] == 0.5


class TestPostAction:
    def test_identity(self):
        assert projective_distance(act_post(GroupElement.identity(), psi3()), psi3()) == 0

    def test_sign_interchange(self):
        g = GroupElement(np.diag([1, 1, -1, -1]))
        F = act_post(g, psi3()).coeffs
        s3 = math.sqrt(3)
        assert np.allclose(F, [[1, 0, 0, 0], [0, 0, 0, -1], [0, -s3, 0, 0], [0, 0, -s3, 0]])

    def test_preserves_horizontality(self, corpus, rng):
        for label, c in corpus:
            for _ in range(3):
                assert horizontality_error(act_post(random_sp2c(rng), c)) <= 1e-9, label
        assert horizontality_error(act_post(random_sp2(rng), psi5_1())) <= 1e-10


class TestMoebius:
    def test_rotation_scales_columns(self):
        base = CurveCP3([[1, 0, 0, 0], [0, 0, 0, 1], [0, math.sqrt(3), 0, 0], [0, 0, math.sqrt(3), 0]])
        out = act_pre(MoebiusMap.rotation(-1), base)
        expected = base.coeffs * (-1.0) ** np.arange(4)
        assert projective_distance(out, base.with_coeffs(expected)) <= 1e-15

    def test_identity(self):
        c = psi5_eta(1.0)
        assert projective_distance(act_pre(MoebiusMap.identity(), c), c) == 0

    def test_inversion_reverses_columns(self):
        c = psi5_1()
        out = act_pre(MoebiusMap(np.array([[0, 1], [1, 0]])), c)
        expected = [[0, 0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0], [0, 0, 0, 2, 0, 0],
                    [0, 0, -2.5, 0, 0, 0]]
        assert np.allclose(out.coeffs, expected)

    def test_matches_direct_substitution(self, rng):
        c = psi4_a(1.3)
        w = random_moebius(rng)
        (a, b), (g, d) = w.matrix
        out = act_pre(w, c)
        for z in (0.2 + 0.1j, -1.5, 3j):
            direct = (g * z + d) ** 4 * c.evaluate((a * z + b) / (g * z + d))
            assert np.allclose(out.evaluate(z), direct, rtol=1e-12)

    def test_composition_law(self, rng):
        c = bryant_canonical(1, 3)
        for _ in range(100):
            w1, w2 = random_moebius(rng), random_moebius(rng)
            lhs = act_pre(w2, act_pre(w1, c))
            rhs = act_pre(w1.compose(w2), c)
            assert projective_distance(lhs, rhs) <= 1e-9

    def test_apply_compose_inverse(self, rng):
        w1, w2 = random_moebius(rng), random_su2(rng)
        z = 0.3 - 0.8j
        assert w1.compose(w2).apply(z) == pytest.approx(w1.apply(w2.apply(z)))
        assert w1.inverse().apply(w1.apply(z)) == pytest.approx(z)
        assert w2.compose(w2.inverse()).kind == SU2
        assert w1.kind == GL2C

    def test_rotation_kinds(self):
        assert MoebiusMap.rotation(1j).kind == SU2
        assert MoebiusMap.rotation(2).kind == GL2C


class TestMovingToZero:
    def test_zero(self):
        assert np.allclose(su2_moving_to_zero(0).matrix, np.eye(2))

    def test_infinity(self):
        w = su2_moving_to_zero(INF)
        assert w.apply(INF) == 0 and w.apply(0) == INF
        assert w.apply(2.0) == pytest.approx(-0.5)

    def test_antipode_goes_to_infinity(self, rng):
        for p in [1.0] + list(rng.normal(size=5) + 1j * rng.normal(size=5)):
            w = su2_moving_to_zero(p)
            assert abs(w.apply(p)) <= 1e-15
            assert w.apply(-1 / np.conj(p)) == INF or abs(w.apply(-1 / np.conj(p))) > 1e12
            assert w.kind == SU2


def test_singularity_types_move_with_the_curve(rng):
    """Post-action keeps types; pre-action by w moves a point p to w^-1(p)."""
    c = psi5_eta(2.0)
    base = singularity_report(c)
    for _ in range(5):
        w, g = random_su2(rng), random_sp2(rng)
        moved = singularity_report(act_post(g, act_pre(w, c)))
        assert moved.type_multiset() == base.type_multiset()
        winv = w.inverse()
        expect = sorted((winv.apply(p) for p, _ in base.points), key=lambda z: (round(z.real, 6), z.imag))
        got = sorted((p for p, _ in moved.points), key=lambda z: (round(z.real, 6), z.imag))
        for a, b in zip(expect, got):
            assert abs(a - b) <= 1e-6 * max(1, abs(a)) or (np.isinf(abs(a)) and np.isinf(abs(b)))
