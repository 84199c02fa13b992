import math

import numpy as np
import pytest

from twistor.canonical import (M_MIN, bryant_canonical, psi3, psi4_a, psi5_eta, psi5_m,
                               psi5_m_coefficients, psi5_m_limit)
from twistor.curve import CurveCP3
from twistor.errors import DomainError, PreconditionError, QuadratureAccuracyError
from twistor.fibration import project_curve
from twistor.geometry import (annulus_bound, annulus_mass, bubble_limit, bubble_profile,
                              conformal_factor, density_peak, fs_density, induced_area,
                              pluecker_coefficients, polar_integral, round_area, w_m)
from twistor.groups import act_post, act_pre, random_sp2, random_su2

PI = math.pi


# -- independent oracles ----------------------------------------------------

def fd_projection_density(c, z, h=1e-5):
    """|d/dx (pi o psi)|^2 by central differences of the S^4 projection."""
    dx = (project_curve(c, z + h) - project_curve(c, z - h)) / (2 * h)
    return float(dx @ dx)


def fd_laplacian_log_norm(c, z, h=1e-3):
    L = lambda w: math.log(float(np.sum(np.abs(c.evaluate(w)) ** 2)))
    return (L(z + h) + L(z - h) + L(z + 1j * h) + L(z - 1j * h) - 4 * L(z)) / h ** 2


def flux(c, r, n=4096):
    """Boundary form of the disk integral of Laplacian(ln|f|^2) over |z| < r.

    Divergence theorem: the area equals the integral over the circle of
    r * d/dr ln|f|^2, a smooth periodic integrand (trapezoid is spectral).
    """
    phi = 2 * np.pi * np.arange(n) / n
    e = np.exp(1j * phi)
    z = r * e
    f = c.evaluate(z)
    df = c.derivative_values(z)
    d_r = 2 * np.real(np.sum(np.conj(f) * df, axis=0) * e) / np.sum(np.abs(f) ** 2, axis=0)
    return float(np.mean(r * d_r) * 2 * np.pi)


def flux_w(m, r, n=4096):
    """Same boundary form for ln w_m alone (no (1+r^2)^3 factor)."""
    _, p = psi5_m_coefficients(m)
    phi = 2 * np.pi * np.arange(n) / n
    w = 2 * p * r * r * np.cos(2 * phi) + r ** 4 + (m * m - 3) * r * r + 1
    dw = 4 * p * r * np.cos(2 * phi) + 4 * r ** 3 + 2 * (m * m - 3) * r
    return float(np.mean(r * dw / w) * 2 * np.pi)


# -- density ----------------------------------------------------------------

class TestDensity:
    def test_psi3_values(self):
        assert fs_density(psi3(), 0) == pytest.approx(12, rel=1e-14)
        assert fs_density(psi3(), 1) == pytest.approx(3, rel=1e-14)

    def test_stationary_point(self):
        # f(0) = e1 and f'(0) = 0: the density vanishes there
        c = CurveCP3([[1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        assert fs_density(c, 0.0) == 0

    def test_against_projection_and_laplacian(self, corpus, rng):
        for label, c in corpus:
            for z in rng.normal(size=3) + 1j * rng.normal(size=3):
                ref = fs_density(c, z)
                assert fd_projection_density(c, z) == pytest.approx(ref, rel=1e-6), label
                assert fd_laplacian_log_norm(c, z) == pytest.approx(ref, rel=1e-4, abs=1e-6), label

    def test_chart_switch_is_seamless(self):
        c = psi4_a(1.5)
        for phi in np.linspace(0, 2 * np.pi, 7):
            z = np.exp(1j * phi)
            inside, outside = fs_density(c, z * (1 - 1e-12)), fs_density(c, z * (1 + 1e-12))
            assert inside == pytest.approx(outside, rel=1e-9)
        assert fs_density(c, 7 + 2j) == pytest.approx(fd_projection_density(c, 7 + 2j), rel=1e-6)

    def test_vectorised(self, rng):
        z = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
        out = fs_density(psi5_eta(1.0), z)
        assert out.shape == (3, 4)
        assert out[1, 2] == pytest.approx(fs_density(psi5_eta(1.0), z[1, 2]))

    def test_pluecker_shape(self):
        assert pluecker_coefficients(psi3()).shape == (6, 6)


class TestConformalFactor:
    def test_constant_curvature(self, rng):
        z = rng.normal(size=100) * 3 + 3j * rng.normal(size=100)
        assert np.abs(conformal_factor(psi3(), z) - 3).max() <= 1e-9
        assert np.abs(conformal_factor(psi5_m_limit(), z) - 3).max() <= 1e-9

    def test_large_m_away_from_origin(self):
        assert conformal_factor(psi5_m(1000), 0.5) == pytest.approx(3, rel=0.01)

    def test_nonnegative(self, corpus, rng):
        z = rng.normal(size=50) + 1j * rng.normal(size=50)
        for _, c in corpus:
            assert conformal_factor(c, z).min() >= -1e-9


# -- areas ------------------------------------------------------------------

class TestAreas:
    @pytest.mark.parametrize("make, region, expected", [
        (psi3, "sphere", 12 * PI),
        (lambda: psi5_eta(1.0), "unit_disk", 10 * PI),
        (lambda: psi4_a(2.0), "sphere", 16 * PI),
        (lambda: psi4_a(0.0), "sphere", 16 * PI),
    ])
    def test_quantised(self, make, region, expected):
        res = induced_area(make(), region, tol=1e-8)
        assert res.value == pytest.approx(expected, rel=1e-6)
        assert res.estimated_error <= 1e-6 * expected and res.nodes > 0

    def test_against_boundary_flux(self):
        for c in (psi5_m(5), bryant_canonical(2, 2), psi4_a(1.5)):
            disk = induced_area(c, "unit_disk", tol=1e-9).value
            assert disk == pytest.approx(flux(c, 1.0), rel=1e-8)
            outer = flux(c.reversed(), 1.0)
            assert induced_area(c, "sphere", tol=1e-9).value == pytest.approx(disk + outer, rel=1e-8)

    def test_region_alias_and_errors(self):
        a = induced_area(psi3(), "disk", tol=1e-8).value
        assert a == pytest.approx(6 * PI, rel=1e-7)
        with pytest.raises(DomainError):
            induced_area(psi3(), "annulus")
        not_full = CurveCP3([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 1]])
        with pytest.raises(PreconditionError):
            induced_area(not_full)

    def test_off_centre_concentration(self):
        # the density peaks away from 0; the disk is recentred before integrating
        c = psi5_eta(math.tan(0.99 * PI / 2))
        peak = density_peak(c)
        assert 0.01 < abs(peak) < 0.9
        assert induced_area(c, "unit_disk", tol=1e-8).value == pytest.approx(10 * PI, rel=1e-6)

    def test_scrambled_concentration_converges(self, rng):
        # peaks off-centre in both hemispheres; rotating the sphere keeps the rule spectral
        for c in (psi5_eta(2.0), psi5_m(100)):
            for _ in range(3):
                moved = act_pre(random_su2(rng), c)
                assert induced_area(moved, tol=1e-9).value == pytest.approx(20 * PI, rel=1e-8)

    def test_invariance_under_actions(self, rng):
        c = psi5_m(5)
        base = induced_area(c, tol=1e-8).value
        for _ in range(2):
            moved = act_post(random_sp2(rng), act_pre(random_su2(rng), c))
            assert induced_area(moved, tol=1e-8).value == pytest.approx(base, rel=1e-6)


def test_polar_integral_exact_cases():
    # integral of 1 over the unit disk, and of |z|^2 over an annulus
    assert polar_integral(lambda z: np.ones(z.shape), 0, 1).value == pytest.approx(PI, rel=1e-12)
    val = polar_integral(lambda z: np.abs(z) ** 2, 0.5, 1).value
    assert val == pytest.approx(PI / 2 * (1 - 0.5 ** 4), rel=1e-12)


def test_polar_integral_reports_non_convergence():
    # a cusp in angle: the trapezoid rule only converges algebraically
    cusp = lambda z: np.sqrt(np.abs(np.sin(np.angle(z))))
    with pytest.raises(QuadratureAccuracyError) as info:
        polar_integral(cusp, 0, 1, tol=1e-12, max_n_phi=256)
    assert info.value.coarse != info.value.fine


# -- the bubbling family -----------------------------------------------------

class TestBubbling:
    def test_w_m_values(self):
        assert w_m(M_MIN, 1.0, 0.4) == pytest.approx(2 / 3)
        assert w_m(7.0, 0.0, 1.2) == 1.0

    @pytest.mark.parametrize("m", [2, 3, 5, 10])
    def test_factorisation(self, m):
        c = psi5_m(m)
        r = np.linspace(0.05, 2.0, 20)
        phi = np.linspace(0, 2 * PI, 20, endpoint=False)
        R, P = np.meshgrid(r, phi)
        norm = np.sum(np.abs(c.evaluate(R * np.exp(1j * P))) ** 2, axis=0)
        expected = (1 + R ** 2) ** 3 * w_m(m, R, P)
        assert np.abs(norm / expected - 1).max() <= 1e-9

    def test_annulus_mass_matches_flux(self):
        for m in (2.5, 5, 20):
            mass = annulus_mass(m).value
            ref = flux_w(m, 1.0) - flux_w(m, 1 / m)
            assert mass == pytest.approx(ref, rel=1e-8)

    def test_annulus_mass_decreases(self):
        masses = [annulus_mass(m).value for m in (10, 100)]
        assert masses[1] < masses[0]

    def test_annulus_precondition(self):
        with pytest.raises(PreconditionError):
            annulus_mass(M_MIN)

    def test_bound_formula(self):
        _, p = psi5_m_coefficients(10)
        assert annulus_bound(10) == pytest.approx(4 * PI / (100 - 2 * p - 2))

    def test_bubble_profile(self):
        assert bubble_profile(M_MIN, 1.0).value == pytest.approx(10 * PI, rel=1e-9)
        assert bubble_profile(5, 1.0).value == pytest.approx(10 * PI, rel=1e-9)
        target = 4 * PI + 3 * (4 * PI * 0.01 / 1.01)
        assert target == pytest.approx(12.9396, abs=1e-4)
        assert bubble_limit(0.1) == pytest.approx(target, rel=1e-15)
        assert bubble_profile(1000, 0.1).value == pytest.approx(target, rel=0.02)

    def test_bubble_profile_matches_flux(self):
        for m, eps in ((5, 0.3), (50, 0.1), (1000, 0.1)):
            assert bubble_profile(m, eps).value == pytest.approx(flux(psi5_m(m), eps), rel=1e-8)

    def test_bubble_domain(self):
        with pytest.raises(DomainError):
            bubble_profile(5, 0)
        with pytest.raises(DomainError):
            bubble_profile(1.0, 0.5)

    def test_round_area(self):
        assert round_area(1.0) == pytest.approx(2 * PI)
        assert round_area(0.1) == pytest.approx(4 * PI * 0.01 / 1.01)
