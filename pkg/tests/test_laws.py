import cmath
import math

import numpy as np
import pytest

from symlsd import laws, roots
from symlsd.errors import DomainError, InvalidInputError, PoleOnContourError
from symlsd.verify import psi_quadrature


def quartic_residual(m, z, c):
    return abs((1.0 - c * c * m * m) * (c + c * z * m - 1.0) ** 2 - 1.0)


# --- fixed laws -------------------------------------------------------------

def test_arcsine_values():
    assert laws.arcsine_cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    assert laws.arcsine_pdf(0.0) == pytest.approx(1.0 / math.pi, abs=1e-15)
    assert laws.arcsine_cdf(1.0 / math.sqrt(2.0)) == pytest.approx(0.75, abs=1e-12)
    assert laws.arcsine_pdf(1.5) == 0.0
    assert laws.arcsine_cdf(-2.0) == 0.0 and laws.arcsine_cdf(2.0) == 1.0


def test_mp_support_and_mass():
    lo, hi = laws.mp_support(0.25)
    assert (lo, hi) == pytest.approx((0.25, 2.25), abs=1e-15)
    assert laws.mp_support(1.0) == pytest.approx((0.0, 4.0), abs=1e-15)
    from symlsd.stats import quad

    for c in (0.5, 2.0):
        lo, hi = laws.mp_support(c)
        mass = quad(lambda x: laws.mp_pdf(x, c), lo, hi, abs_tol=1e-9)
        assert mass == pytest.approx(min(1.0, 1.0 / c), abs=1e-6)
    assert laws.mp_atom(2.0) == pytest.approx(0.5)
    assert laws.mp_atom(0.5) == 0.0
    assert laws.mp_cdf(laws.mp_support(2.0)[1], 2.0) == pytest.approx(1.0, abs=1e-8)


# --- the symmetrized-lag limit law -----------------------------------------

def test_limit_law_fields():
    law = laws.limit_law(2.0)
    assert law.atom_mass == pytest.approx(0.5)
    assert law.a == pytest.approx(3.3302, abs=1e-4)
    assert laws.limit_law(0.5).atom_mass == 0.0
    with pytest.raises(InvalidInputError):
        laws.limit_law(0.0)


def test_phi_density_examples():
    assert laws.phi_density(2.0, 1.0) == pytest.approx(0.0, abs=1e-7)
    assert laws.phi_density(1.0, 2.0) == pytest.approx(0.09649, abs=1e-5)
    for c in (0.5, 1.0, 2.0):
        a = roots.support_endpoint(c)
        assert laws.phi_density(a + 0.1, c) == 0.0
        assert laws.phi_density(-a - 0.1, c) == 0.0


def test_phi_density_even():
    for c in (0.3, 1.0, 2.5):
        for x in (0.2, 0.7, 1.1):
            assert laws.phi_density(x, c) == laws.phi_density(-x, c)


def test_phi_density_origin_policy():
    # Finite clamp value for c != 1; large but finite at c = 1.
    v = laws.phi_density(0.0, 2.0)
    assert v == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-6)
    assert math.isfinite(laws.phi_density(0.0, 1.0))
    assert laws.phi_density(0.0, 1.0) > 100.0


def test_lsd_cdf_examples():
    assert laws.lsd_cdf(-1e-12, 0.5) == pytest.approx(0.5, abs=1e-7)
    for c in (0.5, 2.0):
        a = roots.support_endpoint(c)
        assert laws.lsd_cdf(a, c) == pytest.approx(1.0, abs=1e-6)
        assert laws.lsd_cdf(-a - 0.1, c) == 0.0
    jump = laws.lsd_cdf(0.0, 2.0) - laws.lsd_cdf(-1e-12, 2.0)
    assert jump == pytest.approx(0.5, abs=1e-7)


def test_lsd_cdf_monotone_and_reflection():
    for c in (0.5, 1.0, 2.0):
        a = roots.support_endpoint(c)
        xs = np.linspace(-a, a, 101)
        F = np.array([laws.lsd_cdf(float(x), c) for x in xs])
        assert np.all(np.diff(F) >= -1e-12)
        for x in (0.3 * a, 0.8 * a):
            left = laws.lsd_cdf(-x - 1e-12, c)
            assert left == pytest.approx(1.0 - laws.lsd_cdf(x, c), abs=1e-6)


def test_lsd_cdf_interpolant_matches_quadrature():
    for c in (0.5, 2.0):
        F = laws.lsd_cdf_interpolant(c)
        a = roots.support_endpoint(c)
        for x in (-0.7 * a, -0.1, 0.25, 0.9 * a):
            assert F(x) == pytest.approx(laws.lsd_cdf(x, c), abs=5e-6)


# --- Stieltjes transform ----------------------------------------------------

def test_stieltjes_examples():
    pt = laws.stieltjes(0.5 + 0.01j, 0.5)
    assert pt.residual <= 1e-10
    assert pt.m.imag > 0.0
    big = laws.stieltjes(1e6j, 1.0)
    assert abs(big.m - (-1.0 / 1e6j)) <= 1e-4 * abs(big.m)


def test_stieltjes_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        laws.stieltjes(1.0 - 0.5j, 1.0)


def test_stieltjes_conjugate_symmetry():
    # m(conj z) = conj(m(z)) follows from realness of the law; checked via
    # the quartic, whose coefficients at conj z are conjugated.
    for z in (0.7 + 0.3j, -1.2 + 0.05j):
        m = laws.stieltjes(z, 0.5).m
        coeffs = laws._quartic_coeffs(z.conjugate(), 0.5, "m")
        assert abs(np.polyval(coeffs, m.conjugate())) <= 1e-9


def test_stieltjes_grid_matches_scalar():
    zs = np.array([0.5 + 0.1j, -1.0 + 0.3j, 2.0 + 1.0j])
    ms, res = laws.stieltjes_grid(zs, 2.0)
    assert np.all(res <= 1e-10)
    for z, m in zip(zs, ms):
        assert abs(m - laws.stieltjes(complex(z), 2.0).m) <= 1e-10


def test_stieltjes_real_examples():
    m = laws.stieltjes_real(-3.0, 0.5)
    assert isinstance(m, float)
    assert quartic_residual(m, -3.0, 0.5) <= 1e-9
    boundary = laws.stieltjes(complex(-3.0, 1e-8), 0.5).m
    assert abs(m - boundary) <= 1e-4
    for x in (2.5, -2.5):
        mm = complex(laws.stieltjes_real(x, 1.0))
        assert quartic_residual(mm, x, 1.0) <= 1e-9


def test_stieltjes_real_boundary_agreement_grid():
    for c in (0.5, 1.0, 2.0):
        a = roots.support_endpoint(c)
        for x in (-a - 1.0, -0.6 * a, 0.4 * a, a + 2.0):
            m1 = complex(laws.stieltjes_real(float(x), c))
            m2 = laws.stieltjes(complex(x, 1e-8), c).m
            assert abs(m1 - m2) <= 1e-4


def test_stieltjes_real_rejects_origin():
    with pytest.raises(DomainError):
        laws.stieltjes_real(0.0, 1.0)


def test_density_via_inversion():
    assert laws.density_via_inversion(1.0, 2.0, 1e-6) == pytest.approx(
        0.09649, abs=1e-4
    )
    a = roots.support_endpoint(0.5)
    assert abs(laws.density_via_inversion(a + 0.5, 0.5, 1e-7)) <= 1e-3
    assert laws.density_via_inversion(-1.0, 2.0, 1e-6) == pytest.approx(
        laws.density_via_inversion(1.0, 2.0, 1e-6), abs=1e-6
    )


# --- psi and the self-consistency identity ----------------------------------

def test_psi_closed_form_values():
    want = 2.0 - 8.0 / math.sqrt(3.0)
    assert laws.psi(0.5, 2.0).value == pytest.approx(want, abs=1e-12)
    assert laws.psi(-0.5, 2.0).value == pytest.approx(-want, abs=1e-12)


def test_psi_pole_pair():
    br = laws.psi(0.3 + 0.1j, 2.0)
    assert abs(br.s_inside * br.s_outside - 1.0) <= 1e-12
    assert abs(br.s_inside) < 1.0 < abs(br.s_outside)


def test_psi_matches_quadrature():
    for u in (0.1, -0.9, 0.4 + 0.2j, 1.5 - 0.3j):
        for y in (0.5, 1.0, 2.0):
            assert abs(laws.psi(u, y).value - psi_quadrature(u, y)) <= 1e-8


def test_psi_pole_on_contour():
    with pytest.raises(PoleOnContourError):
        laws.psi(1.0, 2.0)


def test_companion_transform_scaling():
    for z in (1.0 + 0.5j, 2.0j):
        for c in (0.5, 2.0):
            tr = laws.companion_transforms(z, c)
            assert abs(tr.m - tr.m_under / c) <= 1e-8
            assert abs(tr.m_tilde - (c * tr.m_under - (1.0 - c) / (z / c))) <= 1e-10


def test_self_consistency_residual():
    assert laws.self_consistency_residual(1.0 + 0.5j, 0.5) <= 1e-8
    assert laws.self_consistency_residual(2.0j, 2.0) <= 1e-8
    assert laws.self_consistency_residual(0.1 + 0.1j, 1.0) <= 1e-6
