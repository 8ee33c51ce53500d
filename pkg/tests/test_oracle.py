import numpy as np
import pytest

from fuzzychern.bundles import PointOnSphere, tensor_power_projector
from fuzzychern.chern import gamma_formula
from fuzzychern.sphere_oracle import (
    build_quadrature,
    chern_number_commutative,
    curvature_density,
    volume_check,
)

rng = np.random.default_rng(4242)


@pytest.fixture(scope="module")
def grid():
    return build_quadrature(64, 128)


def random_angles(n):
    # stay away from the poles so 1/sin(theta) is tame
    theta = np.arccos(rng.uniform(-0.999, 0.999, n))
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    return theta, phi


def test_grid_weights_sum_to_solid_angle(grid):
    assert grid.weights.sum() == pytest.approx(4.0 * np.pi, rel=1e-12)


def test_grid_moments(grid):
    x3 = np.cos(grid.thetas)
    assert abs(grid.integrate(np.ones_like(x3)) - 4.0 * np.pi) <= 1e-10
    assert abs(grid.integrate(x3)) <= 1e-12
    assert grid.integrate(x3**2) == pytest.approx(4.0 * np.pi / 3.0, rel=1e-12)


def test_grid_bounds():
    with pytest.raises(ValueError):
        build_quadrature(1, 8)
    with pytest.raises(ValueError):
        build_quadrature(4, 3)


def test_density_equator_value():
    # (i/4) eps_abc x_a dx_b ^ dx_c = (i/2) sin(theta) dtheta ^ dphi
    assert curvature_density(1, False, np.pi / 2.0, 0.0) == pytest.approx(0.5j, abs=1e-13)


def test_density_additivity():
    theta, phi = random_angles(50)
    for t, p in zip(theta, phi):
        base = curvature_density(1, False, t, p)
        for k in (2, 3):
            assert abs(curvature_density(k, False, t, p) - k * base) <= 1e-10


def test_density_transpose_negates():
    theta, phi = random_angles(20)
    for t, p in zip(theta, phi):
        a = curvature_density(2, False, t, p)
        b = curvature_density(2, True, t, p)
        assert abs(a + b) <= 1e-12


def test_density_k_bounds():
    with pytest.raises(ValueError):
        curvature_density(0, False, 1.0, 1.0)
    with pytest.raises(ValueError):
        curvature_density(13, False, 1.0, 1.0)


def test_charge_one(grid):
    assert abs(chern_number_commutative(1, False, grid) - 1.0) <= 1e-10


def test_charge_transposed(grid):
    assert abs(chern_number_commutative(1, True, grid) + 1.0) <= 1e-10


@pytest.mark.parametrize("k", [2, 3])
def test_higher_charges(grid, k):
    assert abs(chern_number_commutative(k, False, grid) - k) <= 1e-8
    assert abs(chern_number_commutative(k, True, grid) + k) <= 1e-8


def test_volume_normalization():
    for n_polar, n_azimuthal in ((2, 4), (8, 8), (64, 128)):
        g = build_quadrature(n_polar, n_azimuthal)
        assert abs(volume_check(g) - 1.0) <= 1e-12


def finite_difference_density(k, theta, phi, h=1e-5):
    """Independent check: central differences of the projector itself."""

    def proj(t, p):
        return tensor_power_projector(PointOnSphere.from_angles(t, p), k)

    p = proj(theta, phi)
    dt = (proj(theta + h, phi) - proj(theta - h, phi)) / (2.0 * h)
    dp = (proj(theta, phi + h) - proj(theta, phi - h)) / (2.0 * h)
    return complex(np.trace(p @ (dt @ dp - dp @ dt)))


def test_finite_difference_cross_check():
    theta, phi = random_angles(25)
    for t, p in zip(theta, phi):
        analytic = curvature_density(2, False, t, p)
        fd = finite_difference_density(2, t, p)
        assert abs(analytic - fd) <= 1e-6


def test_finite_difference_charge():
    g = build_quadrature(32, 64)
    st = np.sin(g.thetas)
    vals = np.array(
        [finite_difference_density(1, t, p) for t, p in zip(g.thetas, g.phis)]
    ) / st
    c1 = (g.integrate(vals) / (2.0j * np.pi)).real
    assert abs(c1 - chern_number_commutative(1, False, g)) <= 1e-6


def test_bott_projector_flatness_along_sphere():
    # p (dp) p = 0 pointwise for the rank-one projector, both chart directions
    from fuzzychern.bundles import bott_projector

    theta, phi = random_angles(100)
    h = 1e-6
    for t, p in zip(theta, phi):
        pr = bott_projector(PointOnSphere.from_angles(t, p))
        dt = (
            bott_projector(PointOnSphere.from_angles(t + h, p))
            - bott_projector(PointOnSphere.from_angles(t - h, p))
        ) / (2.0 * h)
        dphi = (
            bott_projector(PointOnSphere.from_angles(t, p + h))
            - bott_projector(PointOnSphere.from_angles(t, p - h))
        ) / (2.0 * h)
        assert np.max(np.abs(pr @ dt @ pr)) <= 1e-9
        assert np.max(np.abs(pr @ dphi @ pr)) <= 1e-9


def test_fuzzy_commutative_bridge():
    assert abs(gamma_formula(64, "plus") - 1.0) <= 0.032
    assert abs(gamma_formula(64, "minus") + 1.0) <= 0.032
