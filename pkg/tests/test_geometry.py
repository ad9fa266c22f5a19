"""Geometry layer: distances, exponential map, curves, quadrature grids."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenrestrict import geometry as geo


def random_unit(rng, dim):
    v = rng.standard_normal(dim + 1)
    return v / np.linalg.norm(v)


def random_tangent(rng, x):
    v = rng.standard_normal(x.size)
    v -= np.dot(v, x) * x
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------- distances

def test_distance_basics():
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    assert geo.sphere_distance(e1, e1) == 0.0
    assert math.isclose(geo.sphere_distance(e1, e2), math.pi / 2, abs_tol=1e-15)
    assert math.isclose(geo.sphere_distance(e1, -e1), math.pi, abs_tol=1e-12)


def test_distance_rejects_bad_input():
    e1 = np.array([1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        geo.sphere_distance(e1, np.array([1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        geo.sphere_distance(e1, np.array([0.5, 0.0, 0.0]))


@settings(deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_triangle_inequality(seed, dim):
    rng = np.random.default_rng(seed)
    x, y, z = (random_unit(rng, dim) for _ in range(3))
    assert geo.sphere_distance(x, z) <= (geo.sphere_distance(x, y)
                                         + geo.sphere_distance(y, z) + 1e-12)


@settings(deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 3.0), st.sampled_from([2, 3]))
def test_exp_map_radial_distance(seed, r, dim):
    rng = np.random.default_rng(seed)
    x = random_unit(rng, dim)
    v = random_tangent(rng, x)
    y = geo.exp_map(x, r * v)
    assert math.isclose(np.linalg.norm(y), 1.0, abs_tol=1e-12)
    # arccos conditioning near the endpoints limits this to ~1e-7
    assert abs(geo.sphere_distance(x, y) - r) < 1e-6


def test_exp_map_zero_and_tangency():
    x = np.array([0.0, 0.0, 1.0])
    assert np.allclose(geo.exp_map(x, np.zeros(3)), x)
    with pytest.raises(ValueError):
        geo.exp_map(x, np.array([0.0, 0.0, 0.3]))  # not tangent


def test_tangent_basis_orthonormal():
    rng = np.random.default_rng(5)
    for _ in range(50):
        x = random_unit(rng, 2)
        u1, u2 = geo.tangent_basis(x)
        gram = np.array([[u1 @ u1, u1 @ u2, u1 @ x],
                         [u2 @ u1, u2 @ u2, u2 @ x]])
        assert np.allclose(gram, [[1, 0, 0], [0, 1, 0]], atol=1e-13)


# ------------------------------------------------------------------- curves

def test_curve_constructors_and_measures():
    eq = geo.equator()
    assert eq.ambient_dim == 2
    assert math.isclose(eq.length, 2 * math.pi)
    lat = geo.latitude_circle(math.pi / 4)
    assert math.isclose(lat.length, 2 * math.pi * math.sin(math.pi / 4))
    sub = geo.great_subsphere()
    assert sub.ambient_dim == 3
    assert math.isclose(sub.measure, 4 * math.pi)
    with pytest.raises(ValueError):
        sub.length  # noqa: B018  -- area, not length


def test_curve_validation_errors():
    with pytest.raises(ValueError):
        geo.latitude_circle(0.0)
    with pytest.raises(ValueError):
        geo.latitude_circle(2.0)  # past the equator
    bad = np.eye(3)
    bad[0, 0] = 2.0
    with pytest.raises(ValueError):
        geo.CurveSpec(geo.CurveKind.GREAT_CIRCLE, bad)
    with pytest.raises(ValueError):
        geo.CurveSpec(geo.CurveKind.GREAT_SUBSPHERE, np.eye(3))


def test_curve_points_on_sphere_and_periodic():
    for curve in (geo.equator(), geo.latitude_circle(0.9)):
        s = np.linspace(0.0, 2 * curve.length, 37)
        pts = geo.curve_points(curve, s)
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-13)
        wrapped = geo.curve_points(curve, s + curve.length)
        assert np.allclose(pts, wrapped, atol=1e-12)


def test_curve_tangent_is_unit_velocity():
    for curve in (geo.equator(), geo.latitude_circle(0.6)):
        h = 1e-6
        for s in (0.0, 0.7, 2.1):
            fd = (geo.curve_point(curve, s + h) - geo.curve_point(curve, s - h)) / (2 * h)
            assert np.allclose(fd, geo.curve_tangent(curve, s), atol=1e-8)


@settings(deadline=None, max_examples=40)
@given(st.floats(0.15, 1.55), st.floats(0.0, 6.0), st.floats(0.0, 6.0))
def test_latitude_chord_closed_form(theta0, s1, s2):
    # cos d(gamma(s1), gamma(s2)) = sin^2 t0 cos((s1-s2)/sin t0) + cos^2 t0
    curve = geo.latitude_circle(theta0)
    x, y = geo.curve_point(curve, s1), geo.curve_point(curve, s2)
    st_, ct = math.sin(theta0), math.cos(theta0)
    want = st_**2 * math.cos((s1 - s2) / st_) + ct**2
    assert math.isclose(math.cos(geo.sphere_distance(x, y)), want, abs_tol=1e-12)


def test_geodesic_curvature_values():
    assert geo.geodesic_curvature(geo.equator()) == 0.0
    assert math.isclose(geo.geodesic_curvature(geo.latitude_circle(math.pi / 4)), 1.0)
    with pytest.raises(ValueError):
        geo.geodesic_curvature(geo.great_subsphere())


# ---------------------------------------------------------- gradient identity

def test_distance_gradient_identity_batch():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        x = random_unit(rng, 2)
        omega = random_tangent(rng, x)
        r = rng.uniform(0.05, math.pi / 2 - 0.05)
        worst = max(worst, geo.distance_gradient_check(x, r, omega))
    assert worst < 1e-6


def test_distance_gradient_rejects_bad_config():
    x = np.array([0.0, 0.0, 1.0])
    omega = np.array([1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        geo.distance_gradient_check(x, 2.0, omega)  # r past pi/2
    with pytest.raises(ValueError):
        geo.distance_gradient_check(x, 0.5, np.array([0.0, 0.0, 1.0]))


# ------------------------------------------------------------------- grids

def test_quadrature_grid_validation():
    with pytest.raises(ValueError):
        geo.QuadratureGrid(np.eye(3), np.array([1.0, -1.0, 1.0]))
    with pytest.raises(ValueError):
        geo.QuadratureGrid(np.eye(3), np.ones(2))


def test_sphere_grid_total_measure():
    g2 = geo.sphere_grid(2, 48)
    assert math.isclose(g2.total, 4 * math.pi, rel_tol=1e-13)
    g3 = geo.sphere_grid(3, 24)
    assert math.isclose(g3.total, 2 * math.pi**2, rel_tol=1e-13)
    assert np.allclose(np.linalg.norm(g2.nodes, axis=1), 1.0, atol=1e-13)


def test_reduced_grids_total_measure():
    z2 = geo.zonal_grid(2, np.array([0.0, 0.0, 1.0]), 40)
    assert math.isclose(z2.total, 4 * math.pi, rel_tol=1e-13)
    z3 = geo.zonal_grid(3, np.array([1.0, 0.0, 0.0, 0.0]), 40)
    assert math.isclose(z3.total, 2 * math.pi**2, rel_tol=1e-13)
    pp = geo.polar_pair_grid(40)
    assert math.isclose(pp.total, 2 * math.pi**2, rel_tol=1e-13)


def test_polar_pair_grid_closed_form():
    # integral over S^3 of |x1 + i x2|^(2n) equals 2 pi^2 / (n+1)
    for n in (1, 4, 9):
        g = geo.polar_pair_grid(2 * n + 8)
        vals = (g.nodes[:, 0] ** 2 + g.nodes[:, 1] ** 2) ** n
        got = float(np.sum(g.weights * vals))
        assert math.isclose(got, 2 * math.pi**2 / (n + 1), rel_tol=1e-12)


def test_sphere_grid_spectral_exactness():
    # a degree-12 harmonic integrates to zero on a grid resolving degree 12
    from eigenrestrict.harmonics import eval_zonal
    g = geo.sphere_grid(2, 40)
    pole = np.array([0.6, 0.0, 0.8])
    vals = eval_zonal(2, 12, pole, g.nodes)
    assert abs(float(np.sum(g.weights * vals))) < 1e-11


def test_curve_grid_measures():
    eq = geo.equator()
    g = geo.curve_grid(eq, 128)
    assert math.isclose(g.total, eq.length, rel_tol=1e-13)
    sub = geo.great_subsphere()
    gs = geo.curve_grid(sub, 32)
    assert math.isclose(gs.total, 4 * math.pi, rel_tol=1e-13)


def test_sphere_grid_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        geo.sphere_grid(2, 3)
    with pytest.raises(ValueError):
        geo.sphere_grid(4, 16)
