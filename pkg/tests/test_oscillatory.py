"""Kernel decay, stationary directions, phase expansion, Airy model operator."""

import math

import numpy as np
import pytest

from eigenrestrict import geometry as geo
from eigenrestrict import oscillatory as osc
from eigenrestrict.profiles import bump, cutoff_chi, unit_bump, bump_mass


# ----------------------------------------------------------------- profiles

def test_bump_profile():
    assert bump(0.0) == 1.0
    assert bump(1.0) == 0.0 and bump(-2.0) == 0.0
    ts = np.linspace(-0.99, 0.99, 101)
    vals = bump(ts)
    assert np.all(vals > 0.0) and np.all(vals <= 1.0)
    assert np.allclose(vals, bump(-ts))


def test_unit_bump_mass():
    t, w = np.polynomial.legendre.leggauss(120)
    assert math.isclose(float(np.sum(w * unit_bump(t))), 1.0, rel_tol=1e-12)
    assert bump_mass() < 2.0


def test_cutoff_chi_plateaus():
    assert cutoff_chi(0.0) == 1.0 and cutoff_chi(0.5) == 1.0
    assert cutoff_chi(1.0) == 0.0 and cutoff_chi(-3.0) == 0.0
    xs = np.linspace(0.5, 1.0, 50)
    vals = cutoff_chi(xs)
    assert np.all(np.diff(vals) <= 1e-15)


# ----------------------------------------------------------------- kernel

def test_kernel_spec_validation():
    with pytest.raises(ValueError, match="1-d curves"):
        osc.KernelSpec(geo.great_subsphere(), 50.0)
    with pytest.raises(ValueError):
        osc.KernelSpec(geo.equator(), 50.0, radius=2.0)
    with pytest.raises(ValueError):
        osc.KernelSpec(geo.equator(), -5.0)


def test_kernel_matrix_hermitian_psd():
    spec = osc.KernelSpec(geo.equator(), 80.0)
    ts = np.linspace(-0.12, 0.12, 9)
    kmat = osc.kernel_matrix(spec, ts)
    assert np.max(np.abs(kmat - kmat.conj().T)) < 1e-12
    evals = np.linalg.eigvalsh(kmat)
    assert evals.min() > -1e-12 * evals.max()


def test_kernel_direction_count_converged():
    # doubling the direction count leaves the value unchanged at quadrature scale
    spec = osc.KernelSpec(geo.equator(), 120.0)
    floor = osc.kernel_node_floor(spec, 0.2)
    base = osc.kernel_K(spec, 0.1, -0.1)
    fine = osc.kernel_K(spec, 0.1, -0.1, m=2 * floor)
    assert abs(base - fine) < 1e-8
    with pytest.raises(ValueError, match="underresolves"):
        osc.kernel_K(spec, 0.1, -0.1, m=floor // 2)


def test_kernel_bound_short_ladder():
    report = osc.verify_kernel_bound(lams=(40.0, 80.0), grid_points=15)
    assert report.ok
    assert len(report.ratios) == 1
    assert all(s > 0 for s in report.sups)


# ----------------------------------------------------------- critical points

def _psi(x, center, r, w_angles, u1, u2):
    omega = np.outer(np.cos(w_angles), u1) + np.outer(np.sin(w_angles), u2)
    y = math.cos(r) * center + math.sin(r) * omega
    return -np.arccos(np.clip(y @ x, -1.0, 1.0))


def test_critical_points_minmax_structure():
    rng = np.random.default_rng(7)
    for _ in range(10):
        xp = rng.normal(size=3)
        xp /= np.linalg.norm(xp)
        tang = rng.normal(size=3)
        tang -= (tang @ xp) * xp
        tang /= np.linalg.norm(tang)
        r = 0.4
        d = rng.uniform(0.05, 0.9 * r)
        x = math.cos(d) * xp + math.sin(d) * tang
        cp = osc.critical_points(x, xp, r)
        assert math.isclose(np.linalg.norm(cp.omega_star), 1.0, rel_tol=1e-12)
        assert abs(cp.omega_star @ xp) < 1e-12
        assert abs(cp.phase_star + d) < 1e-10
        assert abs(cp.phase_antipode - d) < 1e-10
        # w* minimizes psi_r(x, .), its antipode maximizes it
        u1 = cp.omega_star
        u2 = np.cross(xp, u1)
        psi = _psi(x, xp, r, np.linspace(0, 2 * math.pi, 4096, endpoint=False),
                   u1, u2)
        assert psi.min() >= -(r + d) - 1e-9
        assert abs(psi[0] - psi.min()) < 1e-7
        assert abs(psi.max() - (d - r)) < 1e-7


def test_critical_points_rejects_bad_geometry():
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    with pytest.raises(ValueError, match="coincide"):
        osc.critical_points(e1, e1, 0.4)
    with pytest.raises(ValueError):
        osc.critical_points(e2, e1, 0.4)  # d = pi/2 > r


# ----------------------------------------------------------- phase expansion

def test_phase_expansion_great_circle_vanishes():
    fit = osc.phase_expansion_fit(geo.equator())
    assert fit.c_theory == 0.0
    assert fit.deviation < 1e-8


@pytest.mark.parametrize("theta0", [math.pi / 4, math.pi / 3, 1.1])
def test_phase_expansion_matches_curvature(theta0):
    fit = osc.phase_expansion_fit(geo.latitude_circle(theta0))
    kappa = 1.0 / math.tan(theta0)
    assert math.isclose(fit.c_theory, kappa**2 / 24.0, rel_tol=1e-12)
    assert fit.deviation < 1e-6


def test_phase_expansion_step_validation():
    with pytest.raises(ValueError):
        osc.phase_expansion_fit(geo.equator(), steps=(1e-2, 2e-2, 3e-2))
    with pytest.raises(ValueError):
        osc.phase_expansion_fit(geo.equator(), steps=(1e-4, 1e-2, 2e-2, 3e-2))


# ----------------------------------------------------------------- Airy model

def test_airy_spec_validation():
    with pytest.raises(ValueError):
        osc.AirySpec(lam=-1.0)
    bad_c = osc.AirySpec(lam=100.0, c=lambda tau: -1.0)
    with pytest.raises(ValueError, match="strictly positive"):
        osc.airy_operator_norm(bad_c)


def test_airy_zero_amplitude_kills_operator():
    spec = osc.AirySpec(lam=100.0, amplitude=lambda tau, delta: 0.0)
    assert osc.airy_operator_norm(spec) == 0.0


def test_airy_step_and_dim_guards():
    spec = osc.AirySpec(lam=200.0)
    with pytest.raises(ValueError, match="too coarse"):
        osc.airy_operator_norm(spec, step=1.0)
    with pytest.raises(ValueError, match="exceeds the cap"):
        osc.airy_operator_norm(spec, max_matrix_dim=32)


def test_airy_norm_decays_at_caustic_rate():
    lo = osc.airy_operator_norm(osc.AirySpec(lam=200.0))
    hi = osc.airy_operator_norm(osc.AirySpec(lam=400.0))
    assert 0.0 < hi < lo
    rate = math.log(hi / lo) / math.log(2.0)
    assert -0.75 < rate < -0.55
