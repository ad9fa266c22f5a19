"""Restricted L^p norms of eigenfunctions and growth-exponent fits.

The measurement pipeline is: evaluate a family member on a curve grid dense
enough to resolve its oscillation (>= 20 points per wavelength), form the
restricted L^p norm, divide by the ambient L^2 norm, and regress the log of
that ratio against log(lambda) across a geometric ladder of degrees.  The
theoretical_exponent oracle carries the sharp growth rates the fits are
compared to.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import geometry, harmonics
from .geometry import CurveKind

CURVE_FLOOR = 4096
POINTS_PER_WAVELENGTH = 20
SWEEP_RATIO = math.sqrt(2.0)  # degree ladder spacing


def required_curve_points(lam):
    """Oscillation-resolving floor max(4096, 20 lambda) for 1-d curve grids."""
    return max(CURVE_FLOOR, int(math.ceil(POINTS_PER_WAVELENGTH * lam)))


def lp_norm_weighted(values, weights, p):
    """(sum w |v|^p)^(1/p), or the grid max for p = inf (shared norm kernel)."""
    mags = np.abs(np.asarray(values))
    if math.isinf(p):
        return float(np.max(mags))
    if p <= 0:
        raise ValueError("p must be positive or inf")
    return float(np.sum(np.asarray(weights) * mags**p) ** (1.0 / p))


def _family_lambda(f, lam):
    if lam is not None:
        return float(lam)
    lam_attr = getattr(f, "eigenvalue", None)
    return float(lam_attr) if lam_attr is not None else 0.0


def lp_norm_on_curve(f, curve, p, num_points=None, lam=None):
    """Restricted L^p norm of f over a curve (trapezoid in arc length).

    For 1-d curves the grid must satisfy N >= max(4096, 20 lambda); lambda is
    read from f.eigenvalue unless passed explicitly.  p = inf takes the grid
    max over N and 2N nodes (one doubling as a stability confirmation).  The
    great subsphere uses the product surface rule instead, with `num_points`
    interpreted as its resolution.
    """
    lam_val = _family_lambda(f, lam)
    if curve.kind is CurveKind.GREAT_SUBSPHERE:
        res = num_points if num_points is not None else max(64, int(math.ceil(2 * lam_val)) + 16)
        if res < max(4, int(math.ceil(2 * lam_val))):
            raise ValueError(
                f"subsphere resolution {res} underresolves lambda={lam_val:g}; "
                f"need at least {max(4, int(math.ceil(2 * lam_val)))}")
        grid = geometry.curve_grid(curve, res)
        return lp_norm_weighted(f(grid.nodes), grid.weights, p)
    floor = required_curve_points(lam_val)
    n = num_points if num_points is not None else floor
    if n < floor:
        raise ValueError(f"curve grid N={n} underresolves lambda={lam_val:g}; need N >= {floor}")
    grid = geometry.curve_grid(curve, n)
    if math.isinf(p):
        fine = geometry.curve_grid(curve, 2 * n)
        return max(lp_norm_weighted(f(grid.nodes), grid.weights, p),
                   lp_norm_weighted(f(fine.nodes), fine.weights, p))
    return lp_norm_weighted(f(grid.nodes), grid.weights, p)


def l2_norm_on_manifold(f, grid):
    """Ambient L^2 norm on a quadrature grid (caller picks adequate resolution)."""
    return lp_norm_weighted(f(grid.nodes), grid.weights, 2)


@dataclass(frozen=True)
class NormSample:
    degree: int
    lam: float
    p: float
    restricted_norm: float
    ambient_norm: float

    def __post_init__(self):
        if self.restricted_norm < 0 or self.ambient_norm <= 0:
            raise ValueError("norms must be positive")

    @property
    def ratio(self):
        return self.restricted_norm / self.ambient_norm


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual: float
    theoretical: float | None
    tolerance: float | None
    n_samples: int

    @property
    def verdict(self):
        if self.theoretical is None or self.tolerance is None:
            return "no_contract"
        return "pass" if abs(self.slope - self.theoretical) <= self.tolerance else "fail"


def fit_exponent(samples, theoretical=None, tolerance=None):
    """Least-squares slope of log(ratio) against log(lambda) over >= 4 samples."""
    if len(samples) < 4:
        raise ValueError("exponent fit needs at least 4 samples")
    lams = np.array([s.lam for s in samples])
    ratios = np.array([s.ratio for s in samples])
    if np.any(ratios <= 0.0) or np.any(lams <= 0.0):
        raise ValueError("ratios and eigenvalues must be positive for a log-log fit")
    x = np.log(lams)
    y = np.log(ratios)
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return ExponentFit(float(coef[1]), float(coef[0]), rms, theoretical, tolerance, len(samples))


@dataclass(frozen=True)
class ExponentOracle:
    value: float
    log_endpoint: bool


def theoretical_exponent(dim, k, p, curved=False):
    """Sharp restriction growth exponent for k-submanifolds of S^dim at L^p.

    Hypersurfaces (k = d-1): (d-1)/2 - (d-1)/p above the critical index
    p0 = 2d/(d-1) and (d-1)/4 - (d-2)/(2p) below it; both branches meet at
    p0, which carries the log-loss flag.  Codimension 2 (k = d-2):
    (d-1)/2 - (d-2)/p for p > 2, log-flagged at p = 2.  Lower k:
    (d-1)/2 - k/p.  For curves on S^2, `curved=True` selects the improved
    exponent 1/3 - 1/(3p) available below p = 4 when the geodesic curvature
    never vanishes.
    """
    d = dim
    if not (isinstance(d, int) and d >= 2):
        raise ValueError("dimension must be an integer >= 2")
    if not (isinstance(k, int) and 1 <= k <= d - 1):
        raise ValueError(f"submanifold dimension k must satisfy 1 <= k <= {d - 1}")
    if not (p >= 2.0):
        raise ValueError("exponent p must lie in [2, inf]")
    if curved and (d, k) != (2, 1):
        raise ValueError("curved refinement only applies to curves on S^2")
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    if k == d - 1:
        p0 = 2.0 * d / (d - 1.0)
        if math.isclose(p, p0, rel_tol=0.0, abs_tol=1e-12):
            return ExponentOracle((d - 1.0) / (2.0 * d), True)
        if p > p0:
            return ExponentOracle((d - 1.0) / 2.0 - (d - 1.0) * inv_p, False)
        if curved:
            return ExponentOracle(1.0 / 3.0 - inv_p / 3.0, False)
        return ExponentOracle((d - 1.0) / 4.0 - (d - 2.0) * inv_p / 2.0, False)
    if k == d - 2:
        if math.isclose(p, 2.0, rel_tol=0.0, abs_tol=1e-12):
            return ExponentOracle(0.5, True)
        return ExponentOracle((d - 1.0) / 2.0 - (d - 2.0) * inv_p, False)
    return ExponentOracle((d - 1.0) / 2.0 - k * inv_p, False)


def geometric_degrees(lo, hi, ratio=SWEEP_RATIO):
    """Geometric degree ladder lo..hi with the standard sqrt(2) spacing."""
    if lo < 4 or hi < lo:
        raise ValueError("need 4 <= lo <= hi")
    out = []
    x = float(lo)
    while x < hi - 0.5:
        n = int(round(x))
        if not out or n > out[-1]:
            out.append(n)
        x *= ratio
    if not out or out[-1] != hi:
        out.append(hi)
    return out


def _validate_degrees(degrees):
    if len(degrees) == 0:
        raise ValueError("empty degree list")
    if any(n < 4 for n in degrees):
        raise ValueError("degrees must be >= 4")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly increasing")


def sweep(family_factory, curve, p, degrees, num_points=None):
    """One NormSample per degree: restricted L^p over ambient L^2, sorted by n.

    family_factory(n) must return a callable family carrying .dim, .eigenvalue
    and .ambient_grid().  Deterministic: no randomness anywhere in the path.
    """
    _validate_degrees(degrees)
    out = []
    for n in degrees:
        fam = family_factory(n)
        restricted = lp_norm_on_curve(fam, curve, p, num_points=num_points)
        ambient = l2_norm_on_manifold(fam, fam.ambient_grid())
        out.append(NormSample(n, fam.eigenvalue, float(p), restricted, ambient))
    return out


@dataclass(frozen=True)
class TurningPointResult:
    samples: list
    orders: list  # maximizing order m per degree


def turning_point_sweep(colatitude, degrees, m_low_fraction=0.5):
    """Max restricted L^2 norm over orders m in [m_low n, n] on one latitude circle.

    For each degree the scan finds the order whose oscillation turns exactly
    at the circle's colatitude (the restricted norm peaks there, at the Airy
    scale lambda^{1/6}); the winning member is then pushed through the
    standard curve-quadrature path.  The exhaustive m scan is the oracle: on
    a latitude circle |Y_n^m| is constant, proportional to the normalized
    associated Legendre value at cos(theta0).
    """
    _validate_degrees(degrees)
    curve = geometry.latitude_circle(colatitude)
    t0 = math.cos(colatitude)
    samples, orders = [], []
    for n in degrees:
        row = np.abs(harmonics.assoc_legendre_norm_all(n, t0))
        m_lo = int(math.ceil(m_low_fraction * n))
        m_star = m_lo + int(np.argmax(row[m_lo:n + 1]))
        fam = harmonics.AssocHarmonic(n, m_star)
        restricted = lp_norm_on_curve(fam, curve, 2)
        ambient = l2_norm_on_manifold(fam, fam.ambient_grid())
        samples.append(NormSample(n, fam.eigenvalue, 2.0, restricted, ambient))
        orders.append(m_star)
    return TurningPointResult(samples, orders)


@dataclass(frozen=True)
class EnvelopeReport:
    constant: float
    worst_excess: float  # max over samples of E_n / C; <= 1 when the bound holds
    ok: bool


def envelope_check(samples, exponent, slack=0.02):
    """Check ratio(n) <= C lambda^(exponent + slack) with C set by the first sample.

    The slack absorbs prefactor wobble: a true power law of the claimed
    exponent makes E_n = ratio / lambda^(exponent+slack) decreasing, so
    calibrating C at the smallest degree is the strictest sensible anchoring.
    """
    if not samples:
        raise ValueError("empty sample list")
    env = [s.ratio / s.lam ** (exponent + slack) for s in samples]
    c = env[0]
    worst = max(e / c for e in env)
    return EnvelopeReport(c, worst, worst <= 1.0 + 1e-9)
