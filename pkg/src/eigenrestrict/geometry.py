"""Closed-form geometry on round unit spheres.

Distances, the exponential map, arc-length parametrized closed curves
(great circles, latitude circles, and the great 2-subsphere of S^3), and
quadrature grids whose weights sum exactly to the measure of the target.
Everything here is pure and immutable; downstream modules rely on these
functions being deterministic.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

UNIT_TOL = 1e-12
TANGENT_TOL = 1e-10
# Central-difference step for derivative checks: truncation O(h^2) ~ 1e-10,
# rounding ~ 1e-16/h ~ 1e-11, so deviations land comfortably below 1e-6.
FD_STEP = 1e-5


def as_unit_vector(coords):
    """Validate and return a unit vector in R^(d+1) as a float array."""
    x = np.asarray(coords, dtype=float)
    if x.ndim != 1 or x.size < 3:
        raise ValueError(f"expected a vector in R^(d+1) with d >= 2, got shape {x.shape}")
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"not a unit vector (|x| = {norm!r}, tolerance {UNIT_TOL})")
    return x


def sphere_distance(x, y):
    """Geodesic distance on the unit sphere, arccos of the clamped inner product."""
    x = as_unit_vector(x)
    y = as_unit_vector(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.arccos(np.clip(np.dot(x, y), -1.0, 1.0)))


def _distances_to(points, y):
    """Vectorized d(points[i], y) without per-point validation (internal hot path)."""
    return np.arccos(np.clip(points @ y, -1.0, 1.0))


def exp_map(x, v):
    """Exponential map exp_x(v) = cos|v| x + sin|v| v/|v| for tangent v at x."""
    x = as_unit_vector(x)
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {v.shape}")
    r = float(np.linalg.norm(v))
    if abs(float(np.dot(v, x))) > TANGENT_TOL * max(1.0, r):
        raise ValueError("v is not tangent to the sphere at x")
    if r == 0.0:
        return x.copy()
    return math.cos(r) * x + math.sin(r) * (v / r)


def tangent_basis(x):
    """Deterministic orthonormal tangent basis (u1, u2) at a point of S^2."""
    x = as_unit_vector(x)
    if x.size != 3:
        raise ValueError("tangent_basis is for S^2 points only")
    k = int(np.argmin(np.abs(x)))
    e = np.zeros(3)
    e[k] = 1.0
    u1 = e - x[k] * x
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(x, u1)
    return u1, u2


class CurveKind(Enum):
    GREAT_CIRCLE = "great-circle"
    LATITUDE_CIRCLE = "latitude-circle"
    GREAT_SUBSPHERE = "great-subsphere"


@dataclass(frozen=True, eq=False)
class CurveSpec:
    """A closed curve (or great subsphere) with an orthonormal frame.

    frame rows form an orthonormal basis of the ambient R^(d+1).  Great
    circles run through frame rows e1, e2; latitude circles sit at
    colatitude theta0 from the axis e3; the great subsphere spans e1..e3
    inside R^4.  Arc-length parametrization throughout, so |gamma'| = 1.
    """

    kind: CurveKind
    frame: np.ndarray
    colatitude: float | None = None

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=float)
        if frame.ndim != 2 or frame.shape[0] != frame.shape[1] or frame.shape[0] < 3:
            raise ValueError("frame must be a square orthonormal basis of R^(d+1)")
        if not np.allclose(frame @ frame.T, np.eye(frame.shape[0]), atol=1e-12):
            raise ValueError("frame rows are not orthonormal within 1e-12")
        object.__setattr__(self, "frame", frame)
        if self.kind is CurveKind.LATITUDE_CIRCLE:
            if self.colatitude is None or not (0.0 < self.colatitude <= math.pi / 2):
                raise ValueError("latitude circle needs colatitude in (0, pi/2]")
        elif self.colatitude is not None:
            raise ValueError("colatitude only applies to latitude circles")
        if self.kind is CurveKind.GREAT_SUBSPHERE and frame.shape[0] != 4:
            raise ValueError("great subsphere lives in S^3, frame must be 4x4")

    @property
    def ambient_dim(self):
        """Dimension d of the ambient sphere S^d."""
        return self.frame.shape[0] - 1

    @property
    def length(self):
        if self.kind is CurveKind.GREAT_CIRCLE:
            return 2.0 * math.pi
        if self.kind is CurveKind.LATITUDE_CIRCLE:
            return 2.0 * math.pi * math.sin(self.colatitude)
        raise ValueError("a great subsphere has no arc length; use its area 4*pi")

    @property
    def measure(self):
        """Total measure: curve length, or area for the great subsphere."""
        if self.kind is CurveKind.GREAT_SUBSPHERE:
            return 4.0 * math.pi
        return self.length


def equator(dim=2):
    """Great circle through e1, e2 of R^(dim+1)."""
    return CurveSpec(CurveKind.GREAT_CIRCLE, np.eye(dim + 1))


def latitude_circle(colatitude, frame=None):
    f = np.eye(3) if frame is None else frame
    return CurveSpec(CurveKind.LATITUDE_CIRCLE, f, colatitude)


def great_subsphere(frame=None):
    f = np.eye(4) if frame is None else frame
    return CurveSpec(CurveKind.GREAT_SUBSPHERE, f)


def curve_points(curve, s):
    """Points gamma(s) for an array of arc-length parameters (wraps mod L)."""
    s = np.asarray(s, dtype=float)
    f = curve.frame
    if curve.kind is CurveKind.GREAT_CIRCLE:
        return np.outer(np.cos(s), f[0]) + np.outer(np.sin(s), f[1])
    if curve.kind is CurveKind.LATITUDE_CIRCLE:
        st, ct = math.sin(curve.colatitude), math.cos(curve.colatitude)
        a = s / st
        return st * (np.outer(np.cos(a), f[0]) + np.outer(np.sin(a), f[1])) + ct * f[2]
    raise ValueError("curve_points applies to 1-d curves, not the great subsphere")


def curve_point(curve, s):
    return curve_points(curve, np.array([float(s)]))[0]


def curve_tangent(curve, s):
    """Unit tangent gamma'(s) (1-d curves only)."""
    s = float(s)
    f = curve.frame
    if curve.kind is CurveKind.GREAT_CIRCLE:
        return -math.sin(s) * f[0] + math.cos(s) * f[1]
    if curve.kind is CurveKind.LATITUDE_CIRCLE:
        a = s / math.sin(curve.colatitude)
        return -math.sin(a) * f[0] + math.cos(a) * f[1]
    raise ValueError("curve_tangent applies to 1-d curves")


def geodesic_curvature(curve, s=0.0):
    """Geodesic curvature: 0 for great circles, cot(theta0) for latitude circles."""
    if curve.kind is CurveKind.GREAT_CIRCLE:
        return 0.0
    if curve.kind is CurveKind.LATITUDE_CIRCLE:
        return 1.0 / math.tan(curve.colatitude)
    raise ValueError("geodesic curvature applies to 1-d curves")


def distance_gradient_check(x, r, omega, h=FD_STEP):
    """Deviation of the numerical gradient of psi_r from omega at the base point.

    psi_r(z) = -d(z, exp_x(r omega)) is differentiated at z = x by central
    differences in normal coordinates; the exact gradient is omega itself.
    Returns the Euclidean norm of (numerical gradient - omega) in the
    coordinate basis.
    """
    x = as_unit_vector(x)
    if not (1e-2 <= r < math.pi / 2):
        raise ValueError("r must lie in [0.01, pi/2) so the distance stays smooth")
    omega = np.asarray(omega, dtype=float)
    if abs(float(np.dot(omega, x))) > TANGENT_TOL:
        raise ValueError("omega is not tangent at x")
    nrm = float(np.linalg.norm(omega))
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError("omega must be a unit tangent direction")
    omega = omega / nrm
    y = exp_map(x, r * omega)
    u1, u2 = tangent_basis(x)
    grad = np.empty(2)
    for i, u in enumerate((u1, u2)):
        d_plus = sphere_distance(exp_map(x, h * u), y)
        d_minus = sphere_distance(exp_map(x, -h * u), y)
        grad[i] = -(d_plus - d_minus) / (2.0 * h)
    target = np.array([float(np.dot(omega, u1)), float(np.dot(omega, u2))])
    return float(np.linalg.norm(grad - target))


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Nodes on the target (rows of `nodes`) with positive weights.

    For curve grids `params` carries the arc-length parameters alongside the
    embedded points.
    """

    nodes: np.ndarray
    weights: np.ndarray
    params: np.ndarray | None = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if weights.ndim != 1 or nodes.shape[0] != weights.shape[0]:
            raise ValueError("nodes and weights must have matching leading dimension")
        if np.any(weights <= 0.0):
            raise ValueError("quadrature weights must be strictly positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def total(self):
        return float(np.sum(self.weights))


def gauss_legendre(n):
    """Nodes and weights on [-1, 1], exact for polynomials of degree 2n-1."""
    return np.polynomial.legendre.leggauss(n)


def gauss_chebyshev2(n):
    """Nodes/weights for int_{-1}^{1} f(u) sqrt(1-u^2) du, exact to degree 2n-1.

    u_k = cos(k pi/(n+1)), w_k = pi/(n+1) sin^2(k pi/(n+1)).  This is the
    natural rule for the sin^2(chi) d(chi) factor of the S^3 volume element.
    """
    k = np.arange(1, n + 1)
    theta = k * math.pi / (n + 1)
    return np.cos(theta), math.pi / (n + 1) * np.sin(theta) ** 2


def sphere_grid(dim, resolution):
    """Product quadrature grid on S^dim with weights summing to its measure.

    S^2: Gauss-Legendre in cos(theta) x uniform phi (resolution x 2*resolution
    nodes), exact for harmonic polynomials of degree < 2*resolution.  S^3 adds
    a Gauss-Chebyshev (second kind) factor in cos(chi) for the sin^2 density.
    """
    if resolution < 4:
        raise ValueError("grid resolution must be at least 4")
    if dim == 2:
        t, wt = gauss_legendre(resolution)
        nphi = 2 * resolution
        phi = 2.0 * math.pi * np.arange(nphi) / nphi
        wphi = 2.0 * math.pi / nphi
        st = np.sqrt(1.0 - t**2)
        x = np.outer(st, np.cos(phi)).ravel()
        y = np.outer(st, np.sin(phi)).ravel()
        z = np.repeat(t, nphi)
        nodes = np.column_stack([x, y, z])
        weights = np.repeat(wt * wphi, nphi)
        return QuadratureGrid(nodes, weights)
    if dim == 3:
        return sphere3_grid(resolution, resolution, 2 * resolution)
    raise ValueError("only S^2 and S^3 grids are implemented")


def sphere3_grid(n_chi, n_theta, n_phi):
    """S^3 product grid with independent per-axis resolutions (all >= 1 node).

    Coordinates: x = (cos chi, sin chi * xi) with xi in S^2; volume element
    sin^2(chi) d(chi) d(sigma_{S^2}).  Weight sum is exactly 2 pi^2.
    """
    if min(n_chi, n_theta, n_phi) < 1:
        raise ValueError("each axis needs at least one node")
    u, wu = gauss_chebyshev2(n_chi)
    t, wt = gauss_legendre(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    wphi = 2.0 * math.pi / n_phi
    st = np.sqrt(1.0 - t**2)
    # S^2 factor nodes
    xi = np.column_stack([
        np.outer(st, np.cos(phi)).ravel(),
        np.outer(st, np.sin(phi)).ravel(),
        np.repeat(t, n_phi),
    ])
    wxi = np.repeat(wt * wphi, n_phi)
    su = np.sqrt(1.0 - u**2)
    nodes = np.empty((n_chi * xi.shape[0], 4))
    nodes[:, 0] = np.repeat(u, xi.shape[0])
    nodes[:, 1:] = np.repeat(su, xi.shape[0])[:, None] * np.tile(xi, (n_chi, 1))
    weights = np.repeat(wu, xi.shape[0]) * np.tile(wxi, n_chi)
    return QuadratureGrid(nodes, weights)


def curve_grid(curve, n):
    """Uniform arc-length grid on a closed curve (or product grid on the subsphere)."""
    if n < 4:
        raise ValueError("curve grid needs at least 4 nodes")
    if curve.kind is CurveKind.GREAT_SUBSPHERE:
        base = sphere_grid(2, n)
        nodes = base.nodes @ curve.frame[:3]
        return QuadratureGrid(nodes, base.weights)
    length = curve.length
    s = length * np.arange(n) / n
    nodes = curve_points(curve, s)
    weights = np.full(n, length / n)
    return QuadratureGrid(nodes, weights, params=s)


def polar_pair_grid(n):
    """Reduced S^3 grid exact for integrands depending only on |x1 + i x2|.

    In the split x = (cos(a) e^{i b1}, sin(a) e^{i b2}) the measure is
    cos(a) sin(a) da db1 db2 and |x1+i x2| = cos(a), so with v = cos^2(a) the
    integral reduces to 2 pi^2 int_0^1 f(sqrt(v)) dv, handled by Gauss-Legendre
    in v.  Weight sum is exactly 2 pi^2.
    """
    if n < 4:
        raise ValueError("grid needs at least 4 nodes")
    t, w = gauss_legendre(n)
    v = 0.5 * (t + 1.0)
    c = np.sqrt(v)
    s = np.sqrt(1.0 - v)
    nodes = np.column_stack([c, np.zeros(n), s, np.zeros(n)])
    weights = math.pi**2 * w
    return QuadratureGrid(nodes, weights)


def zonal_grid(dim, pole, n):
    """Reduced grid along a meridian from `pole`, exact for zonal integrands.

    For f depending only on t = <x, pole>, the transverse integrals are
    constant, so int f = |S^(dim-1)| * int f(t) (1-t^2)^((dim-2)/2) dt.  The
    returned nodes lie on one meridian and the weights absorb the transverse
    measure; weight sums are still the full 4*pi (S^2) or 2*pi^2 (S^3).
    """
    pole = as_unit_vector(pole)
    if n < 4:
        raise ValueError("zonal grid needs at least 4 nodes")
    if dim == 2:
        t, w = gauss_legendre(n)
        w = 2.0 * math.pi * w
    elif dim == 3:
        t, w = gauss_chebyshev2(n)
        w = 4.0 * math.pi * w
    else:
        raise ValueError("only S^2 and S^3 are supported")
    k = int(np.argmin(np.abs(pole)))
    e = np.zeros(pole.size)
    e[k] = 1.0
    u1 = e - pole[k] * pole
    u1 /= np.linalg.norm(u1)
    nodes = np.outer(t, pole) + np.outer(np.sqrt(1.0 - t**2), u1)
    return QuadratureGrid(nodes, np.asarray(w))
