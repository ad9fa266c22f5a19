"""Explicit Laplace eigenfunction families on S^2, S^3 and the flat torus.

All sphere families are L^2-normalized: zonal and associated harmonics by
closed-form constants, highest-weight vectors by log-Gamma evaluation of the
Beta integral, and window-averaged combinations by one ambient quadrature.
Evaluation is vectorized over point arrays and stays finite up to degree
several thousand (ratio recurrences, no raw factorials).
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import geometry
from .profiles import unit_bump


def eigenvalue(dim, degree):
    """lambda = sqrt(n (n + d - 1)), so -Delta f = lambda^2 f for degree n."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return math.sqrt(degree * (degree + dim - 1))


def legendre_p(n, t):
    """Legendre P_n(t) by the three-term recurrence, vectorized in t."""
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.ones_like(t)
    p_prev = np.ones_like(t)
    p = t.copy()
    for k in range(1, n):
        p, p_prev = ((2 * k + 1) * t * p - k * p_prev) / (k + 1), p
    return p


def gegenbauer_u(n, t):
    """Chebyshev U_n(t) = C_n^{(1)}(t), the zonal kernel polynomial of S^3."""
    t = np.asarray(t, dtype=float)
    if n == 0:
        return np.ones_like(t)
    p_prev = np.ones_like(t)
    p = 2.0 * t
    for _ in range(1, n):
        p, p_prev = 2.0 * t * p - p_prev, p
    return p


# rescaled-recurrence bookkeeping: renormalize whenever a value passes BIG and
# fold the collected offsets back in log space at the end
_BIG = 1e150
_LOG_BIG = math.log(_BIG)


def _diag_rescaled(m_max):
    """(-1)^m prod_{k<=m} sqrt((2k+1)/(2k)) / sqrt(2): the diagonal with s^m removed.

    Grows like m^(1/4), so it stays comfortably in range; the s^m factor that
    would underflow for large m at interior points is reattached in log space
    by the callers.
    """
    out = np.empty(m_max + 1)
    out[0] = 1.0 / math.sqrt(2.0)
    for k in range(1, m_max + 1):
        out[k] = out[k - 1] * (-math.sqrt((2.0 * k + 1.0) / (2.0 * k)))
    return out


def assoc_legendre_norm(n, m, t):
    """Order-m normalized associated Legendre P-hat_n^m(t), int_{-1}^{1} P-hat^2 = 1.

    Fully normalized recurrence:
      P-hat_m^m     = prod_{k<=m} -sqrt((2k+1)/(2k)) sqrt(1-t^2) * 1/sqrt(2)
      P-hat_{m+1}^m = sqrt(2m+3) t P-hat_m^m
      P-hat_k^m     = a(k,m) t P-hat_{k-1}^m - b(k,m) P-hat_{k-2}^m
    with a = sqrt((4k^2-1)/(k^2-m^2)), b = sqrt((2k+1)(k-1-m)(k-1+m) /
    ((2k-3)(k-m)(k+m))) and the Condon-Shortley sign.  The s^m seed factor is
    carried in log space: for large m it underflows double range while the
    recurrence regrows it through the forbidden zone, so the naive form
    amplifies pure roundoff there.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    t = np.asarray(t, dtype=float)
    s = np.sqrt(np.maximum(0.0, 1.0 - t**2))
    seed = _diag_rescaled(m)[m]
    p = np.full_like(t, seed)
    offset = np.zeros_like(t)
    if n > m:
        p_prev = p
        p = math.sqrt(2.0 * m + 3.0) * t * p
        for k in range(m + 2, n + 1):
            a = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
            b = math.sqrt((2.0 * k + 1.0) * (k - 1.0 - m) * (k - 1.0 + m)
                          / ((2.0 * k - 3.0) * (k - m) * (k + m)))
            p, p_prev = a * t * p - b * p_prev, p
            hot = np.abs(p) > _BIG
            if np.any(hot):
                p = np.where(hot, p / _BIG, p)
                p_prev = np.where(hot, p_prev / _BIG, p_prev)
                offset = np.where(hot, offset + _LOG_BIG, offset)
    if m == 0:
        return p * np.exp(offset)
    with np.errstate(divide="ignore"):
        logs = offset + m * np.log(s)
    return np.where(s > 0.0, p * np.exp(logs), 0.0)


def assoc_legendre_norm_all(n, t0):
    """P-hat_n^m(t0) for every order m = 0..n at a single point t0.

    Runs the same rescaled recurrence as assoc_legendre_norm but batched over
    m, injecting the diagonal value at each degree step; O(n^2) work total.
    """
    t0 = float(t0)
    s = math.sqrt(max(0.0, 1.0 - t0 * t0))
    diag = _diag_rescaled(n)
    if n == 0:
        return diag.copy()
    cur = np.zeros(n + 1)
    prev = np.zeros(n + 1)
    offset = np.zeros(n + 1)
    cur[0] = diag[0]
    for k in range(1, n + 1):
        new = np.zeros(n + 1)
        if k >= 2:
            m = np.arange(0, k - 1)
            a = np.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
            b = np.sqrt((2.0 * k + 1.0) * (k - 1.0 - m) * (k - 1.0 + m)
                        / ((2.0 * k - 3.0) * (k - m) * (k + m)))
            new[m] = a * t0 * cur[m] - b * prev[m]
            hot = np.abs(new) > _BIG
            if np.any(hot):
                new[hot] /= _BIG
                cur[hot] /= _BIG
                offset[hot] += _LOG_BIG
        new[k - 1] = math.sqrt(2.0 * k + 1.0) * t0 * diag[k - 1]
        new[k] = diag[k]
        prev, cur = cur, new
    ms = np.arange(n + 1, dtype=float)
    if s == 0.0:
        out = np.zeros(n + 1)
        out[0] = cur[0] * math.exp(offset[0])
        return out
    return cur * np.exp(offset + ms * math.log(s))


def _points2d(points):
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    return pts, single


def eval_zonal(dim, degree, pole, points):
    """Normalized zonal harmonic of degree n about `pole`, evaluated at points.

    S^2: sqrt((2n+1)/4pi) P_n(<x, pole>);  S^3: U_n(<x, pole>) / sqrt(2 pi^2).
    """
    if dim not in (2, 3):
        raise ValueError("zonal families are implemented on S^2 and S^3")
    pole = geometry.as_unit_vector(pole)
    if pole.size != dim + 1:
        raise ValueError("pole dimension does not match the sphere")
    pts, single = _points2d(points)
    t = np.clip(pts @ pole, -1.0, 1.0)
    if dim == 2:
        vals = math.sqrt((2.0 * degree + 1.0) / (4.0 * math.pi)) * legendre_p(degree, t)
    else:
        vals = gegenbauer_u(degree, t) / math.sqrt(2.0 * math.pi**2)
    return vals[0] if single else vals


def eval_assoc_harmonic(degree, order, points):
    """Full spherical harmonic Y_n^m on S^2 (z-axis pole), L^2-normalized.

    Y_n^m = P-hat_n^m(cos theta) e^{i m phi} / sqrt(2 pi); negative orders via
    Y_n^{-m} = (-1)^m conj(Y_n^m).
    """
    n, m = degree, order
    if abs(m) > n:
        raise ValueError(f"order |m| = {abs(m)} exceeds degree n = {n}")
    pts, single = _points2d(points)
    t = np.clip(pts[:, 2], -1.0, 1.0)
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    am = abs(m)
    radial = assoc_legendre_norm(n, am, t) / math.sqrt(2.0 * math.pi)
    vals = radial * np.exp(1j * am * phi)
    if m < 0:
        vals = (-1) ** am * np.conj(vals)
    return vals[0] if single else vals


def highest_weight_log_const(dim, degree):
    """log of c_{n,d} with ||c (x1+i x2)^n||_{L^2(S^d)} = 1, via log-Gamma.

    int_{S^d} |x1+i x2|^{2n} dsigma = 2 pi^{(d+1)/2} n! / Gamma(n + (d+1)/2);
    for d=2 this is the Beta integral 2 pi 2^{2n+1} (n!)^2 / (2n+1)!.
    """
    n = degree
    if dim == 2:
        log_integral = (math.log(2.0 * math.pi) + (2 * n + 1) * math.log(2.0)
                        + 2.0 * math.lgamma(n + 1) - math.lgamma(2 * n + 2))
    elif dim == 3:
        log_integral = math.log(2.0 * math.pi**2) - math.log(n + 1.0)
    else:
        raise ValueError("highest-weight families are implemented on S^2 and S^3")
    return -0.5 * log_integral


def eval_highest_weight(dim, degree, points):
    """c_{n,d} (x1 + i x2)^n, the equator-concentrating Gaussian beam."""
    logc = highest_weight_log_const(dim, degree)
    pts, single = _points2d(points)
    z = pts[:, 0] + 1j * pts[:, 1]
    rho = np.abs(z)
    vals = np.zeros(pts.shape[0], dtype=complex)
    pos = rho > 0.0
    if degree == 0:
        vals[:] = math.exp(logc)
    else:
        vals[pos] = np.exp(logc + degree * np.log(rho[pos])) * np.exp(1j * degree * np.angle(z[pos]))
    return vals[0] if single else vals


def averaged_window(degree, delta):
    """Half-width delta * n^{-1/3} of the tilt-angle window."""
    w = delta * degree ** (-1.0 / 3.0)
    if w > math.pi:
        raise ValueError("averaging window exceeds [-pi, pi]; shrink delta")
    return w


def averaged_node_count(degree):
    """Gauss-Legendre node count 32 + 4 n^{1/3} for the tilt average."""
    return 32 + int(math.ceil(4.0 * degree ** (1.0 / 3.0)))


def eval_averaged_raw(degree, delta, points, profile=unit_bump):
    """Window average  int Psi(phi/w) (x1 + i(cos phi x2 + sin phi x3))^n dphi.

    Each tilted beam is a rotation of the highest-weight vector about the
    x1-axis, so any finite quadrature of this integral is still an exact
    degree-n harmonic; Gauss-Legendre node placement only sets how closely it
    tracks the continuum average.  Unnormalized.
    """
    w = averaged_window(degree, delta)
    pts, single = _points2d(points)
    nodes, wts = np.polynomial.legendre.leggauss(averaged_node_count(degree))
    phis = w * nodes
    logc = highest_weight_log_const(2, degree)
    out = np.zeros(pts.shape[0], dtype=complex)
    for phi, wt in zip(phis, w * wts):
        y = math.cos(phi) * pts[:, 1] + math.sin(phi) * pts[:, 2]
        z = pts[:, 0] + 1j * y
        rho = np.abs(z)
        vals = np.zeros_like(out)
        pos = rho > 0.0
        vals[pos] = np.exp(logc + degree * np.log(rho[pos])) * np.exp(1j * degree * np.angle(z[pos]))
        out += wt * float(profile(np.array([phi / w]))[0]) * vals
    return out[0] if single else out


class _SphereFamily:
    """Shared surface for the sphere families: callable, graded, normalized."""

    def ambient_grid(self):
        res = 2 * self.degree + 16
        return geometry.sphere_grid(self.dim, res)

    @property
    def eigenvalue(self):
        return eigenvalue(self.dim, self.degree)


@dataclass(frozen=True, eq=False)
class Zonal(_SphereFamily):
    dim: int
    degree: int
    pole: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pole", geometry.as_unit_vector(self.pole))
        if self.pole.size != self.dim + 1:
            raise ValueError("pole dimension does not match the sphere")

    def __call__(self, points):
        return eval_zonal(self.dim, self.degree, self.pole, points)

    def ambient_grid(self):
        # zonal modulus is constant transverse to the pole axis: the reduced
        # meridian rule integrates |Z|^2 exactly at any dimension
        return geometry.zonal_grid(self.dim, self.pole, 2 * self.degree + 16)


@dataclass(frozen=True, eq=False)
class AssocHarmonic(_SphereFamily):
    degree: int
    order: int
    dim: int = 2

    def __post_init__(self):
        if self.dim != 2:
            raise ValueError("associated harmonics are implemented on S^2")
        if abs(self.order) > self.degree:
            raise ValueError("order exceeds degree")

    def __call__(self, points):
        return eval_assoc_harmonic(self.degree, self.order, points)

    def ambient_grid(self):
        # |Y_n^m| is independent of phi, so a meridian rule suffices
        return geometry.zonal_grid(2, np.array([0.0, 0.0, 1.0]), 2 * self.degree + 16)


@dataclass(frozen=True, eq=False)
class HighestWeight(_SphereFamily):
    dim: int
    degree: int

    def __call__(self, points):
        return eval_highest_weight(self.dim, self.degree, points)

    def ambient_grid(self):
        # |c z^n| depends only on |x1+i x2|: reduced rules are exact
        if self.dim == 2:
            return geometry.zonal_grid(2, np.array([0.0, 0.0, 1.0]), 2 * self.degree + 16)
        return geometry.polar_pair_grid(2 * self.degree + 16)


@dataclass(frozen=True, eq=False)
class Averaged(_SphereFamily):
    """Tilt-averaged beam: normalized numerically on its ambient grid."""

    degree: int
    delta: float
    dim: int = 2

    def __post_init__(self):
        if self.dim != 2:
            raise ValueError("averaged beams are implemented on S^2")
        averaged_window(self.degree, self.delta)  # validates the window

    @cached_property
    def _scale(self):
        grid = self.ambient_grid()
        vals = eval_averaged_raw(self.degree, self.delta, grid.nodes)
        norm = math.sqrt(float(np.sum(grid.weights * np.abs(vals) ** 2)))
        if norm == 0.0:
            raise ValueError("degenerate averaged beam (zero norm)")
        return 1.0 / norm

    def __call__(self, points):
        return self._scale * eval_averaged_raw(self.degree, self.delta, points)


@dataclass(frozen=True, eq=False)
class TorusSum:
    """Trigonometric eigenfunction sum_j c_j e^{i <k_j, x>} on one lattice circle.

    All frequencies must satisfy |k_j|^2 = N for a single N; the eigenvalue is
    sqrt(N).  Plancherel: ||f||_{L^2(T^2, dx/(2pi)^2)} = sqrt(sum |c_j|^2).
    """

    freqs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.int64)
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if freqs.ndim != 2 or freqs.shape[1] != 2 or freqs.shape[0] != coeffs.shape[0]:
            raise ValueError("freqs must be (k, 2) integers matching coeffs")
        if freqs.shape[0] == 0:
            raise ValueError("empty frequency set")
        norms = np.sum(freqs.astype(np.int64) ** 2, axis=1)
        if np.any(norms != norms[0]):
            raise ValueError("frequencies lie on different circles |k|^2 = N")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def circle_number(self):
        return int(np.sum(self.freqs[0] ** 2))

    @property
    def eigenvalue(self):
        return math.sqrt(self.circle_number)

    @property
    def l2_norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def __call__(self, xy):
        pts = np.atleast_2d(np.asarray(xy, dtype=float))
        phase = pts @ self.freqs.T.astype(float)
        vals = np.exp(1j * phase) @ self.coeffs
        return vals[0] if np.asarray(xy).ndim == 1 else vals
