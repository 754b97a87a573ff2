"""Shared numerical kernels.

Orthonormal Hermite-function evaluation, spatial quadrature grids, time
grids, finite-difference stencils, adaptive Simpson quadrature, and a
branch-tracked (continuous) arctangent used for phase unwrapping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

N_MAX = 200  # highest Fock index supported by the normalized recurrence


def hermite_weighted(n: int, x):
    """Orthonormal Hermite function h_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).

    Evaluated with the normalized three-term recurrence

        h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1},

    which never forms H_n or the factorial separately, so it stays finite
    for any n up to N_MAX.  Satisfies int h_n h_m dx = delta_nm.
    """
    if n < 0 or n > N_MAX:
        raise DomainError(f"Fock index n must be in [0, {N_MAX}], got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.zeros_like(x)
    h = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    for k in range(n):
        h, h_prev = x * math.sqrt(2.0 / (k + 1)) * h - math.sqrt(k / (k + 1)) * h_prev, h
    return h


@dataclass(frozen=True)
class QuadratureGrid:
    """Symmetric quadrature rule on [-half_width, half_width]."""

    points: np.ndarray
    weights: np.ndarray
    kind: str
    half_width: float

    def integrate(self, values):
        return np.asarray(values) @ self.weights

    @property
    def spacing(self) -> float:
        """Uniform step of a trapezoid grid."""
        if self.kind != "uniform-trapezoid":
            raise DomainError("spacing is only defined for uniform-trapezoid grids")
        return float(self.points[1] - self.points[0])


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time sampling on [t_start, t_end] with n_steps intervals."""

    t_start: float
    t_end: float
    n_steps: int
    times: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise DomainError(f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]")
        if self.n_steps < 1:
            raise DomainError(f"n_steps must be >= 1, got {self.n_steps}")
        object.__setattr__(self, "times",
                           np.linspace(self.t_start, self.t_end, self.n_steps + 1))

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps


def make_grid(kind: str, half_width: float, n_points: int) -> QuadratureGrid:
    """Build a symmetric quadrature grid on [-half_width, half_width].

    With half_width >= 8 standard deviations of a unit Gaussian, either kind
    integrates the Gaussian to 1 within 1e-10.
    """
    if half_width <= 0:
        raise DomainError(f"half_width must be positive, got {half_width}")
    if n_points < 16:
        raise DomainError(f"n_points must be >= 16, got {n_points}")
    if kind == "uniform-trapezoid":
        pts = np.linspace(-half_width, half_width, n_points)
        h = pts[1] - pts[0]
        w = np.full(n_points, h)
        w[0] = w[-1] = 0.5 * h
    elif kind == "gauss-legendre-on-interval":
        x, w = np.polynomial.legendre.leggauss(n_points)
        pts = x * half_width
        w = w * half_width
    else:
        raise DomainError(f"unknown grid kind {kind!r}")
    return QuadratureGrid(points=pts, weights=w, kind=kind, half_width=float(half_width))


def default_half_width(f_max: float, n_max: int, eps=1.0, hbar=1.0, omega=1.0) -> float:
    """Half-width covering the widest instantaneous packet with a 6-sigma margin.

    sigma = sqrt(f_max * hbar / (eps * omega)) is the ground-state width at
    the broadest instant; the classical turning point sits at sqrt(2n+1) sigma.
    """
    sigma = math.sqrt(f_max * hbar / (eps * omega))
    return max(8.0, (math.sqrt(2 * n_max + 1) + 6.0) * sigma)


def wrap_to_pi(d):
    """Map an angle difference to (-pi, pi]."""
    return np.arctan2(np.sin(d), np.cos(d))


def unwrap_atan(c_coef: float, a_coef: float, theta):
    """Continuous-in-theta branch of arctan(c_coef + a_coef * tan(theta)), a_coef > 0.

    The principal arctan jumps by -pi at every half-period of tan.  The
    continuous branch is the winding angle of the vector
    (cos theta, c_coef cos theta + a_coef sin theta); because that vector never
    turns antiparallel to (cos theta, sin theta), the unwrapped value differs
    from theta by strictly less than pi, which gives a branch-free formula.
    Monotone increasing in theta and advances by exactly pi per period.
    """
    if a_coef <= 0:
        raise DomainError(f"a_coef must be positive, got {a_coef}")
    theta = np.asarray(theta, dtype=float)
    p = np.arctan2(c_coef * np.cos(theta) + a_coef * np.sin(theta), np.cos(theta))
    return theta + wrap_to_pi(p - theta)


def unwrap_atan_steps(c_coef: float, a_coef: float, theta):
    """Literal step-sum form: principal arctan plus pi per half-period crossed.

    Ill-conditioned near the tan singularities; kept for cross-checking
    :func:`unwrap_atan` away from them.
    """
    theta = np.asarray(theta, dtype=float)
    principal = np.arctan(c_coef + a_coef * np.tan(theta))
    return principal + math.pi * np.floor(theta / math.pi + 0.5)


def second_derivative_5pt(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order 5-point second derivative on a uniform grid.

    End points fall back to the second-order 3-point stencil (one-sided at
    the very edges); callers integrate against functions that vanish there.
    """
    v = np.asarray(values)
    out = np.empty_like(v)
    out[2:-2] = (-v[:-4] + 16 * v[1:-3] - 30 * v[2:-2] + 16 * v[3:-1] - v[4:]) / (12 * h * h)
    out[1] = (v[0] - 2 * v[1] + v[2]) / (h * h)
    out[-2] = (v[-3] - 2 * v[-2] + v[-1]) / (h * h)
    out[0] = (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / (h * h)
    out[-1] = (2 * v[-1] - 5 * v[-2] + 4 * v[-3] - v[-4]) / (h * h)
    return out


def adaptive_simpson(func, a: float, b: float, tol: float = 1e-10, max_depth: int = 30):
    """Adaptive Simpson quadrature of a scalar function on [a, b].

    Raises QuadratureError if the recursion bottoms out before the local
    error estimate reaches the tolerance.
    """
    from .errors import QuadratureError

    fa, fb = func(a), func(b)
    m = 0.5 * (a + b)
    fm = func(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, fa, m, fm, b, fb, whole, tol, depth):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = func(lm), func(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = left + right - whole
        if abs(err) <= 15.0 * tol:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson failed to converge on [{a}, {b}] (err={err:.3e})")
        return (recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)
                + recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1))

    if a == b:
        return 0.0
    return recurse(a, fa, m, fm, b, fb, whole, tol, 0)
