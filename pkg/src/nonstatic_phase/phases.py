"""Closed-form geometric, dynamical, and total phases, and the Hannay angle.

For a Fock index n the geometric phase is

    gamma_G(t) = (1/2)(n + 1/2) { (A+B) omega (t - t0)
                                  - 2 [ atan_c(Z(t)) - atan_c(Z(t0)) ] },

where Z(tau) = C + A tan(omega (tau - t0) + phi) and atan_c is the
branch-tracked arctangent (continuous across the tan singularities).  The
dynamical phase is exactly linear, gamma_D(t) = -(1/2)(n+1/2)(A+B) omega (t-t0),
and the total phase is gamma_G + gamma_D = -omega (n+1/2) g2(t) with
g2 = int 1/f.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .envelope import EnvelopeParams, f, f_dot
from .errors import DomainError
from .numerics import unwrap_atan, unwrap_atan_steps


@dataclass(frozen=True)
class GIntegrals:
    """Values of g1 = int f, g2 = int 1/f, g3 = int f'^2 / f from t0 to t."""

    g1: float
    g2: float
    g3: float


@dataclass(frozen=True)
class PhaseRecord:
    """All phase quantities at one time point.

    first_part is the (1/2)(n+1/2)(A+B) omega (t-t0) term of gamma_G; it
    cancels gamma_D exactly, so second_part = gamma_G - first_part equals
    the total phase.
    """

    t: float
    gamma_G: float
    gamma_D: float
    gamma_total: float
    first_part: float
    second_part: float
    hannay: float


def _check_t(params: EnvelopeParams, t):
    t = np.asarray(t, dtype=float)
    if np.any(t < params.t0 - 1e-15):
        raise DomainError(f"t must be >= t0 = {params.t0}")
    return t


def _delta_unwrapped_atan(params: EnvelopeParams, t, literal_steps=False):
    """atan_c(Z(t)) - atan_c(Z(t0)) with Z = C + A tan(omega (t-t0) + phi)."""
    theta = params.omega * (t - params.t0) + params.phi
    track = unwrap_atan_steps if literal_steps else unwrap_atan
    return track(params.C, params.A, theta) - track(params.C, params.A, params.phi)


def g_integrals(params: EnvelopeParams, t) -> GIntegrals:
    """Closed forms of the three envelope integrals, valid for all t >= t0.

    The arctan term of g2 uses branch tracking, so the formulas hold past
    every tan singularity, not only up to the first one.
    """
    t = _check_t(params, t)
    A, B, C, w = params.A, params.B, params.C, params.omega
    a2 = 2.0 * (w * (t - params.t0) + params.phi)
    a2_0 = 2.0 * params.phi
    ds = np.sin(a2) - np.sin(a2_0)
    dc = np.cos(a2) - np.cos(a2_0)
    lin = 2.0 * (A + B) * w * (t - params.t0)
    du = _delta_unwrapped_atan(params, t)
    g1 = (lin - (A - B) * ds - 2.0 * C * dc) / (4.0 * w)
    g2 = du / w
    g3 = w * (lin + (A - B) * ds + 2.0 * C * dc - 4.0 * du)
    if np.ndim(g1) == 0:
        return GIntegrals(float(g1), float(g2), float(g3))
    return GIntegrals(g1, g2, g3)


def geometric_phase(params: EnvelopeParams, n: int, t, literal_steps=False):
    """Geometric phase gamma_G,n(t); continuous in t, zero at t0 and for A=B=1.

    literal_steps switches the branch tracking to the explicit Heaviside
    step-sum form (debug cross-check; ill-conditioned at branch points).
    """
    t = _check_t(params, t)
    du = _delta_unwrapped_atan(params, t, literal_steps=literal_steps)
    lin = (params.A + params.B) * params.omega * (t - params.t0)
    return 0.5 * (n + 0.5) * (lin - 2.0 * du)


def dynamical_phase(params: EnvelopeParams, n: int, t):
    """Dynamical phase, strictly linear: -(1/2)(n+1/2)(A+B) omega (t-t0)."""
    t = _check_t(params, t)
    return -0.5 * (n + 0.5) * (params.A + params.B) * params.omega * (t - params.t0)


def total_phase(params: EnvelopeParams, n: int, t):
    """Total phase -omega (n+1/2) g2(t); equals gamma_G + gamma_D."""
    t = _check_t(params, t)
    return -params.omega * (n + 0.5) * (_delta_unwrapped_atan(params, t) / params.omega)


def hannay_angle(params: EnvelopeParams, t):
    """Hannay angle: -2 * gamma_G at n = 0 (gamma_G is affine in n)."""
    return -2.0 * geometric_phase(params, 0, t)


def phase_rate(params: EnvelopeParams, n: int, t):
    """Analytic time derivatives (dgamma_G/dt, dgamma_D/dt, dgamma_total/dt)."""
    t = _check_t(params, t)
    ft = f(params, t)
    fd = f_dot(params, t)
    w = params.omega
    scale = 0.5 * (n + 0.5)
    rate_g = scale * (w * (ft - 1.0 / ft) + fd * fd / (4.0 * w * ft))
    rate_d = -scale * (params.A + params.B) * w * np.ones_like(np.asarray(t, dtype=float))
    rate_tot = -w * (n + 0.5) / ft
    return rate_g, rate_d, rate_tot


def phase_record(params: EnvelopeParams, n: int, t: float) -> PhaseRecord:
    """Assemble every phase quantity at a single time point."""
    g = float(geometric_phase(params, n, t))
    d = float(dynamical_phase(params, n, t))
    first = 0.5 * (n + 0.5) * (params.A + params.B) * params.omega * (float(t) - params.t0)
    return PhaseRecord(
        t=float(t),
        gamma_G=g,
        gamma_D=d,
        gamma_total=g + d,
        first_part=first,
        second_part=g - first,
        hannay=float(hannay_angle(params, t)),
    )
