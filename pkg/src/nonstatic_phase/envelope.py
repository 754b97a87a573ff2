"""Envelope function f(t) of a nonstatic Fock-state wave packet.

The envelope is the positive periodic function

    f(t) = A sin^2(phi_t) + B cos^2(phi_t) + C sin(2 phi_t),
    phi_t = omega * (t - t0) + phi,

with A*B - C^2 = 1.  f controls the instantaneous packet width; f == 1 is
the static case.  f solves the nonlinear oscillator-envelope ODE

    f'' - f'^2 / (2 f) + 2 omega^2 (f - 1/f) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

AUX_TOL = 1e-12  # admissible rounding error in A*B - C^2 - 1


@dataclass(frozen=True)
class EnvelopeParams:
    """Immutable parameter set (A, B, C, omega, t0, phi) plus physical constants.

    C is normally derived from A and B through the constraint A*B - C^2 = 1;
    use :func:`make_params` to construct validated instances.  Instances built
    directly (e.g. via dataclasses.replace) are not validated, which is what
    the oracle's negative controls rely on.
    """

    A: float
    B: float
    C: float
    omega: float
    t0: float = 0.0
    phi: float = 0.0
    eps: float = 1.0
    hbar: float = 1.0
    n_max_supported: int = 200

    def constraint_residual(self) -> float:
        return self.A * self.B - self.C**2 - 1.0

    def is_valid(self) -> bool:
        return (
            self.A > 0
            and self.B > 0
            and self.omega > 0
            and self.eps > 0
            and self.hbar > 0
            and abs(self.constraint_residual()) <= AUX_TOL
            and -math.pi / 2 <= self.phi < math.pi / 2
        )


def make_params(A, B, c_sign=+1, omega=1.0, t0=0.0, phi=0.0, eps=1.0, hbar=1.0):
    """Build a validated parameter set, deriving C = c_sign * sqrt(A*B - 1).

    phi outside [-pi/2, pi/2) is rejected rather than wrapped: callers can
    wrap trivially, and the phase bookkeeping downstream assumes this range.
    """
    if A <= 0 or B <= 0:
        raise DomainError(f"A and B must be positive, got A={A}, B={B}")
    if A * B < 1.0:
        raise DomainError(f"A*B must be >= 1, got A*B={A * B}")
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if eps <= 0 or hbar <= 0:
        raise DomainError(f"eps and hbar must be positive, got eps={eps}, hbar={hbar}")
    if not (-math.pi / 2 <= phi < math.pi / 2):
        raise DomainError(f"phi must lie in [-pi/2, pi/2), got {phi}")
    if c_sign not in (+1, -1, +1.0, -1.0):
        raise DomainError(f"c_sign must be +1 or -1, got {c_sign}")
    C = c_sign * math.sqrt(A * B - 1.0)
    return EnvelopeParams(A=float(A), B=float(B), C=float(C), omega=float(omega),
                          t0=float(t0), phi=float(phi), eps=float(eps), hbar=float(hbar))


def _angle(params: EnvelopeParams, t):
    return params.omega * (np.asarray(t, dtype=float) - params.t0) + params.phi


def f(params: EnvelopeParams, t):
    """Envelope value f(t) > 0; periodic with period pi/omega."""
    a = _angle(params, t)
    s, c = np.sin(a), np.cos(a)
    return params.A * s * s + params.B * c * c + params.C * np.sin(2.0 * a)


def f_dot(params: EnvelopeParams, t):
    """Analytic first time derivative of f."""
    a2 = 2.0 * _angle(params, t)
    return params.omega * ((params.A - params.B) * np.sin(a2) + 2.0 * params.C * np.cos(a2))


def f_ddot(params: EnvelopeParams, t):
    """Analytic second time derivative of f."""
    a2 = 2.0 * _angle(params, t)
    w = params.omega
    return 2.0 * w * w * ((params.A - params.B) * np.cos(a2) - 2.0 * params.C * np.sin(a2))


def ode_residual(params: EnvelopeParams, t):
    """Residual of f'' - f'^2/(2f) + 2 omega^2 (f - 1/f) at time t.

    Vanishes identically (up to rounding) when A*B - C^2 = 1 holds.
    """
    ft = f(params, t)
    fd = f_dot(params, t)
    return f_ddot(params, t) - fd * fd / (2.0 * ft) + 2.0 * params.omega**2 * (ft - 1.0 / ft)


def nonstaticity_measure(params_or_A, B=None) -> float:
    """Nonstaticity measure D_F = sqrt((A+B)^2 - 4) / (2 sqrt(2)).

    Zero iff A = B = 1 (the static wave); accepts either an EnvelopeParams or
    the pair (A, B) directly.
    """
    if B is None:
        A, B = params_or_A.A, params_or_A.B
    else:
        A = params_or_A
    s = A + B
    return math.sqrt(max(s * s - 4.0, 0.0)) / (2.0 * math.sqrt(2.0))


def f_range(params: EnvelopeParams):
    """(f_min, f_max) over one period: eigenvalues of [[A, C], [C, B]].

    Since the determinant is A*B - C^2 = 1, f_min * f_max = 1.
    """
    half_sum = 0.5 * (params.A + params.B)
    r = math.hypot(0.5 * (params.A - params.B), params.C)
    return half_sum - r, half_sum + r


def f_argmin_time(params: EnvelopeParams):
    """First time >= t0 at which f attains its minimum.

    Writing f = (A+B)/2 + R cos(2 phi_t - psi), the minimum sits at
    2 phi_t - psi = pi (mod 2 pi); subsequent minima follow every pi/omega.
    """
    psi = math.atan2(2.0 * params.C, params.B - params.A)
    # angle phi_t at the minimum, then solve omega (t - t0) + phi = phi_t
    phi_min = 0.5 * (psi + math.pi)
    t = params.t0 + (phi_min - params.phi) / params.omega
    period = math.pi / params.omega
    while t < params.t0 - 1e-15 / params.omega:
        t += period
    return t
