"""Nonstatic Fock-state eigenfunctions, full wave functions, densities, widths.

The generalized eigenfunction is

    Phi_n(q, t) = (beta/pi)^(1/4) (2^n n!)^(-1/2) H_n(sqrt(beta) q)
                  * exp[-(beta/2)(1 - i f'(t)/(2 omega)) q^2],

with beta(t) = eps * omega / (hbar * f(t)).  Absorbing the Gaussian into the
orthonormal Hermite function h_n leaves

    Phi_n(q, t) = beta^(1/4) h_n(sqrt(beta) q) * exp[i beta f'(t) q^2 / (4 omega)],

which is overflow-free for any supported n and manifestly unit-norm in q.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .envelope import EnvelopeParams, f, f_dot
from .errors import DomainError
from .numerics import QuadratureGrid, TimeGrid, hermite_weighted


@dataclass(frozen=True)
class WaveSample:
    """One evaluated point of an eigenfunction or full wave function."""

    q: float
    t: float
    value: complex
    density: float


def beta(params: EnvelopeParams, t):
    """Inverse squared width scale beta(t) = eps * omega / (hbar * f(t))."""
    return params.eps * params.omega / (params.hbar * f(params, t))


def eigenfunction(params: EnvelopeParams, n: int, q, t, chirp_sign: float = 1.0):
    """Complex eigenfunction Phi_n(q, t); vectorized over q.

    chirp_sign flips the sign of the imaginary (chirp) exponent and exists
    solely so the oracle's negative control can corrupt the phase factor.
    """
    q = np.asarray(q, dtype=float)
    b = beta(params, t)
    x = np.sqrt(b) * q
    chirp = chirp_sign * b * f_dot(params, t) / (4.0 * params.omega) * q * q
    return b ** 0.25 * hermite_weighted(n, x) * np.exp(1j * chirp)


def full_wavefunction(params: EnvelopeParams, n: int, q, t, gamma_n0: float = 0.0,
                      chirp_sign: float = 1.0):
    """Full wave function Psi_n = Phi_n * exp[-i omega (n+1/2) g2(t) + i gamma_n0].

    g2(t) = int_{t0}^t 1/f is taken from the closed-form phase module; the
    initial phase gamma_n0 defaults to zero.
    """
    from .phases import g_integrals

    g2 = g_integrals(params, t).g2
    phase = -params.omega * (n + 0.5) * g2 + gamma_n0
    return eigenfunction(params, n, q, t, chirp_sign=chirp_sign) * np.exp(1j * phase)


def sample(params: EnvelopeParams, n: int, q: float, t: float) -> WaveSample:
    v = complex(eigenfunction(params, n, q, t))
    return WaveSample(q=float(q), t=float(t), value=v, density=abs(v) ** 2)


def density(params: EnvelopeParams, n: int, q, t):
    """Probability density |Phi_n(q, t)|^2 (phase factors drop out)."""
    q = np.asarray(q, dtype=float)
    b = beta(params, t)
    return np.sqrt(b) * hermite_weighted(n, np.sqrt(b) * q) ** 2


def density_surface(params: EnvelopeParams, n: int, t_grid: TimeGrid,
                    q_grid: QuadratureGrid, max_workers: int | None = None):
    """|Phi_n|^2 on the product grid, shape (n_times, n_points).

    Each time slice integrates to 1 within quadrature tolerance.  Slices are
    independent; max_workers > 1 evaluates them in a thread pool.
    """
    times = t_grid.times
    if max_workers is not None and max_workers < 1:
        raise DomainError(f"max_workers must be >= 1, got {max_workers}")

    def slice_at(t):
        return density(params, n, q_grid.points, t)

    if max_workers is None or max_workers == 1 or len(times) < 4:
        rows = [slice_at(t) for t in times]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(slice_at, times))
    return np.vstack(rows)


def packet_width(params: EnvelopeParams, n: int, t, q_grid: QuadratureGrid | None = None):
    """RMS width sqrt(<q^2>) under |Phi_n|^2.

    Without a grid, returns the closed form sqrt((n+1/2) hbar f(t) / (eps omega));
    with a grid, evaluates the second moment by quadrature.
    """
    if q_grid is None:
        return np.sqrt((n + 0.5) * params.hbar * f(params, t) / (params.eps * params.omega))
    rho = density(params, n, q_grid.points, t)
    return float(np.sqrt(q_grid.integrate(rho * q_grid.points ** 2)))
