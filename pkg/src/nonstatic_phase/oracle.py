"""Independent numerical verification of every closed form.

Each estimator here works only from f, f', and the eigenfunction evaluator:
Berry integrand by quadrature + finite differences, Hamiltonian expectation
by quadrature + a 5-point stencil, the g-integrals by adaptive Simpson, and
the envelope ODE by fixed-step RK4.  None of them touch the closed-form
phase expressions they are used to check.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import envelope as env
from . import phases
from .envelope import EnvelopeParams
from .errors import NonPositiveF, QuadratureError
from .numerics import QuadratureGrid, TimeGrid, adaptive_simpson, second_derivative_5pt
from .wavefunction import density, eigenfunction, full_wavefunction

FD_STEP_FACTOR = 1e-6  # time finite-difference step, in units of 1/omega


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.residual = float(self.residual)
        self.passed = bool(self.residual <= self.tolerance)


@dataclass
class ValidationReport:
    """Accumulated per-check residuals with pass/fail verdicts."""

    checks: list = field(default_factory=list)
    params_echo: dict = field(default_factory=dict)
    grids_echo: dict = field(default_factory=dict)

    def add(self, name: str, residual: float, tolerance: float):
        self.checks.append(Check(name=name, residual=residual, tolerance=tolerance))

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "params": self.params_echo,
            "grids": self.grids_echo,
            "checks": [{"name": c.name, "residual": c.residual,
                        "tolerance": c.tolerance, "passed": c.passed}
                       for c in self.checks],
            "all_passed": self.all_passed,
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _check_grid_mass(params, n, t, q_grid, chirp_sign=1.0):
    mass = q_grid.integrate(density(params, n, q_grid.points, t))
    if abs(mass - 1.0) > 1e-6:
        raise QuadratureError(
            f"grid loses probability mass for n={n}: integral = {mass!r}; widen the grid")


def berry_integrand_numeric(params: EnvelopeParams, n: int, t: float,
                            q_grid: QuadratureGrid, chirp_sign: float = 1.0) -> float:
    """Quadrature of Re <Phi_n | i d/dt | Phi_n> with a central time difference.

    This is the instantaneous geometric-phase rate; its imaginary part
    vanishes by norm conservation.
    """
    _check_grid_mass(params, n, t, q_grid, chirp_sign)
    h = FD_STEP_FACTOR / params.omega
    q = q_grid.points
    phi_p = eigenfunction(params, n, q, t + h, chirp_sign=chirp_sign)
    phi_m = eigenfunction(params, n, q, t - h, chirp_sign=chirp_sign)
    phi = eigenfunction(params, n, q, t, chirp_sign=chirp_sign)
    integrand = np.conj(phi) * 1j * (phi_p - phi_m) / (2.0 * h)
    return float(np.real(q_grid.integrate(integrand)))


def hamiltonian_expectation_numeric(params: EnvelopeParams, n: int, t: float,
                                    q_grid: QuadratureGrid,
                                    chirp_sign: float = 1.0) -> float:
    """<Phi_n | p^2/(2 eps) + eps omega^2 q^2 / 2 | Phi_n> by quadrature.

    The kinetic term uses a 5-point stencil, so the grid must be uniform.
    """
    _check_grid_mass(params, n, t, q_grid, chirp_sign)
    q = q_grid.points
    dq = q_grid.spacing
    phi = eigenfunction(params, n, q, t, chirp_sign=chirp_sign)
    kinetic = -params.hbar**2 / (2.0 * params.eps) * second_derivative_5pt(phi, dq)
    potential = 0.5 * params.eps * params.omega**2 * q * q * phi
    return float(np.real(q_grid.integrate(np.conj(phi) * (kinetic + potential))))


def g_integrals_numeric(params: EnvelopeParams, t: float,
                        tol: float = 1e-10) -> phases.GIntegrals:
    """Adaptive Simpson quadrature of f, 1/f, and f'^2/f from t0 to t."""
    t0 = params.t0
    g1 = adaptive_simpson(lambda s: env.f(params, s), t0, t, tol=tol)
    g2 = adaptive_simpson(lambda s: 1.0 / env.f(params, s), t0, t, tol=tol)
    g3 = adaptive_simpson(lambda s: env.f_dot(params, s) ** 2 / env.f(params, s),
                          t0, t, tol=tol)
    return phases.GIntegrals(g1=g1, g2=g2, g3=g3)


def ode_solve_f(params: EnvelopeParams, t_grid: TimeGrid) -> np.ndarray:
    """Fixed-step RK4 integration of the envelope ODE from closed-form initial data.

    Returns f on t_grid.times.  The ODE is solved as a first-order system in
    (f, f'); a nonpositive f along the way aborts with NonPositiveF.
    """
    w2 = params.omega**2

    def accel(fv, fd):
        if fv <= 0.0:
            raise NonPositiveF(f"f reached {fv} during ODE integration")
        return fd * fd / (2.0 * fv) - 2.0 * w2 * (fv - 1.0 / fv)

    h = t_grid.step
    fv = float(env.f(params, t_grid.t_start))
    fd = float(env.f_dot(params, t_grid.t_start))
    out = np.empty(len(t_grid.times))
    out[0] = fv
    for i in range(t_grid.n_steps):
        k1f, k1d = fd, accel(fv, fd)
        k2f, k2d = fd + 0.5 * h * k1d, accel(fv + 0.5 * h * k1f, fd + 0.5 * h * k1d)
        k3f, k3d = fd + 0.5 * h * k2d, accel(fv + 0.5 * h * k2f, fd + 0.5 * h * k2d)
        k4f, k4d = fd + h * k3d, accel(fv + h * k3f, fd + h * k3d)
        fv += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        fd += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if fv <= 0.0:
            raise NonPositiveF(f"f reached {fv} at step {i + 1}")
        out[i + 1] = fv
    return out


def schrodinger_residual(params: EnvelopeParams, n: int, t: float,
                         q_grid: QuadratureGrid, chirp_sign: float = 1.0) -> float:
    """Grid norm of i hbar dPsi/dt - H Psi, relative to the norm of Psi.

    The time derivative is a central finite difference, the kinetic term a
    5-point stencil; neither reuses the analytic forms under test.  The step
    shrinks below FD_STEP_FACTOR/omega when the peak phase-rotation rate
    (n+1/2) omega f_max is large, to keep the truncation error under the
    1e-5 contract for strongly breathing envelopes.
    """
    f_max = env.f_range(params)[1]
    h = FD_STEP_FACTOR / (params.omega * max(1.0, (n + 0.5) * f_max / 10.0))
    q = q_grid.points
    dq = q_grid.spacing
    psi = full_wavefunction(params, n, q, t, chirp_sign=chirp_sign)
    psi_p = full_wavefunction(params, n, q, t + h, chirp_sign=chirp_sign)
    psi_m = full_wavefunction(params, n, q, t - h, chirp_sign=chirp_sign)
    dpsi_dt = (psi_p - psi_m) / (2.0 * h)
    h_psi = (-params.hbar**2 / (2.0 * params.eps) * second_derivative_5pt(psi, dq)
             + 0.5 * params.eps * params.omega**2 * q * q * psi)
    res = 1j * params.hbar * dpsi_dt - h_psi
    norm = math.sqrt(float(np.real(q_grid.integrate(np.abs(psi) ** 2))))
    return math.sqrt(float(np.real(q_grid.integrate(np.abs(res) ** 2)))) / norm


def recommended_q_grid(params: EnvelopeParams, n_max: int):
    """Uniform grid resolving the narrowest instantaneous packet.

    Spacing is tied to sqrt(f_min) so the 5-point stencil keeps its accuracy
    even for strongly breathing envelopes, with a floor of 0.005.
    """
    from . import numerics

    f_min, f_max = env.f_range(params)
    half_width = numerics.default_half_width(
        f_max, n_max, eps=params.eps, hbar=params.hbar, omega=params.omega)
    # packet-width constraint
    h = min(0.005, math.sqrt(f_min * params.hbar / (params.eps * params.omega)) / 25.0)
    # chirp constraint: the local wavenumber beta |f'| q / (2 omega) peaks at
    # the grid edge of the narrow-and-fast instants; keep k*h small
    ts = np.linspace(params.t0, params.t0 + math.pi / params.omega, 512)
    slope = float(np.max(np.abs(env.f_dot(params, ts)) / np.sqrt(env.f(params, ts))))
    k_max = (math.sqrt(params.eps * params.omega / params.hbar) * slope
             * (math.sqrt(2 * n_max + 1) + 6.0) / (2.0 * params.omega))
    if k_max > 0:
        h = min(h, 0.07 / k_max)
    n_points = int(math.ceil(2.0 * half_width / h)) + 1
    return numerics.make_grid("uniform-trapezoid", half_width, n_points)


def run_validation(params: EnvelopeParams, n_list, t_grid: TimeGrid,
                   q_grid: QuadratureGrid, corrupt_c: float = 0.0,
                   flip_chirp_sign: bool = False) -> ValidationReport:
    """Run the full cross-validation battery and collect a ValidationReport.

    corrupt_c adds an offset to C (breaking A*B - C^2 = 1) and
    flip_chirp_sign flips the imaginary exponent of the eigenfunction; both
    are negative controls expected to trip at least one check.  A failed
    check is recorded, never raised.
    """
    if corrupt_c:
        params = dataclasses.replace(params, C=params.C + corrupt_c)
    chirp_sign = -1.0 if flip_chirp_sign else 1.0

    report = ValidationReport(
        params_echo={f.name: getattr(params, f.name)
                     for f in dataclasses.fields(params)},
        grids_echo={
            "time": {"t_start": t_grid.t_start, "t_end": t_grid.t_end,
                     "n_steps": t_grid.n_steps},
            "space": {"kind": q_grid.kind, "half_width": q_grid.half_width,
                      "n_points": len(q_grid.points)},
        },
    )
    w = params.omega
    period = math.pi / w
    times = t_grid.times
    # probe times spread over the window, kept off the exact endpoints
    probe = np.linspace(times[0] + 0.013 * (times[-1] - times[0]),
                        times[-1] - 0.007 * (times[-1] - times[0]), 13)

    # --- envelope ODE, closed form and independent integration ---
    dense_t = np.linspace(params.t0, params.t0 + 3.0 * period, 1501)
    scale = max(1.0, w * w * (params.A + params.B))
    report.add("ode-residual",
               float(np.max(np.abs(env.ode_residual(params, dense_t)))) / scale, 1e-10)
    try:
        step = 1e-3 / w if params.A + params.B <= 5.0 else 1e-4 / w
        n_steps = int(math.ceil(3.0 * period / step))
        rk_grid = TimeGrid(params.t0, params.t0 + 3.0 * period, n_steps)
        numeric = ode_solve_f(params, rk_grid)
        closed = env.f(params, rk_grid.times)
        report.add("ode-rk4-tracking", float(np.max(np.abs(numeric - closed))), 1e-6)
    except NonPositiveF:
        report.add("ode-rk4-tracking", math.inf, 1e-6)

    # --- g integrals: closed forms vs adaptive Simpson ---
    worst = 0.0
    for t in probe[::3]:
        closed_g = phases.g_integrals(params, t)
        numeric_g = g_integrals_numeric(params, t)
        for a, b in ((closed_g.g1, numeric_g.g1), (closed_g.g2, numeric_g.g2),
                     (closed_g.g3, numeric_g.g3)):
            worst = max(worst, abs(a - b) / (1.0 + abs(b)))
    report.add("g-integrals", worst, 1e-8)

    # --- phase identities (both sides closed-form) ---
    gg = np.concatenate([phases.geometric_phase(params, n, times) for n in n_list])
    gd = np.concatenate([phases.dynamical_phase(params, n, times) for n in n_list])
    gt = np.concatenate([phases.total_phase(params, n, times) for n in n_list])
    report.add("total-phase-identity", float(np.max(np.abs(gg + gd - gt))), 1e-10)
    report.add("hannay-consistency",
               float(np.max(np.abs(phases.hannay_angle(params, times)
                                   + 2.0 * phases.geometric_phase(params, 0, times)))),
               1e-12)

    # --- continuity across the first six branch points ---
    delta = 1e-4 / w
    n_hi = max(n_list)
    k_bound = (n_hi + 0.5) * w * (params.A + params.B)
    jumps = []
    for m in range(6):
        tb = params.t0 + (2 * m + 1) * math.pi / (2.0 * w) - params.phi / w
        lo = max(tb - delta, params.t0)
        jumps.append(abs(float(phases.geometric_phase(params, n_hi, tb + delta)
                               - phases.geometric_phase(params, n_hi, lo))))
    report.add("branch-point-continuity", max(jumps), 2.0 * k_bound * delta)

    # --- wave-packet checks on the grids ---
    rate_scale = 0.5 * (params.A + params.B) * w  # |dgamma_D/dt| at n=0
    for n in n_list:
        mass_err = max(abs(q_grid.integrate(density(params, n, q_grid.points, t)) - 1.0)
                       for t in probe)
        report.add(f"normalization-n{n}", mass_err, 1e-6)

        worst = 0.0
        for t in probe:
            num = berry_integrand_numeric(params, n, t, q_grid, chirp_sign=chirp_sign)
            ana = float(phases.phase_rate(params, n, t)[0])
            worst = max(worst, abs(num - ana) / ((n + 0.5) * rate_scale))
        report.add(f"berry-integrand-n{n}", worst, 1e-5)

        worst = 0.0
        for t in probe:
            num = hamiltonian_expectation_numeric(params, n, t, q_grid,
                                                  chirp_sign=chirp_sign)
            ft, fd = float(env.f(params, t)), float(env.f_dot(params, t))
            ana = 0.5 * params.hbar * (n + 0.5) * (w * (ft + 1.0 / ft)
                                                   + fd * fd / (4.0 * w * ft))
            worst = max(worst, abs(num - ana) / abs(ana))
        report.add(f"hamiltonian-expectation-n{n}", worst, 1e-5)

        # time-integrated -<H>/hbar over one full cycle vs the linear closed form
        t_end = params.t0 + 2.0 * period
        ana = float(phases.dynamical_phase(params, n, t_end))
        try:
            integral = adaptive_simpson(
                lambda t: -hamiltonian_expectation_numeric(
                    params, n, t, q_grid, chirp_sign=chirp_sign) / params.hbar,
                params.t0, t_end, tol=abs(ana) * 1e-7)
            report.add(f"dynamical-integral-n{n}", abs(integral - ana) / abs(ana), 1e-5)
        except QuadratureError:
            report.add(f"dynamical-integral-n{n}", math.inf, 1e-5)

        report.add(f"schrodinger-residual-n{n}",
                   max(schrodinger_residual(params, n, t, q_grid, chirp_sign=chirp_sign)
                       for t in probe[::4]), 1e-5)

    # --- density periodicity over one breathing cycle ---
    n0 = n_list[0]
    rho_a = density(params, n0, q_grid.points, probe[0])
    rho_b = density(params, n0, q_grid.points, probe[0] + period)
    report.add("density-periodicity", float(np.max(np.abs(rho_a - rho_b))), 1e-10)

    return report
