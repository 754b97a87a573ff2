import dataclasses
import json
import math

import numpy as np
import pytest

from nonstatic_phase import (
    NonPositiveF,
    QuadratureError,
    berry_integrand_numeric,
    f,
    g_integrals_numeric,
    hamiltonian_expectation_numeric,
    make_grid,
    make_params,
    ode_solve_f,
    phase_rate,
    recommended_q_grid,
    run_validation,
    schrodinger_residual,
)
from nonstatic_phase.envelope import f_argmin_time, f_dot
from nonstatic_phase.numerics import TimeGrid
from nonstatic_phase.wavefunction import eigenfunction


class TestBerryIntegrand:
    def test_static_vanishes(self, static_params, grid_fig2b):
        for t in (0.3, 2.2):
            assert abs(berry_integrand_numeric(static_params, 3, t, grid_fig2b)) < 1e-8

    def test_initial_time_value(self, fig1b, grid_fig1b):
        # analytic rate at t0: (1/2)(n+1/2)[omega(B - 1/B) + (2 omega C)^2/(4 omega B)]
        p = fig1b
        num = berry_integrand_numeric(p, 5, p.t0, grid_fig1b)
        fd0 = 2 * p.omega * p.C
        ana = 0.5 * 5.5 * (p.omega * (p.B - 1 / p.B) + fd0**2 / (4 * p.omega * p.B))
        assert num == pytest.approx(ana, rel=1e-6)

    def test_matches_analytic_rate(self, fig2b, grid_fig2b):
        scale = 0.5 * 5.5 * (fig2b.A + fig2b.B) * fig2b.omega
        for t in np.linspace(0.2, 18.0, 9):
            num = berry_integrand_numeric(fig2b, 5, t, grid_fig2b)
            ana = float(phase_rate(fig2b, 5, t)[0])
            assert abs(num - ana) <= 1e-5 * scale

    def test_integrand_is_real(self, fig1b, grid_fig1b):
        # the imaginary part of the q-integral vanishes by norm conservation
        p = fig1b
        h = 1e-6 / p.omega
        q = grid_fig1b.points
        phi = eigenfunction(p, 5, q, 0.8)
        dphi = (eigenfunction(p, 5, q, 0.8 + h) - eigenfunction(p, 5, q, 0.8 - h)) / (2 * h)
        integral = grid_fig1b.integrate(np.conj(phi) * 1j * dphi)
        assert abs(integral.imag) < 1e-8

    def test_rejects_lossy_grid(self, fig1b):
        tiny = make_grid("uniform-trapezoid", 1.5, 64)
        with pytest.raises(QuadratureError):
            berry_integrand_numeric(fig1b, 5, 0.5, tiny)


class TestHamiltonianExpectation:
    def test_static_fock_energy(self, static_params, grid_fig2b):
        p = static_params
        for n in (0, 3):
            got = hamiltonian_expectation_numeric(p, n, 1.1, grid_fig2b)
            assert got == pytest.approx(p.hbar * p.omega * (n + 0.5), rel=1e-8)

    def test_matches_analytic_formula(self, fig2c, grid_fig2c):
        p = fig2c
        for t in (0.4, 1.9, 3.1):
            got = hamiltonian_expectation_numeric(p, 10, t, grid_fig2c)
            ft, fd = float(f(p, t)), float(f_dot(p, t))
            ana = 0.5 * p.hbar * 10.5 * (p.omega * (ft + 1 / ft)
                                         + fd * fd / (4 * p.omega * ft))
            assert got == pytest.approx(ana, rel=1e-5)

    def test_exceeds_static_energy_at_narrow_instants(self, fig1b, grid_fig1b):
        # f + 1/f >= 2 with equality only at f = 1, so any nonstatic packet
        # carries more energy than the static Fock state at its narrow instant
        p = fig1b
        got = hamiltonian_expectation_numeric(p, 5, f_argmin_time(p), grid_fig1b)
        assert got > p.hbar * p.omega * 5.5 * (1 + 1e-6)


class TestGIntegralsNumeric:
    def test_static(self, static_params):
        g = g_integrals_numeric(static_params, 5.5)
        assert g.g1 == pytest.approx(5.5, abs=1e-10)
        assert g.g2 == pytest.approx(5.5, abs=1e-10)
        assert g.g3 == pytest.approx(0.0, abs=1e-10)

    def test_initial_time(self, fig1b):
        g = g_integrals_numeric(fig1b, fig1b.t0)
        assert (g.g1, g.g2, g.g3) == (0.0, 0.0, 0.0)

    def test_period_means(self, fig1b):
        period = math.pi / fig1b.omega
        g = g_integrals_numeric(fig1b, fig1b.t0 + 3 * period)
        assert g.g1 / (3 * period) == pytest.approx((fig1b.A + fig1b.B) / 2, abs=1e-9)
        assert g.g2 / (3 * period) == pytest.approx(1.0, abs=1e-9)


class TestOdeSolve:
    def test_static_constant(self, static_params):
        tg = TimeGrid(0.0, 10.0, 1000)
        vals = ode_solve_f(static_params, tg)
        assert np.max(np.abs(vals - 1.0)) < 1e-12

    def test_tracks_closed_form(self, fig1b):
        p = fig1b
        period = math.pi / p.omega
        tg = TimeGrid(p.t0, p.t0 + 3 * period, int(math.ceil(3 * period / (1e-3 / p.omega))))
        vals = ode_solve_f(p, tg)
        assert np.max(np.abs(vals - f(p, tg.times))) < 1e-6

    def test_tracks_stiffer_envelope(self, fig2c):
        p = fig2c
        period = math.pi / p.omega
        tg = TimeGrid(p.t0, p.t0 + 3 * period, int(math.ceil(3 * period / (1e-4 / p.omega))))
        vals = ode_solve_f(p, tg)
        assert np.max(np.abs(vals - f(p, tg.times))) < 1e-6

    def test_nonpositive_f_detected(self):
        # the exact flow keeps f positive, but a grid far too coarse for a
        # strongly pinched envelope over-steps through zero and must be caught
        p = make_params(100.0, 1.0)
        tg = TimeGrid(0.0, 2 * math.pi, 40)
        with pytest.raises(NonPositiveF):
            ode_solve_f(p, tg)

    def test_corrupted_c_relaxes_to_wrong_orbit(self, fig1b):
        # breaking the auxiliary condition changes the initial slope, so the
        # integrated trajectory departs from the closed form by order one
        bad = dataclasses.replace(fig1b, C=1.2)
        tg = TimeGrid(0.0, 2 * math.pi, 20000)
        vals = ode_solve_f(bad, tg)
        assert np.all(vals > 0)
        assert np.max(np.abs(vals - f(bad, tg.times))) > 0.1


class TestSchrodingerResidual:
    def test_small_for_valid_wavefunction(self, fig2b, grid_fig2b):
        for n in (0, 5):
            assert schrodinger_residual(fig2b, n, 1.3, grid_fig2b) < 1e-5

    def test_large_for_flipped_chirp(self, fig1b, grid_fig1b):
        assert schrodinger_residual(fig1b, 5, 0.9, grid_fig1b, chirp_sign=-1.0) > 1e-2


@pytest.fixture(scope="module")
def fig2b_report(fig2b, grid_fig2b):
    tg = TimeGrid(fig2b.t0, fig2b.t0 + 20.0 / fig2b.omega, 200)
    return run_validation(fig2b, [0, 5], tg, grid_fig2b)


class TestRunValidation:
    def test_fig2b_all_pass(self, fig2b_report):
        assert fig2b_report.all_passed
        assert all(c.passed == (c.residual <= c.tolerance) for c in fig2b_report.checks)

    def test_static_passes_with_zero_geometric_phase(self, static_params):
        p = static_params
        tg = TimeGrid(p.t0, p.t0 + 20.0 / p.omega, 100)
        rep = run_validation(p, [0], tg, recommended_q_grid(p, 0))
        assert rep.all_passed
        berry = [c for c in rep.checks if c.name.startswith("berry")]
        assert berry and all(c.residual < 1e-7 for c in berry)

    def test_corrupted_c_fails_ode_residual(self, fig1b, grid_fig1b):
        tg = TimeGrid(0.0, 20.0, 100)
        rep = run_validation(fig1b, [5], tg, grid_fig1b, corrupt_c=0.1)
        assert not rep.all_passed
        failed = {c.name for c in rep.checks if not c.passed}
        assert "ode-residual" in failed

    def test_flipped_chirp_fails(self, fig1b, grid_fig1b):
        tg = TimeGrid(0.0, 20.0, 100)
        rep = run_validation(fig1b, [5], tg, grid_fig1b, flip_chirp_sign=True)
        assert not rep.all_passed
        failed = {c.name for c in rep.checks if not c.passed}
        assert failed & {"berry-integrand-n5", "schrodinger-residual-n5"}

    def test_deterministic(self, fig1b, grid_fig1b):
        tg = TimeGrid(0.0, 10.0, 50)
        a = run_validation(fig1b, [2], tg, grid_fig1b).to_dict()
        b = run_validation(fig1b, [2], tg, grid_fig1b).to_dict()
        assert a == b

    def test_report_schema(self, fig2b_report):
        d = json.loads(fig2b_report.to_json())
        assert set(d) == {"params", "grids", "checks", "all_passed"}
        for entry in d["checks"]:
            assert set(entry) == {"name", "residual", "tolerance", "passed"}
            assert isinstance(entry["passed"], bool)
        assert d["params"]["A"] == 0.5


def test_recommended_grid_resolves_extreme_envelopes():
    p = make_params(20.0, 1.0, omega=1.0)
    g = recommended_q_grid(p, 5)
    assert schrodinger_residual(p, 5, 3.1, g) < 1e-5
