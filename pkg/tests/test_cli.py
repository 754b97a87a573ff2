import json
import math

import numpy as np
import pytest

from nonstatic_phase.cli import default_phi_list, main


def run(tmp_path, *argv):
    return main(list(argv))


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, np.array(rows)


class TestDensity:
    def test_static_slices_identical(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["density", "--A", "1", "--B", "1", "--n", "5", "--t-max", "2",
                     "--steps", "4", "--nq", "41", "--q-max", "6", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "q", "density"]
        by_t = rows[:, 2].reshape(5, 41)
        assert np.max(np.abs(by_t - by_t[0])) < 1e-12

    def test_nonstatic_periodicity(self, tmp_path):
        out = tmp_path / "d.csv"
        period = math.pi
        assert main(["density", "--A", "2.5", "--B", "0.5", "--n", "5",
                     "--t-max", f"{2 * period}", "--steps", "8",
                     "--nq", "41", "--q-max", "8", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        by_t = rows[:, 2].reshape(9, 41)
        assert np.max(np.abs(by_t[4] - by_t[0])) < 1e-10   # one period apart

    def test_empty_time_window_rejected(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["density", "--t-max", "0", "--steps", "2",
                     "--out", str(out)]) == 2
        assert not out.exists()


class TestPhases:
    def test_header_and_static_zero_geometric(self, tmp_path):
        out = tmp_path / "p.csv"
        assert main(["phases", "--A", "1", "--B", "1", "--n", "0", "--omega", "0.5",
                     "--t-max", "20", "--steps", "40", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "gamma_G", "gamma_D", "gamma_total",
                          "first_part", "second_part", "hannay", "D_F_constant"]
        assert np.max(np.abs(rows[:, 1])) < 1e-12          # gamma_G column
        assert np.allclose(rows[:, 7], 0.0, atol=5e-3)     # D_F column

    def test_fig2c_measure_column(self, tmp_path):
        out = tmp_path / "p.csv"
        assert main(["phases", "--A", "0.1", "--B", "10.0", "--n", "10",
                     "--omega", "1", "--t-max", "5", "--steps", "10",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        assert rows[0, 7] == pytest.approx(3.50, abs=0.005)

    def test_multiple_n_adds_column(self, tmp_path):
        out = tmp_path / "p.csv"
        assert main(["phases", "--A", "2.5", "--B", "0.5", "--n", "0,5",
                     "--t-max", "2", "--steps", "4", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header[0] == "n"
        assert set(rows[:, 0]) == {0.0, 5.0}


class TestRates:
    def test_static_zero_geometric_rate(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["rates", "--A", "1", "--B", "1", "--n", "2", "--t-max", "5",
                     "--steps", "10", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "dgamma_G", "dgamma_D", "dgamma_total"]
        assert np.max(np.abs(rows[:, 1])) < 1e-12

    def test_dip_instants_align_with_envelope_minima(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["rates", "--A", "0.5", "--B", "2.5", "--n", "5", "--omega", "0.5",
                     "--t-max", f"{2 * math.pi}", "--steps", "400",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        t = rows[:, 0]
        # f = 1/B at t=0 rising to B... its minimum over the window
        from nonstatic_phase import f, make_params
        p = make_params(0.5, 2.5, omega=0.5)
        fvals = np.asarray(f(p, t))
        i_rate = np.argmin(rows[:, 3])
        i_env = np.argmin(fvals)
        assert abs(i_rate - i_env) <= 1


class TestSweepPhi:
    def test_curves_start_at_zero_and_cover_sweep(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["sweep-phi", "--t-max", "4", "--steps", "8", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["phi", "t", "gamma_G"]
        phis = sorted(set(rows[:, 0]))
        assert len(phis) == 7
        # values round-trip through 12-significant-digit CSV
        assert phis == pytest.approx(default_phi_list(), abs=1e-10)
        assert np.allclose(np.diff(phis), 0.15 * math.pi, atol=1e-10)
        starts = rows[rows[:, 1] == 0.0]
        assert np.max(np.abs(starts[:, 2])) == 0.0

    def test_phi_zero_matches_phases_command(self, tmp_path):
        s_out = tmp_path / "s.csv"
        p_out = tmp_path / "p.csv"
        assert main(["sweep-phi", "--phi-list", "0", "--t-max", "4", "--steps", "8",
                     "--out", str(s_out)]) == 0
        assert main(["phases", "--A", "2.5", "--B", "0.5", "--n", "0", "--omega", "0.5",
                     "--t-max", "4", "--steps", "8", "--out", str(p_out)]) == 0
        _, s_rows = read_csv(s_out)
        _, p_rows = read_csv(p_out)
        assert np.allclose(s_rows[:, 2], p_rows[:, 1], atol=1e-12)

    def test_out_of_range_phi_rejected(self, tmp_path):
        assert main(["sweep-phi", "--phi-list", "2.0", "--t-max", "4",
                     "--steps", "4"]) == 2


class TestMeasure:
    def test_ladder(self, tmp_path):
        out = tmp_path / "m.csv"
        assert main(["measure", "--A", "1,2,5,10,20,40,100", "--B", "1",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        expected = [0.00, 0.79, 2.00, 3.82, 7.39, 14.48, 35.70]
        assert rows[:, 2] == pytest.approx(expected, abs=0.01)


class TestOutputFormat:
    def test_csv_is_lf_and_12_digits(self, tmp_path):
        out = tmp_path / "p.csv"
        main(["phases", "--A", "2.5", "--B", "0.5", "--n", "5", "--t-max", "1",
              "--steps", "3", "--out", str(out)])
        raw = out.read_bytes()
        assert b"\r" not in raw
        text = raw.decode("utf-8")
        # one-third of a third: value with a full 12 significant digits
        assert "0.333333333333" in text

    def test_json_format(self, tmp_path):
        out = tmp_path / "p.json"
        main(["phases", "--A", "2.5", "--B", "0.5", "--n", "5", "--t-max", "1",
              "--steps", "2", "--format", "json", "--out", str(out)])
        d = json.loads(out.read_text())
        assert d["columns"][0] == "t"
        assert len(d["rows"]) == 3

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["rates", "--A", "0.1", "--B", "10", "--n", "10", "--t-max", "7",
                "--steps", "50"]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_config_roundtrip_byte_identical(self, tmp_path):
        first = tmp_path / "first.csv"
        again = tmp_path / "again.csv"
        main(["phases", "--A", "0.5", "--B", "2.5", "--n", "5", "--omega", "0.5",
              "--t-max", "9", "--steps", "30", "--out", str(first)])
        echo = tmp_path / "first.csv.config.json"
        assert echo.exists()
        assert main(["phases", "--config", str(echo), "--out", str(again)]) == 0
        assert first.read_bytes() == again.read_bytes()

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"A": 2.5, "B": 0.5, "n": "5", "t_max": 2.0,
                                   "steps": 4}))
        out = tmp_path / "o.csv"
        main(["phases", "--config", str(cfg), "--n", "0", "--out", str(out)])
        _, rows = read_csv(out)
        # n=0 slope of gamma_D is -(1/2)(1/2)(A+B)omega = -0.75
        slope = (rows[-1, 2] - rows[0, 2]) / (rows[-1, 0] - rows[0, 0])
        assert slope == pytest.approx(-0.75, rel=1e-9)


class TestValidateCommand:
    def test_quick_suite_passes(self, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["validate", "--suite", "quick", "--out", str(out)]) == 0
        d = json.loads(out.read_text())
        assert d["all_passed"] is True
        assert d["reports"][0]["checks"]

    def test_static_suite_passes(self, tmp_path):
        assert main(["validate", "--suite", "static", "--out",
                     str(tmp_path / "rep.json")]) == 0

    def test_corrupt_c_fails(self, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["validate", "--suite", "quick", "--corrupt-c",
                     "--out", str(out)]) == 1
        # report is still written on failure
        d = json.loads(out.read_text())
        assert d["all_passed"] is False

    def test_flip_chirp_fails(self, tmp_path):
        assert main(["validate", "--suite", "quick", "--flip-chirp-sign",
                     "--out", str(tmp_path / "rep.json")]) == 1


def test_thread_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("NONSTATIC_PHASE_THREADS", "3")
    a = tmp_path / "a.csv"
    assert main(["density", "--A", "2.5", "--B", "0.5", "--n", "5", "--t-max", "1",
                 "--steps", "4", "--nq", "33", "--q-max", "8", "--out", str(a)]) == 0
    monkeypatch.delenv("NONSTATIC_PHASE_THREADS")
    b = tmp_path / "b.csv"
    assert main(["density", "--A", "2.5", "--B", "0.5", "--n", "5", "--t-max", "1",
                 "--steps", "4", "--nq", "33", "--q-max", "8", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
