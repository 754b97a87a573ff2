"""Command-line surface: figure-data emission (CSV/JSON) and validation runs.

Subcommands: density, phases, rates, sweep-phi, measure, validate.  Options
may come from flags and/or a JSON config file (flags win).  Whenever an
output file is written, the fully resolved configuration is echoed next to
it as <out>.config.json so any run can be reproduced byte-for-byte via
--config.  NONSTATIC_PHASE_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import envelope as env
from . import oracle, phases, wavefunction
from .errors import DomainError
from .numerics import TimeGrid, default_half_width, make_grid

THREADS_ENV = "NONSTATIC_PHASE_THREADS"


def _fmt(x) -> str:
    """Locale-independent, 12 significant digits."""
    return f"{float(x):.12g}"


def _n_threads():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    return max(1, n)


def _write_table(out, header, rows, fmt):
    """Write a table as CSV (UTF-8, LF) or JSON to a path or '-' for stdout."""
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        payload = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = json.dumps(
            {"columns": list(header),
             "rows": [[float(_fmt(v)) for v in row] for row in rows]},
            indent=2) + "\n"
    else:
        raise DomainError(f"unknown output format {fmt!r}")
    if out in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)


def _echo_config(cfg: dict):
    out = cfg.get("out")
    if out in (None, "-"):
        return
    echo = {k: v for k, v in cfg.items() if k != "config"}
    with open(out + ".config.json", "w", encoding="utf-8", newline="") as fh:
        json.dump(echo, fh, indent=2, sort_keys=True)
        fh.write("\n")


_COMMON_DEFAULTS = {
    "A": 1.0, "B": 1.0, "c_sign": 1, "omega": 1.0, "n": "0",
    "t0": 0.0, "phi": 0.0, "eps": 1.0, "hbar": 1.0,
    "t_max": None, "steps": 200, "q_max": None, "nq": 201,
    "out": None, "format": "csv",
}


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file; flags override its entries")
    p.add_argument("--A", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--c-sign", dest="c_sign", type=int, choices=(1, -1))
    p.add_argument("--omega", type=float)
    p.add_argument("--n", help="Fock index, or comma-separated list")
    p.add_argument("--t0", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--q-max", dest="q_max", type=float)
    p.add_argument("--nq", type=int)
    p.add_argument("--out", help="output path; '-' or omitted for stdout")
    p.add_argument("--format", choices=("csv", "json"))


def _resolve(args, overrides=None) -> dict:
    cfg = dict(_COMMON_DEFAULTS)
    if overrides:
        cfg.update(overrides)
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(cfg) - {"phi_list"}
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "phi_list", None) is not None:
        cfg["phi_list"] = args.phi_list
    return cfg


def _params_from(cfg) -> env.EnvelopeParams:
    return env.make_params(cfg["A"], cfg["B"], c_sign=cfg["c_sign"], omega=cfg["omega"],
                           t0=cfg["t0"], phi=cfg["phi"], eps=cfg["eps"], hbar=cfg["hbar"])


def _n_values(cfg):
    raw = cfg["n"]
    if isinstance(raw, int):
        return [raw]
    if isinstance(raw, (list, tuple)):
        return [int(v) for v in raw]
    return [int(tok) for tok in str(raw).split(",") if tok.strip()]


def _time_grid(cfg, params, default_periods=10.0) -> TimeGrid:
    t_max = cfg["t_max"]
    if t_max is None:
        t_max = params.t0 + default_periods * math.pi / params.omega
    if cfg["steps"] < 2:
        raise DomainError(f"steps must be >= 2, got {cfg['steps']}")
    return TimeGrid(params.t0, float(t_max), int(cfg["steps"]))


def _q_points(cfg, params, n_max):
    q_max = cfg["q_max"]
    if q_max is None:
        q_max = default_half_width(env.f_range(params)[1], n_max, eps=params.eps,
                                   hbar=params.hbar, omega=params.omega)
    if cfg["nq"] < 2:
        raise DomainError(f"nq must be >= 2, got {cfg['nq']}")
    return np.linspace(-q_max, q_max, int(cfg["nq"]))


def cmd_density(args) -> int:
    cfg = _resolve(args, {"n": "5", "steps": 100})
    params = _params_from(cfg)
    n = _n_values(cfg)[0]
    t_grid = _time_grid(cfg, params, default_periods=2.0)
    q = _q_points(cfg, params, n)
    n_threads = _n_threads()
    rows = []
    grid = make_grid("uniform-trapezoid", float(q[-1]), len(q)) if len(q) >= 16 else None
    surface = (wavefunction.density_surface(params, n, t_grid, grid, max_workers=n_threads)
               if grid is not None else
               np.array([wavefunction.density(params, n, q, t) for t in t_grid.times]))
    for i, t in enumerate(t_grid.times):
        for j, qj in enumerate(q):
            rows.append((t, qj, surface[i, j]))
    _write_table(cfg["out"], ("t", "q", "density"), rows, cfg["format"])
    _echo_config(cfg)
    return 0


def _phase_rows(params, n_values, t_grid):
    d_f = env.nonstaticity_measure(params)
    multi = len(n_values) > 1
    for n in n_values:
        for t in t_grid.times:
            r = phases.phase_record(params, n, t)
            head = (n,) if multi else ()
            yield head + (r.t, r.gamma_G, r.gamma_D, r.gamma_total,
                          r.first_part, r.second_part, r.hannay, d_f)


def cmd_phases(args) -> int:
    cfg = _resolve(args, {"steps": 400})
    params = _params_from(cfg)
    n_values = _n_values(cfg)
    t_grid = _time_grid(cfg, params)
    header = ("t", "gamma_G", "gamma_D", "gamma_total",
              "first_part", "second_part", "hannay", "D_F_constant")
    if len(n_values) > 1:
        header = ("n",) + header
    _write_table(cfg["out"], header, list(_phase_rows(params, n_values, t_grid)),
                 cfg["format"])
    _echo_config(cfg)
    return 0


def cmd_rates(args) -> int:
    cfg = _resolve(args, {"steps": 400})
    params = _params_from(cfg)
    n = _n_values(cfg)[0]
    t_grid = _time_grid(cfg, params)
    rg, rd, rt = phases.phase_rate(params, n, t_grid.times)
    rows = list(zip(t_grid.times, rg, rd, rt))
    _write_table(cfg["out"], ("t", "dgamma_G", "dgamma_D", "dgamma_total"),
                 rows, cfg["format"])
    _echo_config(cfg)
    return 0


def default_phi_list():
    """Sweep of the classical angle at spacing 0.15 pi across [-pi/2, pi/2)."""
    return [(-0.5 + 0.15 * k) * math.pi for k in range(7)]


def cmd_sweep_phi(args) -> int:
    cfg = _resolve(args, {"A": 2.5, "B": 0.5, "n": "0", "omega": 0.5, "steps": 400})
    raw = cfg.get("phi_list")
    if raw is None:
        phi_list = default_phi_list()
    elif isinstance(raw, (list, tuple)):
        phi_list = [float(v) for v in raw]
    else:
        phi_list = [float(tok) for tok in str(raw).split(",") if tok.strip()]
    n = _n_values(cfg)[0]
    rows = []
    for phi in phi_list:
        params = env.make_params(cfg["A"], cfg["B"], c_sign=cfg["c_sign"],
                                 omega=cfg["omega"], t0=cfg["t0"], phi=phi,
                                 eps=cfg["eps"], hbar=cfg["hbar"])
        t_grid = _time_grid(cfg, params)
        gg = phases.geometric_phase(params, n, t_grid.times)
        rows += [(phi, t, g) for t, g in zip(t_grid.times, gg)]
    _write_table(cfg["out"], ("phi", "t", "gamma_G"), rows, cfg["format"])
    _echo_config(cfg)
    return 0


def cmd_measure(args) -> int:
    cfg = _resolve(args)
    try:
        a_values = [float(tok) for tok in str(cfg["A"]).split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"--A must be a number or comma-separated list, got {cfg['A']!r}")
    rows = []
    for a in a_values:
        env.make_params(a, cfg["B"], omega=cfg["omega"])  # range check only
        rows.append((a, cfg["B"], env.nonstaticity_measure(a, cfg["B"])))
    _write_table(cfg["out"], ("A", "B", "D_F"), rows, cfg["format"])
    _echo_config(cfg)
    return 0


def _battery(suite: str):
    """Named parameter sets: figure configurations plus seeded random draws."""
    sets = []
    if suite == "static":
        sets.append(("static", dict(A=1.0, B=1.0, omega=0.5), [0]))
        return sets
    if suite == "quick":
        sets.append(("fig1b", dict(A=2.5, B=0.5, omega=1.0), [5]))
        return sets
    sets += [
        ("fig1b", dict(A=2.5, B=0.5, omega=1.0), [5]),
        ("fig2a", dict(A=1.0, B=1.0, omega=0.5), [0]),
        ("fig2b", dict(A=0.5, B=2.5, omega=0.5), [5]),
        ("fig2c", dict(A=0.1, B=10.0, omega=1.0), [10]),
    ]
    for a in (1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 100.0):
        sets.append((f"fig4a-A{a:g}", dict(A=a, B=1.0, omega=1.0), [5]))
    rng = np.random.default_rng(20260824)
    for i in range(20):
        a = float(rng.uniform(0.5, 3.0))
        b = float(rng.uniform(max(1.0 / a, 0.4), 3.2))
        sets.append((f"random-{i:02d}", dict(
            A=a, B=b,
            omega=float(rng.uniform(0.4, 1.6)),
            t0=float(rng.uniform(-1.0, 1.0)),
            phi=float(rng.uniform(-0.45, 0.45) * math.pi),
        ), [int(rng.integers(0, 6))]))
    return sets


def cmd_validate(args) -> int:
    cfg = _resolve(args)
    reports = []
    all_passed = True
    for name, kw, n_list in _battery(args.suite):
        params = env.make_params(c_sign=cfg["c_sign"], eps=cfg["eps"],
                                 hbar=cfg["hbar"], **kw)
        t_grid = TimeGrid(params.t0, params.t0 + 20.0 / params.omega, 200)
        q_grid = oracle.recommended_q_grid(params, max(n_list))
        report = oracle.run_validation(params, n_list, t_grid, q_grid,
                                       corrupt_c=0.1 if args.corrupt_c else 0.0,
                                       flip_chirp_sign=args.flip_chirp_sign)
        d = report.to_dict()
        d["set"] = name
        reports.append(d)
        all_passed &= report.all_passed
    payload = json.dumps({"suite": args.suite, "all_passed": all_passed,
                          "reports": reports}, indent=2) + "\n"
    if cfg["out"] in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonstatic-phase",
        description="Phases and wave packets of nonstatic Fock-state light waves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="probability density surface |Phi_n(q,t)|^2")
    _add_common_flags(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("phases", help="geometric/dynamical/total phases and Hannay angle")
    _add_common_flags(p)
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("rates", help="time derivatives of the phases")
    _add_common_flags(p)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("sweep-phi", help="geometric phase for a sweep of the angle phi")
    _add_common_flags(p)
    p.add_argument("--phi-list", dest="phi_list",
                   help="comma-separated phi values in radians")
    p.set_defaults(func=cmd_sweep_phi)

    p = sub.add_parser("measure", help="nonstaticity measure D_F")
    _add_common_flags(p)
    # override: measure accepts a comma-separated list of A values
    for action in p._actions:
        if action.dest == "A":
            action.type = str
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("validate", help="run the numerical cross-validation battery")
    _add_common_flags(p)
    p.add_argument("--suite", choices=("default", "quick", "static"), default="default")
    p.add_argument("--corrupt-c", action="store_true",
                   help="negative control: break the A*B - C^2 = 1 constraint")
    p.add_argument("--flip-chirp-sign", action="store_true",
                   help="negative control: flip the eigenfunction's imaginary exponent")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
