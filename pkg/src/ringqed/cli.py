"""Command-line interface.

Subcommands::

    ringqed single       |t - 1| over detuning (or the configured sweep)
    ringqed g2scatter    output g2 at one frequency pair, or a sweep
    ringqed driven steady|evolve
    ringqed oracle verify
    ringqed preset NAME

Exit status: 0 on success, 1 on invalid input, 2 on a computation failure.
Sweeps record per-point failures in their status column and still exit 0.
"""
import argparse
import math
import sys

import numpy as np

from . import __version__
from .config import ParsedConfig, parse_config
from .core import RingParams, effective_rates, t_single
from .driven import LABELS, AmplitudeState, evolve, observables, steady_state
from .errors import ComputationError, RingQEDError, ValidationError
from .oracle import build_model, transmission
from .output import FORMATS, render, render_table, write_text
from .quadrature import QuadratureSpec
from .scattering import TwoPhotonInput, g2_scatter
from .sweep import (Axis, PRESET_NAMES, DEFAULT_GRID, SweepSettings, SweepSpec, run_preset,
                    run_record, run_sweep)

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--out", default="-", help="output path (default stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--exact-kernel", action="store_true",
                   help="use the cosine-corrected coupling sum in the bound-kernel denominator")
    p.add_argument("--tau-d", type=float, help="contact-point delay in microseconds")
    p.add_argument("--quad-tol", type=float, help="relative quadrature tolerance (default 1e-8)")
    p.add_argument("--workers", type=int, default=None, help="threads for sweeps")
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)


def build_parser():
    parser = _Parser(prog="ringqed", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("single", help="single-photon |t - 1| sweep")
    _common(p)

    p = sub.add_parser("g2scatter", help="two-photon output g2")
    _common(p)
    p.add_argument("--omega1", type=float)
    p.add_argument("--omega2", type=float)

    p = sub.add_parser("driven", help="driven intracavity amplitudes")
    p.add_argument("mode", choices=("steady", "evolve"))
    _common(p)
    p.add_argument("--t-end", type=float)
    p.add_argument("--dt", type=float)

    p = sub.add_parser("oracle", help="discretized-waveguide check of the transmission")
    p.add_argument("mode", choices=("verify",))
    _common(p)
    p.add_argument("--n-modes", type=int)
    p.add_argument("--probes", type=float, nargs="+", help="probe detunings in units of kappa_a")

    p = sub.add_parser("preset", help="reproduce a figure grid")
    p.add_argument("name", choices=PRESET_NAMES)
    _common(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="points per axis for 2-D maps")
    return parser


def _load(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    else:
        cfg = ParsedConfig(RingParams(), None, {"quad_tol": 1e-8, "tau_d": 0.0})
    if args.tau_d is not None:
        cfg.params = cfg.params.replace(tau_d=args.tau_d)
    opts = cfg.options
    quad = QuadratureSpec(
        rel_tol=args.quad_tol if args.quad_tol is not None else opts.get("quad_tol", 1e-8),
        window=opts.get("quad_window", 1e3),
        max_intervals=opts.get("max_intervals", QuadratureSpec.max_intervals))
    workers = args.workers if args.workers is not None else opts.get("workers", 1)
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    settings = SweepSettings(quad=quad, exact_kernel=args.exact_kernel or opts.get("exact_kernel", False),
                             backend=args.backend or opts.get("backend"), workers=workers)
    return cfg, settings


def _sweep_or(cfg, observable, fallback):
    spec = cfg.sweep or fallback
    if spec is None:
        return None
    if spec.observable != observable and not (observable == "ln_g2_driven" and spec.observable == "populations"):
        spec = SweepSpec(spec.axis1, spec.axis2, observable)
    return spec


def _emit_sweep(args, cfg, spec, settings):
    res = run_sweep(cfg.params, spec, settings)
    write_text(render(res, run_record(cfg.params, spec, settings), args.format), args.out)


def cmd_single(args):
    cfg, settings = _load(args)
    spec = _sweep_or(cfg, "t_minus_one_abs", SweepSpec(Axis("detuning1", -10.0, 10.0, 201)))
    _emit_sweep(args, cfg, spec, settings)


def cmd_g2scatter(args):
    cfg, settings = _load(args)
    if cfg.sweep is not None:
        _emit_sweep(args, cfg, _sweep_or(cfg, "ln_g2_scatter", None), settings)
        return
    p = cfg.params
    w1 = args.omega1 if args.omega1 is not None else cfg.options.get("omega1", p.omega_a)
    w2 = args.omega2 if args.omega2 is not None else cfg.options.get("omega2", p.omega_a)
    r = g2_scatter(TwoPhotonInput(w1, w2), p, settings.quad, exact_kernel=settings.exact_kernel,
                   backend=settings.backend)
    cols = ["omega1", "omega2", "t1_re", "t1_im", "t2_re", "t2_im", "T_re", "T_im", "g2", "ln_g2", "quad_error"]
    row = [w1, w2, r.t1.real, r.t1.imag, r.t2.real, r.t2.imag, r.T.real, r.T.imag, r.g2,
           math.log(r.g2) if r.g2 > 0 else -math.inf, r.quad_error]
    write_text(render_table(cols, [row], run_record(p, None, settings), args.format), args.out)


def _amp_columns():
    return [f"{n}_{part}" for n in LABELS for part in ("re", "im")]


def cmd_driven(args):
    cfg, settings = _load(args)
    p = cfg.params
    if args.mode == "steady":
        if cfg.sweep is not None:
            _emit_sweep(args, cfg, _sweep_or(cfg, "ln_g2_driven", None), settings)
            return
        state = steady_state(p)
        amps = state.as_array()
        obs = observables(state)
        cols = _amp_columns() + [f"pop_{n}" for n in LABELS] + ["n_ccw", "g2"]
        row = [x for a in amps for x in (a.real, a.imag)] + list(obs.populations) + [obs.n_ccw, obs.g2]
        write_text(render_table(cols, [row], run_record(p, None, settings), args.format), args.out)
        return
    t_end = args.t_end if args.t_end is not None else cfg.options.get("t_end")
    if t_end is None:
        t_end = 50.0 / effective_rates(p).g_minus
    dt = args.dt if args.dt is not None else cfg.options.get("dt")
    traj = evolve(AmplitudeState.vacuum(), p, t_end, dt, backend=settings.backend)
    cols = ["t"] + _amp_columns()
    rows = [[t] + [x for a in s for x in (a.real, a.imag)] for t, s in zip(traj.times, traj.states)]
    rec = run_record(p, None, settings, extra={"integrator": {"scheme": "rk4", "dt": traj.dt, "t_end": t_end,
                                                              "pin_vacuum": True}})
    write_text(render_table(cols, rows, rec, args.format), args.out)


def cmd_oracle(args):
    cfg, settings = _load(args)
    p = cfg.params
    opts = cfg.options
    n_modes = args.n_modes or opts.get("n_modes", 4000)
    model = build_model(p, n_modes, opts.get("bandwidth"), opts.get("linewidth", "dressed"))
    probes = args.probes or list(opts.get("probes", (0.0, 1.0, 2.0)))
    rows = []
    worst = 0.0
    for d in probes:
        est = transmission(model, p.omega_a + d * p.kappa_a, opts.get("sigma"), backend=settings.backend)
        worst = max(worst, est.rel_error)
        rows.append([est.omega, est.t_numeric.real, est.t_numeric.imag, est.t_analytic.real,
                     est.t_analytic.imag, est.rel_error])
    cols = ["omega", "t_num_re", "t_num_im", "t_an_re", "t_an_im", "rel_error"]
    rec = run_record(p, None, settings, extra={"oracle": {
        "n_modes": model.n_modes, "bandwidth": model.bandwidth, "linewidth": model.linewidth,
        "max_rel_error": worst}})
    write_text(render_table(cols, rows, rec, args.format), args.out)


def cmd_preset(args):
    _, settings = _load(args)
    res, rec = run_preset(args.name, settings, n=args.grid)
    write_text(render(res, rec, args.format), args.out)


COMMANDS = {"single": cmd_single, "g2scatter": cmd_g2scatter, "driven": cmd_driven,
            "oracle": cmd_oracle, "preset": cmd_preset}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"ringqed: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ComputationError as exc:
        print(f"ringqed: {exc.status}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (OSError, RingQEDError) as exc:
        print(f"ringqed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
