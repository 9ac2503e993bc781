"""Command-line front end.

Subcommands: classify, sweep, borders, tables, ramsey, simulate, hopf-demo.
Model parameters come from flags or an optional JSON config file (flags win).
CSV output carries a header row, '#'-prefixed metadata comments, and floats
with 17 significant digits so files round-trip and are byte-reproducible.
Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import contextmanager

from . import kernels
from .linalg2 import ConvergenceError, Mat2, SingularSystemError
from .model import MatrixVariant, ModelParams, TaylorRule, build_matrices
from .ramsey import (
    AnchorUnavailableError,
    Preferences,
    ShockGainConvention,
    TABLE2_WEIGHTS,
    lqr_triangle_sweep,
    solve_ramsey,
)
from .simulate import ShockSpec, hopf_demo, msv_path, ramsey_path, simulate_closed_loop, solve_msv
from .stability import (
    _CODE_TO_LABEL,
    InterestRateTiming,
    classify_determinacy,
    classify_region,
    discriminant_border,
    flip_border,
    grid_axis,
    hopf_border,
    plane_coefficients,
    saddle_node_border,
    triangle_vertices,
)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _err(message: str) -> None:
    prefix = "error:"
    if sys.stderr.isatty() and not os.environ.get("NO_COLOR"):
        prefix = "\x1b[31merror:\x1b[0m"
    print(f"{prefix} {message}", file=sys.stderr)


@contextmanager
def _out_stream(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a single JSON object")
    return cfg


def _merged(args: argparse.Namespace, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in cfg:
        return cfg[key]
    return default


def _params_from(args: argparse.Namespace, cfg: dict) -> ModelParams:
    variant = _merged(args, cfg, "variant", "text")
    return ModelParams(
        gamma=float(_merged(args, cfg, "gamma", 0.5)),
        kappa=float(_merged(args, cfg, "kappa", 0.1)),
        beta=float(_merged(args, cfg, "beta", 0.99)),
        rho_z=float(_merged(args, cfg, "rho_z", 0.9)),
        rho_u=float(_merged(args, cfg, "rho_u", 0.9)),
        variant=MatrixVariant(variant),
    )


def _mat_rows(m: Mat2 | None):
    if m is None:
        return None
    return [[m.a11, m.a12], [m.a21, m.a22]]


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--rho-z", dest="rho_z", type=float)
    p.add_argument("--rho-u", dest="rho_u", type=float)
    p.add_argument("--variant", choices=[v.value for v in MatrixVariant])
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], dest="fmt")


def cmd_classify(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = _params_from(args, cfg)
    f_pi, f_x = args.f_pi, args.f_x
    tol = float(_merged(args, cfg, "border_tol", 1e-9))
    rc = classify_region(params, f_x, f_pi, tol)
    rule = TaylorRule(f_x=f_x, f_pi=f_pi)
    det_fwd = classify_determinacy(params, rule, InterestRateTiming.FORWARD_LOOKING, tol)
    det_pre = classify_determinacy(params, rule, InterestRateTiming.PREDETERMINED, tol)
    e = rc.eigen
    record = {
        "f_pi": f_pi,
        "f_x": f_x,
        "variant": params.variant.value,
        "region": rc.label.value,
        "stable_count": rc.stable_count,
        "trace": e.trace,
        "det": e.det,
        "discriminant": e.discriminant,
        "eigenvalues": [[e.lambda1.real, e.lambda1.imag],
                        [e.lambda2.real, e.lambda2.imag]],
        "moduli": [e.modulus1, e.modulus2],
        "determinacy": {"forward_looking": det_fwd.value,
                        "predetermined": det_pre.value},
    }
    fmt = _merged(args, cfg, "fmt", "json")
    with _out_stream(args.output) as out:
        if fmt == "json":
            json.dump(record, out, indent=2)
            out.write("\n")
        else:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["f_pi", "f_x", "region", "stable_count",
                        "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2",
                        "modulus1", "modulus2",
                        "determinacy_forward_looking", "determinacy_predetermined"])
            w.writerow([_fmt(f_pi), _fmt(f_x), rc.label.value, rc.stable_count,
                        _fmt(e.lambda1.real), _fmt(e.lambda1.imag),
                        _fmt(e.lambda2.real), _fmt(e.lambda2.imag),
                        _fmt(e.modulus1), _fmt(e.modulus2),
                        det_fwd.value, det_pre.value])
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = _params_from(args, cfg)
    f_pi_min = float(_merged(args, cfg, "f_pi_min", -5.0))
    f_pi_max = float(_merged(args, cfg, "f_pi_max", 90.0))
    f_x_min = float(_merged(args, cfg, "f_x_min", -10.0))
    f_x_max = float(_merged(args, cfg, "f_x_max", 2.0))
    n_pi = int(_merged(args, cfg, "n_pi", 500))
    n_x = int(_merged(args, cfg, "n_x", 500))
    tol = float(_merged(args, cfg, "border_tol", 1e-9))

    f_pi_values = grid_axis((f_pi_min, f_pi_max), n_pi)
    f_x_values = grid_axis((f_x_min, f_x_max), n_x)
    t_a, d_a, g, g_ob, gk_ob = plane_coefficients(params)
    codes, stable, _, _, re1, im1, re2, im2, mo1, mo2 = kernels.classify_grid(
        t_a, d_a, g, g_ob, gk_ob, f_pi_values, f_x_values, tol)

    with _out_stream(args.output) as out:
        out.write(f"# variant={params.variant.value} gamma={_fmt(params.gamma)}"
                  f" kappa={_fmt(params.kappa)} beta={_fmt(params.beta)}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["f_pi", "f_x", "region", "stable_count",
                    "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2",
                    "modulus1", "modulus2"])
        i = 0
        for f_pi in f_pi_values:
            fp = _fmt(f_pi)
            for f_x in f_x_values:
                w.writerow([fp, _fmt(f_x), _CODE_TO_LABEL[codes[i]].value,
                            stable[i], _fmt(re1[i]), _fmt(im1[i]),
                            _fmt(re2[i]), _fmt(im2[i]),
                            _fmt(mo1[i]), _fmt(mo2[i])])
                i += 1
    return 0


def cmd_borders(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = _params_from(args, cfg)
    f_pi_min = float(_merged(args, cfg, "f_pi_min", -5.0))
    f_pi_max = float(_merged(args, cfg, "f_pi_max", 90.0))
    f_x_min = float(_merged(args, cfg, "f_x_min", -10.0))
    f_x_max = float(_merged(args, cfg, "f_x_max", 2.0))
    samples = int(_merged(args, cfg, "samples", 200))

    pi_axis = grid_axis((f_pi_min, f_pi_max), samples)
    x_axis = grid_axis((f_x_min, f_x_max), samples)
    with _out_stream(args.output) as out:
        out.write(f"# variant={params.variant.value}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["border", "f_pi", "f_x"])
        for f_pi in pi_axis:
            w.writerow(["hopf", _fmt(f_pi), _fmt(hopf_border(params, f_pi))])
        for f_pi in pi_axis:
            w.writerow(["flip", _fmt(f_pi), _fmt(flip_border(params, f_pi))])
        for f_x in x_axis:
            w.writerow(["saddle-node", _fmt(saddle_node_border(params, f_x)),
                        _fmt(f_x)])
        for f_x in x_axis:
            for f_pi in discriminant_border(params, f_x):
                w.writerow(["discriminant", _fmt(f_pi), _fmt(f_x)])
    return 0


def cmd_tables(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    out_dir = _merged(args, cfg, "out_dir", ".")
    os.makedirs(out_dir, exist_ok=True)
    base = {k: _merged(args, cfg, k, d) for k, d in
            (("gamma", 0.5), ("kappa", 0.1), ("beta", 0.99),
             ("rho_z", 0.9), ("rho_u", 0.9))}
    text_params = ModelParams(variant=MatrixVariant.TEXT, **base)
    appa_params = ModelParams(variant=MatrixVariant.APPENDIX_A, **base)

    with open(os.path.join(out_dir, "table1.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["point", "lambda1", "lambda2", "sum", "product", "f_pi", "f_x"])
        for v in triangle_vertices(text_params):
            w.writerow([v.name, _fmt(v.eigen.lambda1.real),
                        _fmt(v.eigen.lambda2.real), _fmt(v.trace), _fmt(v.det),
                        _fmt(v.f_pi), _fmt(v.f_x)])

    rows = lqr_triangle_sweep(appa_params, TABLE2_WEIGHTS)
    with open(os.path.join(out_dir, "table2.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["minimize", "mu_pi", "mu_x", "mu_i",
                    "abs_lambda1", "abs_lambda2", "f_pi", "f_x", "f_z", "f_u"])
        for r in rows:
            if r.error:
                return _numerical_failure(f"table2 row {r.label!r}: {r.error}")
            w.writerow([r.label, _fmt(r.mu_pi), _fmt(r.mu_x), _fmt(r.mu_i),
                        _fmt(r.modulus1), _fmt(r.modulus2), _fmt(r.f_pi),
                        _fmt(r.f_x), _fmt(r.f_z), _fmt(r.f_u)])

    with open(os.path.join(out_dir, "table3.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["minimize", "mu_pi", "mu_x", "mu_i",
                    "x0_z0", "x0_u0", "pi0_z0", "pi0_u0"])
        for r in rows:
            n = r.anchor
            if n is None:
                w.writerow([r.label, _fmt(r.mu_pi), _fmt(r.mu_x), _fmt(r.mu_i),
                            "nan", "nan", "nan", "nan"])
            else:
                w.writerow([r.label, _fmt(r.mu_pi), _fmt(r.mu_x), _fmt(r.mu_i),
                            _fmt(n.a11), _fmt(n.a12), _fmt(n.a21), _fmt(n.a22)])
    return 0


def cmd_ramsey(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = _params_from_default_appa(args, cfg)
    convention = ShockGainConvention(_merged(args, cfg, "shock_gains", "reference"))

    if args.sweep:
        if args.sweep != "table2":
            raise ValueError(f"unknown sweep spec {args.sweep!r}")
        rows = lqr_triangle_sweep(params, TABLE2_WEIGHTS, convention)
        with _out_stream(args.output) as out:
            out.write(f"# variant={params.variant.value} shock_gains={convention.value}\n")
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["minimize", "mu_pi", "mu_x", "mu_i",
                        "abs_lambda1", "abs_lambda2", "f_pi", "f_x", "f_z", "f_u"])
            for r in rows:
                w.writerow([r.label, _fmt(r.mu_pi), _fmt(r.mu_x), _fmt(r.mu_i),
                            _fmt(r.modulus1), _fmt(r.modulus2), _fmt(r.f_pi),
                            _fmt(r.f_x), _fmt(r.f_z), _fmt(r.f_u)])
        return 0

    prefs = Preferences(mu_pi=float(_merged(args, cfg, "mu_pi", 1.0)),
                        mu_x=float(_merged(args, cfg, "mu_x", 0.0)),
                        mu_i=float(_merged(args, cfg, "mu_i", 1e-7)))
    sol = solve_ramsey(params, prefs, convention)
    record = {
        "variant": params.variant.value,
        "shock_gains": convention.value,
        "mu_pi": prefs.mu_pi, "mu_x": prefs.mu_x, "mu_i": prefs.mu_i,
        "f_x": sol.f_y[0], "f_pi": sol.f_y[1],
        "f_z": sol.f_z[0], "f_u": sol.f_z[1],
        "p_y": _mat_rows(sol.p_y),
        "p_z": _mat_rows(sol.p_z),
        "anchor": _mat_rows(sol.n),
        "moduli": [sol.eigen.modulus1, sol.eigen.modulus2],
        "eigenvalues": [[sol.eigen.lambda1.real, sol.eigen.lambda1.imag],
                        [sol.eigen.lambda2.real, sol.eigen.lambda2.imag]],
        "riccati_iterations": sol.riccati_iterations,
        "riccati_residual": sol.riccati_residual,
        "sylvester_residual": sol.sylvester_residual,
    }
    with _out_stream(args.output) as out:
        json.dump(record, out, indent=2)
        out.write("\n")
    return 0


def _params_from_default_appa(args: argparse.Namespace, cfg: dict) -> ModelParams:
    """Optimal-policy commands default to the benchmark matrix convention."""
    if getattr(args, "variant", None) is None and "variant" not in cfg:
        base = {k: float(_merged(args, cfg, k, d)) for k, d in
                (("gamma", 0.5), ("kappa", 0.1), ("beta", 0.99),
                 ("rho_z", 0.9), ("rho_u", 0.9))}
        return ModelParams(variant=MatrixVariant.APPENDIX_A, **base)
    return _params_from(args, cfg)


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    regime = _merged(args, cfg, "regime", None)
    if regime is None:
        raise ValueError("--regime is required (ramsey, taylor-msv, closed-loop)")
    horizon = int(_merged(args, cfg, "horizon", 50))
    seed = _merged(args, cfg, "seed", None)
    spec = ShockSpec(z0=float(_merged(args, cfg, "z0", 0.0)),
                     u0=float(_merged(args, cfg, "u0", 0.0)),
                     seed=None if seed is None else int(seed),
                     sigma_z=float(_merged(args, cfg, "sigma_z", 0.0)),
                     sigma_u=float(_merged(args, cfg, "sigma_u", 0.0)))

    if regime == "ramsey":
        params = _params_from_default_appa(args, cfg)
        prefs = Preferences(mu_pi=float(_merged(args, cfg, "mu_pi", 1.0)),
                            mu_x=float(_merged(args, cfg, "mu_x", 0.0)),
                            mu_i=float(_merged(args, cfg, "mu_i", 1e-7)))
        convention = ShockGainConvention(_merged(args, cfg, "shock_gains", "reference"))
        sol = solve_ramsey(params, prefs, convention)
        traj = ramsey_path(sol, spec, horizon)
    else:
        params = _params_from(args, cfg)
        rule = TaylorRule(f_x=float(_merged(args, cfg, "f_x", 0.0)),
                          f_pi=float(_merged(args, cfg, "f_pi", 0.0)),
                          f_z=float(_merged(args, cfg, "f_z", 0.0)),
                          f_u=float(_merged(args, cfg, "f_u", 0.0)))
        m = build_matrices(params)
        if regime == "taylor-msv":
            n_msv = solve_msv(m, rule)
            traj = msv_path(m, rule, n_msv, spec, horizon)
        elif regime == "closed-loop":
            rc = classify_region(params, rule.f_x, rule.f_pi)
            if max(rc.eigen.modulus1, rc.eigen.modulus2) > 1.0 + 1e-9:
                raise ValueError(
                    "closed loop is explosive at these gains; forward iteration "
                    "is meaningless -- use --regime taylor-msv instead")
            y0 = (float(_merged(args, cfg, "x0", 0.0)),
                  float(_merged(args, cfg, "pi0", 0.0)))
            traj = simulate_closed_loop(m, rule, y0, spec, horizon)
        else:
            raise ValueError(f"unknown regime {regime!r}")

    with _out_stream(args.output) as out:
        out.write(f"# seed={spec.seed}\n")
        w = csv.writer(out, lineterminator="\n")
        header = ["t", "x", "pi", "i", "z", "u"]
        with_phi = traj.phi_x is not None
        if with_phi:
            header += ["phi_x", "phi_pi"]
        w.writerow(header)
        for t in range(traj.horizon + 1):
            row = [t, _fmt(traj.x[t]), _fmt(traj.pi[t]), _fmt(traj.i[t]),
                   _fmt(traj.z[t]), _fmt(traj.u[t])]
            if with_phi:
                row += [_fmt(traj.phi_x[t]), _fmt(traj.phi_pi[t])]
            w.writerow(row)
    return 0


def cmd_hopf_demo(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = _params_from(args, cfg)
    prefs = Preferences(mu_pi=float(_merged(args, cfg, "mu_pi", 1.0)),
                        mu_x=float(_merged(args, cfg, "mu_x", 1.0)),
                        mu_i=float(_merged(args, cfg, "mu_i", 1e-7)))
    rule = TaylorRule(f_x=float(_merged(args, cfg, "f_x", 0.5)),
                      f_pi=float(_merged(args, cfg, "f_pi", 1.5)))
    report = hopf_demo(params, prefs, rule)
    record = {
        "ramsey_gains": {"f_x": report.ramsey_gains[0], "f_pi": report.ramsey_gains[1]},
        "nk_gains": {"f_x": report.nk_gains[0], "f_pi": report.nk_gains[1]},
        "ramsey_moduli": list(report.ramsey_moduli),
        "nk_moduli": [report.nk_eigen.modulus1, report.nk_eigen.modulus2],
        "nk_region": report.nk_region.label.value,
        "d_ramsey": report.d_ramsey,
        "d_nk": report.d_nk,
        "crossing_fraction": report.crossing_fraction,
        "crossing_gains": None if report.crossing_gains is None else
            {"f_x": report.crossing_gains[0], "f_pi": report.crossing_gains[1]},
        "warning": report.warning,
    }
    with _out_stream(args.output) as out:
        json.dump(record, out, indent=2)
        out.write("\n")
    return 0


def _numerical_failure(message: str) -> int:
    _err(f"numerical failure: {message}")
    return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nkpolicy",
        description="stability maps and optimal policy for the small "
                    "New-Keynesian model")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one rule point")
    _add_model_flags(p)
    p.add_argument("--f-pi", dest="f_pi", type=float, required=True)
    p.add_argument("--f-x", dest="f_x", type=float, required=True)
    p.add_argument("--border-tol", dest="border_tol", type=float)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classify a rule-plane grid to CSV")
    _add_model_flags(p)
    p.add_argument("--f-pi-min", dest="f_pi_min", type=float)
    p.add_argument("--f-pi-max", dest="f_pi_max", type=float)
    p.add_argument("--f-x-min", dest="f_x_min", type=float)
    p.add_argument("--f-x-max", dest="f_x_max", type=float)
    p.add_argument("--n-pi", dest="n_pi", type=int)
    p.add_argument("--n-x", dest="n_x", type=int)
    p.add_argument("--border-tol", dest="border_tol", type=float)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("borders", help="sample the four bifurcation borders")
    _add_model_flags(p)
    p.add_argument("--f-pi-min", dest="f_pi_min", type=float)
    p.add_argument("--f-pi-max", dest="f_pi_max", type=float)
    p.add_argument("--f-x-min", dest="f_x_min", type=float)
    p.add_argument("--f-x-max", dest="f_x_max", type=float)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_borders)

    p = sub.add_parser("tables", help="write the three benchmark tables as CSV")
    _add_model_flags(p)
    p.add_argument("--out-dir", dest="out_dir")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("ramsey", help="solve the optimal-policy regulator")
    _add_model_flags(p)
    p.add_argument("--mu-pi", dest="mu_pi", type=float)
    p.add_argument("--mu-x", dest="mu_x", type=float)
    p.add_argument("--mu-i", dest="mu_i", type=float)
    p.add_argument("--shock-gains", dest="shock_gains",
                   choices=[c.value for c in ShockGainConvention])
    p.add_argument("--sweep", help="'table2' runs the benchmark weight grid")
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("simulate", help="simulate a trajectory to CSV")
    _add_model_flags(p)
    p.add_argument("--regime", choices=["ramsey", "taylor-msv", "closed-loop"])
    p.add_argument("--horizon", type=int)
    p.add_argument("--z0", type=float)
    p.add_argument("--u0", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--pi0", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--sigma-z", dest="sigma_z", type=float)
    p.add_argument("--sigma-u", dest="sigma_u", type=float)
    p.add_argument("--mu-pi", dest="mu_pi", type=float)
    p.add_argument("--mu-x", dest="mu_x", type=float)
    p.add_argument("--mu-i", dest="mu_i", type=float)
    p.add_argument("--shock-gains", dest="shock_gains",
                   choices=[c.value for c in ShockGainConvention])
    p.add_argument("--f-pi", dest="f_pi", type=float)
    p.add_argument("--f-x", dest="f_x", type=float)
    p.add_argument("--f-z", dest="f_z", type=float)
    p.add_argument("--f-u", dest="f_u", type=float)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("hopf-demo", help="compare the two policy regimes")
    _add_model_flags(p)
    p.add_argument("--mu-pi", dest="mu_pi", type=float)
    p.add_argument("--mu-x", dest="mu_x", type=float)
    p.add_argument("--mu-i", dest="mu_i", type=float)
    p.add_argument("--f-pi", dest="f_pi", type=float)
    p.add_argument("--f-x", dest="f_x", type=float)
    p.set_defaults(func=cmd_hopf_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConvergenceError, SingularSystemError, AnchorUnavailableError) as exc:
        return _numerical_failure(str(exc))
    except (ValueError, OSError) as exc:
        _err(f"invalid input: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
