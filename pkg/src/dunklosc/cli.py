"""Command-line interface.

Subcommands:
  eval    -- pointwise evaluation of the eigenfunctions and kernels
  verify  -- run a named verification suite (exit 1 on any failed check)
  sweep   -- run a kernel-estimate sweep from a JSON config file
  fixtures -- cross-check library outputs against a golden fixture file

Machine output is JSON {schema, config, results, summary} or CSV (the
flattened results).  Exit codes: 0 all checks pass, 1 a check failed,
2 invalid arguments or config.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .czverify import SweepConfig, default_threads, growth_sweep, lemhom_check, mlem_check, smoothness_sweep
from .heat import component_kernel, der_est_integral, heat_kernel, heat_kernel_1d
from .hermite import eigenvalue, hermite_fn
from .imagpow import duality_check, kernel_t_route, kernel_zeta_route, BumpFunction
from .measure import HalfBallSpec, half_ball_measure
from .specfun import bessel_i_scaled, gamma_complex, laguerre
from .verify import SUITES, run_suite

SCHEMA = "dunklosc/1"


class CliError(Exception):
    """Argument or config validation failure (exit code 2)."""


def _parse_floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated numbers, got {text!r}")


def _parse_ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}")


def _check_alpha(alpha):
    if any(a < -0.5 for a in alpha):
        raise CliError("every alpha component must satisfy alpha >= -1/2")
    return tuple(alpha)


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def _emit(path, fmt, config, results, summary):
    """Single writer for both output formats; '-' means stdout."""
    if fmt == "json":
        doc = {
            "schema": SCHEMA,
            "config": {k: _jsonable(v) for k, v in config.items()},
            "results": [{k: _jsonable(v) for k, v in r.items()} for r in results],
            "summary": {k: _jsonable(v) for k, v in summary.items()},
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        keys = []
        for r in results:
            for k in r:
                if k not in keys:
                    keys.append(k)
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()

        def cell(v):
            v = _jsonable(v)
            if isinstance(v, (list, tuple)):
                return ";".join(str(u) for u in v)
            if isinstance(v, dict):
                return f"{v['re']}+{v['im']}j"
            if isinstance(v, complex):
                return f"{v.real}+{v.imag}j"
            return v

        for r in results:
            writer.writerow({k: cell(r.get(k, "")) for k in keys})
        text = buf.getvalue()
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_eval(args):
    config = {"subcommand": f"eval {args.what}"}
    results = []
    if args.what == "hermite":
        alpha = _check_alpha(_parse_floats(args.alpha))
        n = tuple(_parse_ints(args.n))
        if len(n) != len(alpha):
            raise CliError("--n and --alpha must have the same dimension")
        if min(n) < 0:
            raise CliError("multi-index entries must be nonnegative")
        pts = _parse_floats(args.points)
        d = len(alpha)
        if len(pts) % d != 0:
            raise CliError(f"--points length must be a multiple of d={d}")
        X = np.array(pts).reshape(-1, d)
        vals = hermite_fn(n, alpha, X)
        config.update({"alpha": alpha, "n": n, "eigenvalue": eigenvalue(n, alpha)})
        for p, v in zip(X, vals):
            results.append({"x": tuple(map(float, p)), "value": float(v)})
    elif args.what == "heat":
        alpha = _check_alpha(_parse_floats(args.alpha))
        x = np.array(_parse_floats(args.x))
        y = np.array(_parse_floats(args.y))
        if not (len(x) == len(y) == len(alpha)):
            raise CliError("--x, --y, --alpha must share one dimension")
        for t in _parse_floats(args.t):
            if t <= 0:
                raise CliError("time must be positive")
            rec = {"t": t, "value": float(heat_kernel(alpha, t, x, y))}
            if args.eps is not None:
                eps = tuple(_parse_ints(args.eps))
                rec["component"] = float(component_kernel(alpha, eps, t, x, y))
            results.append(rec)
        config.update({"alpha": alpha, "x": tuple(x), "y": tuple(y)})
    elif args.what == "kernel":
        alpha = _check_alpha(_parse_floats(args.alpha))
        eps = tuple(_parse_ints(args.eps))
        x = np.array(_parse_floats(args.x))
        y = np.array(_parse_floats(args.y))
        if not (len(x) == len(y) == len(alpha) == len(eps)):
            raise CliError("--x, --y, --alpha, --eps must share one dimension")
        if args.gamma <= 0:
            raise CliError("--gamma must be positive")
        rec = {}
        if args.route in ("zeta", "both"):
            kv = kernel_zeta_route(alpha, eps, args.gamma, x, y)
            rec["zeta_route"] = kv.value
            rec["zeta_abserr"] = kv.abserr
        if args.route in ("t", "both"):
            kv = kernel_t_route(alpha, eps, args.gamma, x, y)
            rec["t_route"] = kv.value
            rec["t_abserr"] = kv.abserr
        if args.route == "both":
            rec["route_diff"] = abs(rec["zeta_route"] - rec["t_route"])
        results.append(rec)
        config.update({"alpha": alpha, "eps": eps, "gamma": args.gamma, "x": tuple(x), "y": tuple(y)})
    _emit(args.out, args.format, config, results, {"n_rows": len(results)})
    return 0


def cmd_verify(args):
    if args.suite not in SUITES and args.suite != "all":
        raise CliError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)} or 'all'")
    config = {"subcommand": "verify", "suite": args.suite, "quick": args.quick}
    if args.suite == "duality" and (args.N or args.gamma):
        # single duality run with explicit truncation/order
        f = BumpFunction(((1.0, 2.0),))
        g = BumpFunction(((3.0, 4.0),))
        gamma = args.gamma or 1.0
        lhs, rhs = duality_check((args.alpha0,), (0,), gamma, f, g, N=args.N)
        rel = abs(lhs - rhs) / abs(lhs)
        results = [
            {
                "name": f"duality alpha={args.alpha0} gamma={gamma} N={args.N}",
                "value": rel,
                "tol": args.tol or 1e-4,
                "passed": rel <= (args.tol or 1e-4),
            }
        ]
        config.update({"gamma": gamma, "N": args.N, "alpha": (args.alpha0,)})
    else:
        results = run_suite(args.suite, quick=args.quick)
    n_pass = sum(r["passed"] for r in results)
    summary = {"n_checks": len(results), "n_passed": n_pass, "all_passed": n_pass == len(results)}
    _emit(args.out, args.format, config, results, summary)
    for r in results:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"[{status}] {r['name']}: value={r['value']:.6g} tol={r['tol']:.3g}", file=sys.stderr)
    return 0 if summary["all_passed"] else 1


def _sweep_config(args):
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise CliError(f"cannot read sweep config: {e}")
    for key in ("alpha", "eps", "gamma"):
        if getattr(args, key, None) is not None:
            cfg[key] = getattr(args, key)
    if "alpha" not in cfg:
        raise CliError("sweep needs alpha (config file or --alpha)")
    cfg["alpha"] = _check_alpha(tuple(np.atleast_1d(cfg["alpha"]).astype(float)))
    if args.threads:
        cfg["threads"] = args.threads
    return cfg


def cmd_sweep(args):
    cfg = _sweep_config(args)
    kind = args.kind
    if kind in ("growth", "smoothness"):
        for key in ("eps", "gamma"):
            if key not in cfg:
                raise CliError(f"{kind} sweep needs {key!r}")
        try:
            sc = SweepConfig(**{k: tuple(v) if isinstance(v, list) else v for k, v in cfg.items()})
        except (ValueError, TypeError) as e:
            raise CliError(str(e))
        rep = (growth_sweep if kind == "growth" else smoothness_sweep)(sc)
    elif kind == "mlem":
        rep = mlem_check(cfg["alpha"], b=cfg.get("b", 0.0), c=cfg.get("c", 0.125),
                         samples=cfg.get("samples", 10000), seed=cfg.get("seed", 20240901))
    elif kind == "lemhom":
        rep = lemhom_check(cfg["alpha"], cfg.get("delta", (0.0,) * len(cfg["alpha"])),
                           cfg.get("kappa", (0.0,) * len(cfg["alpha"])),
                           samples=cfg.get("samples", 400), seed=cfg.get("seed", 20240901))
    elif kind == "der-est":
        x = np.asarray(cfg.get("x", [1.5] * len(cfg["alpha"])), dtype=float)
        y = np.asarray(cfg.get("y", [3.5] * len(cfg["alpha"])), dtype=float)
        eps = tuple(cfg.get("eps", (0,) * len(cfg["alpha"])))
        val = der_est_integral(cfg["alpha"], eps, x, y)
        ok = math.isfinite(val)
        _emit(args.out, args.format,
              {"subcommand": "sweep der-est", **{k: _jsonable(v) for k, v in cfg.items()}},
              [{"x": tuple(x), "y": tuple(y), "value": float(val), "finite": ok}],
              {"all_finite": ok})
        return 0 if ok else 1
    else:
        raise CliError(f"unknown sweep kind {kind!r}")
    config = {"subcommand": f"sweep {kind}", **{k: _jsonable(v) for k, v in cfg.items()}}
    summary = {
        "c_emp": rep.c_emp,
        "argmax_x": rep.argmax_x,
        "argmax_y": rep.argmax_y,
        "argmax_near_diag": rep.argmax_near_diag,
        "n_points": rep.n_points,
        "all_finite": rep.all_finite,
    }
    _emit(args.out, args.format, config, rep.records, summary)
    return 0 if rep.all_finite else 1


def _eval_fixture(op, inputs):
    if op == "laguerre":
        return laguerre(inputs["n"], inputs["a"], inputs["x"])
    if op == "bessel_i_scaled":
        return bessel_i_scaled(inputs["nu"], inputs["x"])
    if op == "gamma_complex":
        return gamma_complex(complex(inputs["re"], inputs["im"]))
    if op == "hermite_fn_1d":
        from .hermite import hermite_fn_1d

        return hermite_fn_1d(inputs["n"], inputs["a"], inputs["x"])
    if op == "eigenvalue":
        return eigenvalue(tuple(inputs["n"]), tuple(inputs["alpha"]))
    if op == "heat_kernel_1d":
        return heat_kernel_1d(inputs["a"], inputs["t"], inputs["x"], inputs["y"])
    if op == "heat_kernel":
        return heat_kernel(tuple(inputs["alpha"]), inputs["t"], np.array(inputs["x"]), np.array(inputs["y"]))
    if op == "component_kernel":
        return component_kernel(
            tuple(inputs["alpha"]), tuple(inputs["eps"]), inputs["t"], np.array(inputs["x"]), np.array(inputs["y"])
        )
    if op == "kernel_zeta_route":
        kv = kernel_zeta_route(
            tuple(inputs["alpha"]), tuple(inputs["eps"]), inputs["gamma"], np.array(inputs["x"]), np.array(inputs["y"])
        )
        return kv.value
    if op == "half_ball_measure":
        return half_ball_measure(tuple(inputs["alpha"]), HalfBallSpec(tuple(inputs["center"]), inputs["radius"]))
    raise CliError(f"fixture references unknown op {op!r}")


def _as_complex(v):
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def cmd_fixtures(args):
    try:
        with open(args.file) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read fixture file: {e}")
    if not isinstance(doc, dict) or "fixtures" not in doc or "schema" not in doc:
        raise CliError("fixture file must be an object with 'schema' and 'fixtures'")
    results = []
    for fx in doc["fixtures"]:
        try:
            got = _eval_fixture(fx["op"], fx["inputs"])
        except KeyError as e:
            raise CliError(f"fixture {fx.get('id', '?')} missing field {e}")
        want = _as_complex(fx["expected"])
        tol = float(fx.get("rtol", 1e-10))
        denom = max(abs(want), 1e-300)
        rel = abs(complex(got) - want) / denom
        results.append(
            {"id": fx["id"], "op": fx["op"], "rel_err": rel, "rtol": tol, "passed": rel <= tol}
        )
    n_pass = sum(r["passed"] for r in results)
    summary = {"n_fixtures": len(results), "n_passed": n_pass, "all_passed": n_pass == len(results)}
    _emit(args.out, args.format, {"subcommand": "fixtures", "file": args.file}, results, summary)
    for r in results:
        if not r["passed"]:
            print(f"[FAIL] {r['id']}: rel_err={r['rel_err']:.3g} > rtol={r['rtol']:.3g}", file=sys.stderr)
    return 0 if summary["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dunklosc",
        description="Dunkl harmonic oscillator: eigensystem, heat kernel, imaginary powers, kernel-estimate verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--out", default="-", help="output path, '-' for stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    pe = sub.add_parser("eval", help="evaluate eigenfunctions or kernels")
    pe.add_argument("what", choices=("hermite", "heat", "kernel"))
    pe.add_argument("--alpha", required=True, help="comma-separated multiplicity parameters, each >= -1/2")
    pe.add_argument("--n", help="multi-index (hermite)")
    pe.add_argument("--points", help="flat comma-separated evaluation points (hermite)")
    pe.add_argument("--t", help="comma-separated times (heat)")
    pe.add_argument("--x", help="first argument point")
    pe.add_argument("--y", help="second argument point")
    pe.add_argument("--eps", help="parity vector (kernel / heat component)")
    pe.add_argument("--gamma", type=float, help="imaginary-power order (kernel)")
    pe.add_argument("--route", choices=("zeta", "t", "both"), default="zeta")
    pe.add_argument("--d", type=int, help="dimension (redundant with --alpha; checked if given)")
    common(pe)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite", help=f"one of {sorted(SUITES)} or 'all'")
    pv.add_argument("--quick", action="store_true", help="reduced grids/truncations")
    pv.add_argument("--N", type=int, help="spectral truncation override (duality only)")
    pv.add_argument("--gamma", type=float, help="order override (duality only)")
    pv.add_argument("--alpha0", type=float, default=0.0, help="d=1 alpha for duality override")
    pv.add_argument("--tol", type=float, help="tolerance override (duality only)")
    pv.add_argument("--d", type=int, help="accepted for symmetry; suites fix their own dimensions")
    common(pv)

    ps = sub.add_parser("sweep", help="run a kernel-estimate sweep")
    ps.add_argument("kind", choices=("growth", "smoothness", "mlem", "lemhom", "der-est"))
    ps.add_argument("--config", help="JSON file with SweepConfig fields")
    ps.add_argument("--alpha", type=float, nargs="+", help="multiplicity parameters (overrides config)")
    ps.add_argument("--eps", type=int, nargs="+", help="parity vector (overrides config)")
    ps.add_argument("--gamma", type=float, help="order (overrides config)")
    ps.add_argument("--threads", type=int, default=default_threads(), help="worker threads (env DUNKLOSC_THREADS)")
    common(ps)

    pf = sub.add_parser("fixtures", help="cross-check against a golden fixture file")
    pf.add_argument("--file", default="fixtures/fixtures.json")
    common(pf)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "d", None) is not None and getattr(args, "alpha", None):
        alpha = args.alpha if isinstance(args.alpha, str) else ",".join(map(str, args.alpha))
        if args.d != len(_parse_floats(alpha)):
            print("error: --d disagrees with the length of --alpha", file=sys.stderr)
            return 2
    handlers = {"eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep, "fixtures": cmd_fixtures}
    try:
        return handlers[args.cmd](args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
