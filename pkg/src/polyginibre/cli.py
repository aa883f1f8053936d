"""Command-line interface: eigenvalue tables, count statistics, sampling,
variance curves, and the self-validation battery.

Every flag can also be supplied through an environment variable named
POLYGINIBRE_<FLAG> (e.g. POLYGINIBRE_FORMAT=json); explicit flags win.
Exit codes: 0 success, 1 numeric or validation failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from . import __version__, sampler, spectra, statistics, validate
from .exceptions import PolyGinibreError

_ENV_PREFIX = "POLYGINIBRE_"


def _env_default(name, fallback=None):
    return os.environ.get(_ENV_PREFIX + name.upper().replace("-", "_"),
                          fallback)


def _fmt(x):
    return format(float(x), ".17g")


def _add_common(p, radius=True):
    p.add_argument("--m", type=int, default=_env_default("m", 0),
                   help="Landau index (nonnegative integer)")
    if radius:
        p.add_argument("--radius", type=float,
                       default=_env_default("radius", 1.0),
                       help="disk radius R > 0")
    p.add_argument("--tol", type=float, default=_env_default("tol", 1e-8),
                   help="eigenvalue-table tail tolerance")
    p.add_argument("--format", choices=("csv", "json"),
                   default=_env_default("format", "csv"),
                   help="output format")
    p.add_argument("--out", default=_env_default("out"),
                   help="write output to FILE instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyginibre",
        description="Mean/variance of the disk point count of the "
                    "polyanalytic Ginibre-type determinantal process.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigs", help="Bernoulli eigenvalue table")
    _add_common(p)
    p.add_argument("--kmax", type=int, default=_env_default("kmax"),
                   help="emit entries k = 0..kmax (default: until tail < tol)")

    p = sub.add_parser("mean", help="mean count and residual vs R^2")
    _add_common(p)

    p = sub.add_parser("variance", help="variance via all routes")
    _add_common(p)

    p = sub.add_parser("sample", help="Monte Carlo count replicates")
    _add_common(p)
    p.add_argument("--replicates", type=int,
                   default=_env_default("replicates", 1000))
    p.add_argument("--seed", type=int, default=_env_default("seed", 0))

    p = sub.add_parser("curve", help="variance vs R over a radius grid")
    _add_common(p, radius=False)
    p.add_argument("--r-min", type=float, default=_env_default("r_min", 0.5))
    p.add_argument("--r-max", type=float, default=_env_default("r_max", 8.0))
    p.add_argument("--r-steps", type=int, default=_env_default("r_steps", 16))

    p = sub.add_parser("validate", help="run the acceptance battery")
    p.add_argument("--format", choices=("csv", "json", "text"),
                   default=_env_default("format", "text"))
    p.add_argument("--out", default=_env_default("out"))
    return parser


def _cmd_eigs(args):
    m, R, tol = int(args.m), float(args.radius), float(args.tol)
    if args.kmax is not None:
        ks = range(int(args.kmax) + 1)
        betas = [spectra.beta_eigenvalue(m, k, R) for k in ks]
    else:
        table = spectra.build_eigenvalue_table(m, R, tol=tol)
        betas = list(table.values)
    rows = []
    remaining = R * R
    for k, b in enumerate(betas):
        oracle = spectra.beta_eigenvalue_quadrature(m, k, R)
        remaining -= b
        rows.append({"k": k, "beta": b, "beta_oracle": oracle,
                     "method": "closed_form",
                     "residual": max(remaining, 0.0)})
    if args.format == "json":
        return json.dumps({"m": m, "R": R,
                           "values": [{**r, "beta": float(_fmt(r["beta"])),
                                       "beta_oracle": float(_fmt(r["beta_oracle"])),
                                       "residual": float(_fmt(r["residual"]))}
                                      for r in rows]})
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["k", "beta", "beta_oracle", "method", "residual"])
    for r in rows:
        w.writerow([r["k"], _fmt(r["beta"]), _fmt(r["beta_oracle"]),
                    r["method"], _fmt(r["residual"])])
    return buf.getvalue()


def _cmd_mean(args):
    m, R, tol = int(args.m), float(args.radius), float(args.tol)
    mu = statistics.mean_count(m, R, tol=tol)
    residual = abs(mu - R * R)
    if args.format == "json":
        return json.dumps({"m": m, "R": R,
                           "mean": float(_fmt(mu)),
                           "residual_vs_R2": float(_fmt(residual))})
    return f"mean,residual_vs_R2\n{_fmt(mu)},{_fmt(residual)}\n"


def _cmd_variance(args):
    m, R, tol = int(args.m), float(args.radius), float(args.tol)
    rep = statistics.variance_report(m, R, tol=tol)
    if args.format == "json":
        return rep.to_json()
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["route", "value"])
    for name in sorted(rep.route_values):
        w.writerow([name, _fmt(rep.route_values[name])])
    w.writerow(["max_pairwise_discrepancy",
                _fmt(rep.max_pairwise_discrepancy)])
    for n in rep.notes:
        w.writerow(["note", n])
    return buf.getvalue()


def _cmd_sample(args):
    m, R, tol = int(args.m), float(args.radius), float(args.tol)
    s = sampler.sample_counts(m, R, int(args.replicates), int(args.seed),
                              tol=tol)
    mean, var, se_mean, se_var = sampler.estimate_cumulants(s)
    if args.format == "json":
        return json.dumps({
            "m": m, "R": R, "seed": s.seed, "replicates": len(s.counts),
            "tail_bound": float(_fmt(s.tail_bound)),
            "mean": float(_fmt(mean)), "variance": float(_fmt(var)),
            "se_mean": float(_fmt(se_mean)), "se_variance": float(_fmt(se_var)),
            "counts": list(s.counts),
        })
    summary = (f"# mean={_fmt(mean)} variance={_fmt(var)} "
               f"se_mean={_fmt(se_mean)} se_variance={_fmt(se_var)}\n")
    return summary + s.to_csv()


def _cmd_curve(args):
    m = int(args.m)
    steps = int(args.r_steps)
    r_min, r_max = float(args.r_min), float(args.r_max)
    if steps < 1 or r_min <= 0 or r_max < r_min:
        raise PolyGinibreError("curve grid requires 0 < r-min <= r-max "
                               "and r-steps >= 1")
    cm = statistics.asymptotic_constant(m)
    rows = []
    for i in range(steps):
        R = r_min + (r_max - r_min) * i / max(steps - 1, 1)
        v = statistics.variance_quadrature_38(m, R)
        rows.append({"R": R, "variance": v, "slope": v / R,
                     "asymptote": cm * R})
    if args.format == "json":
        return json.dumps({"m": m, "asymptotic_constant": float(_fmt(cm)),
                           "values": [{k: float(_fmt(v))
                                       for k, v in r.items()}
                                      for r in rows]})
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["R", "variance", "slope", "asymptote"])
    for r in rows:
        w.writerow([_fmt(r["R"]), _fmt(r["variance"]), _fmt(r["slope"]),
                    _fmt(r["asymptote"])])
    return buf.getvalue()


def _cmd_validate(args):
    rep = validate.run_all()
    out = rep.to_json() if args.format == "json" else rep.to_text() + "\n"
    return out, 0 if rep.passed else 1


_COMMANDS = {
    "eigs": _cmd_eigs,
    "mean": _cmd_mean,
    "variance": _cmd_variance,
    "sample": _cmd_sample,
    "curve": _cmd_curve,
}


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            text, status = _cmd_validate(args)
        else:
            text, status = _COMMANDS[args.command](args), 0
    except (PolyGinibreError, ValueError, OverflowError) as exc:
        _emit(json.dumps({"error": type(exc).__name__,
                          "message": str(exc)}) + "\n",
              getattr(args, "out", None))
        return 1
    if text and not text.endswith("\n"):
        text += "\n"
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
