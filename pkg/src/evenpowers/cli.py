"""Command-line front end.

    evenpowers SUBCOMMAND [flags]

Exit status: 0 on success, 1 on usage or domain errors, 2 when a
verification (``verify``/``check``) reports a failed strict check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import bounds, representation, series, special, suite
from .core import EvalOptions, EvenPowersError, PowerParams, TruncationError

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

SUBCOMMANDS = ("rcount", "theta", "ucot", "series", "bounds", "verify",
               "crossover", "sweep", "check")
SERIES_COMMANDS = {"series", "verify"}

# built-in values used when neither a flag nor the config file sets one
DEFAULTS = dict(m=1, k=1, a=1.0, n=None, terms=None, tol=None, a_min=1e-3,
                a_max=1e3, points=25, format="human", out=None, q=0.5, z=1.0,
                with_series=False, quad_points=4096)
_TYPES = dict(m=int, k=int, a=float, n=int, terms=int, tol=float, a_min=float,
              a_max=float, points=int, format=str, out=str, q=float, z=float,
              with_series=lambda v: str(v).lower() in ("1", "true", "yes", "on"),
              quad_points=int)


class UsageError(EvenPowersError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-m", type=int, help="half the power order (power is 2m)")
    common.add_argument("-k", type=int, help="number of summands")
    common.add_argument("-a", type=float, help="shift parameter a > 0")
    common.add_argument("-n", type=int, help="index for rcount")
    common.add_argument("-N", "--terms", type=int, help="truncation limit / max terms")
    common.add_argument("--tol", type=float, help="absolute tolerance")
    common.add_argument("--a-min", type=float)
    common.add_argument("--a-max", type=float)
    common.add_argument("--points", type=int)
    common.add_argument("-q", type=float, help="theta argument in [0, 1)")
    common.add_argument("-z", type=float, help="cotangent-series argument z > 0")
    common.add_argument("--quad-points", type=int)
    common.add_argument("--with-series", action="store_const", const=True,
                        default=None, help="sweep: add s_lower/s_upper columns")
    common.add_argument("--format", choices=("human", "csv", "json"))
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--config", metavar="PATH",
                        help="key=value file; flags override it")
    parser = _Parser(prog="evenpowers", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def read_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key == "N":
                key = "terms"
            if key not in _TYPES:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _TYPES[key](val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}")
    return values


def resolve(ns: argparse.Namespace) -> dict:
    cfg = read_config(ns.config) if ns.config else {}
    out = {}
    for key, default in DEFAULTS.items():
        flag = getattr(ns, key, None)
        out[key] = flag if flag is not None else cfg.get(key, default)
    if out["format"] not in ("human", "csv", "json"):
        raise UsageError(f"unknown format {out['format']!r}")
    return out


def fmt_num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return format(x, ".17g")
    return "" if x is None else str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def render(payload, fmt: str) -> str:
    """Serialize a dict (one record) or a list of dicts (a table)."""
    rows = payload if isinstance(payload, list) else [payload]
    if fmt == "json":
        return json.dumps(_jsonable(payload), ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(rows[0].keys()) if rows else []
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([fmt_num(r[c]) for c in cols])
        return buf.getvalue()
    if isinstance(payload, list):
        cols = list(rows[0].keys()) if rows else []
        lines = ["  ".join(cols)]
        lines += ["  ".join(fmt_num(r[c]) for c in cols) for r in rows]
        return "\n".join(lines) + "\n"
    width = max(len(k) for k in payload) if payload else 0
    return "".join(f"{k:<{width}}  {fmt_num(v)}\n" for k, v in payload.items())


def _params(cfg, convergent: bool) -> PowerParams:
    p = PowerParams(cfg["m"], cfg["k"], cfg["a"])
    if convergent and not p.convergent:
        raise UsageError(f"requires k < 2m (got m={p.m}, k={p.k})")
    return p


def _opts(cfg, tol: float, terms: int) -> EvalOptions:
    return EvalOptions(abs_tol=cfg["tol"] if cfg["tol"] is not None else tol,
                       max_terms=cfg["terms"] if cfg["terms"] is not None else terms,
                       quad_points=cfg["quad_points"])


def cmd_rcount(cfg):
    p = _params(cfg, False)
    if cfg["n"] is not None:
        if cfg["n"] < 0:
            raise UsageError("-n must be >= 0")
        count = int(representation.r_convolution(p, cfg["n"])[cfg["n"]])
        if cfg["format"] == "human":
            return f"{count}\n", EXIT_OK
        return dict(m=p.m, k=p.k, n=cfg["n"], count=count), EXIT_OK
    if cfg["terms"] is None:
        raise UsageError("rcount needs -n or -N")
    rc = representation.r_convolution(p, cfg["terms"])
    cum = rc.cumulative()
    return [dict(n=n, count=int(c), cumulative=int(s))
            for n, (c, s) in enumerate(zip(rc.counts, cum))], EXIT_OK


def _certified(cv, **extra):
    return dict(extra, value=cv.value, error_bound=cv.error_bound,
                terms=cv.terms_used, converged=cv.converged)


def cmd_theta(cfg):
    opts = _opts(cfg, 1e-12, 10_000_000)
    try:
        cv = special.theta(cfg["m"], cfg["q"], opts)
    except TruncationError as exc:
        cv = exc.partial
    return _certified(cv, m=cfg["m"], q=cfg["q"]), EXIT_OK


def cmd_ucot(cfg):
    m, z = cfg["m"], cfg["z"]
    opts = _opts(cfg, 1e-10, 10_000_000)
    try:
        cv = special.u_direct(m, z, opts)
    except TruncationError as exc:
        cv = exc.partial
    rec = _certified(cv, m=m, z=z)
    if m in (1, 2):
        rec["closed_form"] = special.u_closed(m, z)
    return rec, EXIT_OK


def cmd_series(cfg):
    p = _params(cfg, True)
    opts = _opts(cfg, 1e-6, 1 << 22)
    br = series.s_bracket(p, opts)
    iv = series.integral_s(p, EvalOptions(quad_points=cfg["quad_points"]))
    return dict(m=p.m, k=p.k, a=p.a, lower=br.lower, upper=br.upper,
                width=br.width, terms=br.terms, converged=br.converged,
                partial_sum=br.partial_sum, integral=iv.value,
                integral_error=iv.error_bound), EXIT_OK


def cmd_bounds(cfg):
    p = _params(cfg, False)
    bg, ba = bounds.b_geo(p), bounds.b_ana(p)
    return dict(m=p.m, k=p.k, a=p.a, b_geo=bg, b_ana=ba, ratio=ba / bg), EXIT_OK


def report_record(r: bounds.BoundReport) -> dict:
    br = r.s_bracket
    return dict(m=r.params.m, k=r.params.k, a=r.params.a, b_geo=r.b_geo,
                b_ana=r.b_ana, ratio=r.ratio, s_lower=br.lower, s_upper=br.upper,
                terms=br.terms, geo_verified=r.geo_verified,
                ana_verified=r.ana_verified, geo_strict=r.geo_strict,
                ana_strict=r.ana_strict)


def cmd_verify(cfg):
    p = _params(cfg, True)
    r = bounds.verify_bounds(p, _opts(cfg, 1e-3, 1 << 22))
    return report_record(r), EXIT_OK if r.all_strict else EXIT_VERIFY


def cmd_crossover(cfg):
    p = _params(cfg, False)
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-6
    a_star = bounds.crossover(p, cfg["a_min"], cfg["a_max"], tol)
    if cfg["format"] == "human":
        return ("none\n" if a_star is None else fmt_num(a_star) + "\n"), EXIT_OK
    return dict(m=p.m, k=p.k, a_min=cfg["a_min"], a_max=cfg["a_max"],
                a_star=a_star), EXIT_OK


def sweep(params_base: PowerParams, a_min: float, a_max: float, points: int,
          with_series: bool = False, opts: Optional[EvalOptions] = None,
          warn=None) -> list[dict]:
    """Rows (a, b_geo, b_ana, ratio[, s_lower, s_upper]) on a log grid."""
    if not 0 < a_min < a_max or points < 2:
        raise UsageError("sweep needs 0 < a-min < a-max and points >= 2")
    if with_series and not params_base.convergent:
        if warn:
            warn(f"series columns omitted: requires k < 2m "
                 f"(got m={params_base.m}, k={params_base.k})")
        with_series = False
    rows = []
    for a in np.geomspace(a_min, a_max, points):
        p = params_base.with_a(float(a))
        bg, ba = bounds.b_geo(p), bounds.b_ana(p)
        row = dict(a=float(a), b_geo=bg, b_ana=ba, ratio=ba / bg)
        if with_series:
            br = series.s_bracket(p, opts or EvalOptions(abs_tol=1e-6, max_terms=1 << 20))
            row.update(s_lower=br.lower, s_upper=br.upper)
        rows.append(row)
    return rows


def cmd_sweep(cfg):
    p = _params(cfg, False)
    rows = sweep(p, cfg["a_min"], cfg["a_max"], cfg["points"], cfg["with_series"],
                 _opts(cfg, 1e-6, 1 << 20),
                 warn=lambda msg: print(f"warning: {msg}", file=sys.stderr))
    return rows, EXIT_OK


def cmd_check(cfg):
    max_terms = cfg["terms"] if cfg["terms"] is not None else 1 << 22
    results = suite.run_all(max_terms)
    failed = any(not r.passed and not r.informational for r in results)
    if cfg["format"] == "human":
        color = sys.stdout.isatty() and "NO_COLOR" not in os.environ and cfg["out"] is None
        lines = []
        for r in results:
            line = r.line()
            if color:
                code = "33" if r.informational else ("32" if r.passed else "31")
                line = f"\x1b[{code}m{line}\x1b[0m"
            lines.append(line)
        return "\n".join(lines) + "\n", EXIT_VERIFY if failed else EXIT_OK
    rows = [dict(name=r.name, passed=r.passed, informational=r.informational,
                 detail=r.detail) for r in results]
    return rows, EXIT_VERIFY if failed else EXIT_OK


_COMMANDS = dict(rcount=cmd_rcount, theta=cmd_theta, ucot=cmd_ucot,
                 series=cmd_series, bounds=cmd_bounds, verify=cmd_verify,
                 crossover=cmd_crossover, sweep=cmd_sweep, check=cmd_check)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(list(argv) if argv is not None else None)
        cfg = resolve(ns)
        payload, status = _COMMANDS[ns.subcommand](cfg)
    except (EvenPowersError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = payload if isinstance(payload, str) else render(payload, cfg["format"])
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main():
    sys.exit(run())
