"""Command-line front end.

Subcommands: ``report`` (JSON curvature report over a sample grid), ``table``
(CSV of one named quantity), ``classify`` (predicate report as JSON) and
``check`` (the built-in verification suite).  Metrics come from the catalog or
from an inline JSON config with expression strings for a_ij, b_i and phi.
Output is deterministic for a fixed config and seed.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import acceptance
from .catalog import catalog_names, get_metric
from .classify import classify_metric, default_directions
from .errors import ConfigError, FinslerError, UnknownQuantity
from .exprparse import parse
from .exprparse import eval_expr
from .finsler_metric import fundamental, sigma_bh
from .geometry_core import ChartDomain, MetricSpec, beta_at
from .phi_families import (CustomExprPhi, RandersPhi, RiemannSqrtPhi,
                           UnicornPhi, _q_series)
from .spray_curvature import (berwald, douglas, h_curvature, landsberg,
                              ln_sigma_gradient, riemann_flag, s_curvature_def,
                              s_curvature_formula, spray_ab)

QUANTITIES = ("a", "b_form", "gamma", "r", "s", "r_i", "s_i", "bnorm", "Q",
              "G", "B", "E", "L", "D", "R", "K", "S", "H", "sigma")

#: quantities that need a direction as well as a point
_DIRECTIONAL = {"Q", "G", "B", "E", "L", "D", "R", "K", "S", "H"}

_CONFIG_KEYS = {"schema", "metric", "grid", "directions", "tolerances",
                "seed", "out"}
_METRIC_KEYS = {"name", "params", "custom"}
_CUSTOM_KEYS = {"n", "a", "b", "phi", "lo", "hi"}
_PHI_KEYS = {"variant", "k", "b0", "q", "c", "delta", "expr", "params"}
_GRID_KEYS = {"per_axis"}


def _reject_unknown(doc, allowed, where):
    extra = set(doc) - allowed
    if extra:
        raise ConfigError(f"unknown field(s) {sorted(extra)} in {where}")


def _phi_from_config(doc):
    _reject_unknown(doc, _PHI_KEYS, "metric.custom.phi")
    variant = doc.get("variant", "randers")
    if variant == "randers":
        return RandersPhi()
    if variant == "riemann_sqrt":
        return RiemannSqrtPhi(doc.get("k", 1.0))
    if variant == "unicorn":
        return UnicornPhi(doc.get("b0", 1.0), doc.get("k", 0.0),
                          doc.get("q", 1.0), doc.get("c", 1.0),
                          doc.get("delta", 0.05))
    if variant == "custom":
        if "expr" not in doc:
            raise ConfigError("custom phi needs an 'expr' string")
        return CustomExprPhi(doc["expr"], doc.get("params"),
                             b0=doc.get("b0", math.inf),
                             delta=doc.get("delta", 0.05))
    raise ConfigError(f"unknown phi variant {variant!r}")


def _custom_metric(doc):
    _reject_unknown(doc, _CUSTOM_KEYS, "metric.custom")
    for key in ("n", "a", "b", "lo", "hi"):
        if key not in doc:
            raise ConfigError(f"metric.custom missing field {key!r}")
    n = int(doc["n"])
    var_names = ["x1", "x2", "x3"][:n]
    allowed = set(var_names)
    try:
        a_ast = [[parse(str(doc["a"][i][j]), allowed) for j in range(n)]
                 for i in range(n)]
        b_ast = [parse(str(doc["b"][i]), allowed) for i in range(n)]
    except FinslerError as exc:
        raise ConfigError(f"bad expression in metric.custom: {exc}") from exc

    def bind(x):
        return {name: float(x[i]) for i, name in enumerate(var_names)}

    def a(x):
        env = bind(x)
        return np.array([[eval_expr(a_ast[i][j], env) for j in range(n)]
                         for i in range(n)], dtype=float)

    def b(x):
        env = bind(x)
        return np.array([eval_expr(b_ast[i], env) for i in range(n)], dtype=float)

    dom = ChartDomain(tuple(float(v) for v in doc["lo"]),
                      tuple(float(v) for v in doc["hi"]))
    m = MetricSpec(n=n, a=a, b_form=b, chart_domain=dom, name="custom")
    phi = _phi_from_config(doc.get("phi", {}))
    return m, phi


class RunConfig:
    """Validated run configuration (catalog or inline metric, grid, seed)."""

    def __init__(self, doc):
        _reject_unknown(doc, _CONFIG_KEYS, "config")
        if doc.get("schema") != 1:
            raise ConfigError("config must declare \"schema\": 1")
        mdoc = doc.get("metric")
        if not isinstance(mdoc, dict):
            raise ConfigError("config needs a 'metric' object")
        _reject_unknown(mdoc, _METRIC_KEYS, "metric")
        if "custom" in mdoc:
            self.metric, self.phi = _custom_metric(mdoc["custom"])
            self.metric_name = "custom"
        elif "name" in mdoc:
            try:
                entry = get_metric(mdoc["name"], **mdoc.get("params", {}))
            except FinslerError as exc:
                raise ConfigError(str(exc)) from exc
            self.metric, self.phi = entry.metric, entry.phi
            self.metric_name = entry.name
        else:
            raise ConfigError("metric needs either 'name' or 'custom'")
        grid = doc.get("grid", {})
        _reject_unknown(grid, _GRID_KEYS, "grid")
        self.per_axis = int(grid.get("per_axis", 5))
        self.n_directions = int(doc.get("directions", 16))
        if self.n_directions < 4:
            raise ConfigError("direction count must be >= 4")
        self.tolerances = doc.get("tolerances", {})
        self.seed = int(doc.get("seed", 42))
        self.out = doc.get("out")


def _config_from_args(args):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return RunConfig(doc)
    if not getattr(args, "metric", None):
        raise ConfigError("provide --metric NAME or --config FILE")
    params = {}
    for item in getattr(args, "param", None) or []:
        if "=" not in item:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        params[key] = json.loads(val)
    doc = {"schema": 1, "metric": {"name": args.metric, "params": params}}
    if getattr(args, "per_axis", None):
        doc["grid"] = {"per_axis": args.per_axis}
    if getattr(args, "directions", None):
        doc["directions"] = args.directions
    if getattr(args, "seed", None) is not None:
        doc["seed"] = args.seed
    return RunConfig(doc)


def _sample_grid(cfg):
    lo = np.asarray(cfg.metric.chart_domain.lo, dtype=float)
    hi = np.asarray(cfg.metric.chart_domain.hi, dtype=float)
    margin = float(np.min(hi - lo)) * cfg.metric.regularity_margin
    return cfg.metric.chart_domain.grid([cfg.per_axis] * cfg.metric.n,
                                        margin=margin)


def _fmt(v):
    return float(f"{float(v):.12g}")


def cmd_report(cfg):
    """Per-sample curvature records plus the aggregate classification."""
    m, f = cfg.metric, cfg.phi
    grid = _sample_grid(cfg)
    dirs = default_directions(m.n, cfg.n_directions, seed=cfg.seed)
    records = []
    for x in grid:
        try:
            grad = ln_sigma_gradient(m, f, x)
        except FinslerError:
            grad = None
        for y in dirs:
            rec = {"x": [_fmt(v) for v in x], "y": [_fmt(v) for v in y]}
            try:
                fd = fundamental(m, f, x, y)
                rec["F"] = _fmt(fd.F)
                rec["g"] = [[_fmt(v) for v in row] for row in fd.g]
                rec["C_norm"] = _fmt(np.abs(fd.C).max())
                rec["G"] = [_fmt(v) for v in spray_ab(m, f, x, y)]
                B, E = berwald(m, f, x, y)
                rec["B_norm"] = _fmt(np.abs(B).max())
                rec["E_norm"] = _fmt(np.abs(E).max())
                rec["L_norm"] = _fmt(np.abs(landsberg(fd, B)).max())
                rec["D_norm"] = _fmt(np.abs(douglas(m, f, x, y)).max())
                _, K = riemann_flag(m, f, x, y)
                if K is not None:
                    rec["K"] = _fmt(K)
                rec["S_formula"] = _fmt(s_curvature_formula(m, f, x, y))
                if grad is not None:
                    rec["S_def"] = _fmt(s_curvature_def(m, f, x, y, grad))
            except FinslerError as exc:
                rec["error"] = f"{type(exc).__name__}: {exc}"
            records.append(rec)
    try:
        # classification always samples 3 points per axis: a coarser grid can
        # be radius-symmetric and mask a non-constant one-form length
        report = classify_metric(m, f, per_axis=3, dirs=dirs)
        classification = json.loads(report.to_json())
    except FinslerError as exc:
        classification = {"error": f"{type(exc).__name__}: {exc}"}
    doc = {"metric": cfg.metric_name, "n_points": len(grid),
           "n_directions": len(dirs), "records": records,
           "classification": classification}
    return json.dumps(doc, indent=2, sort_keys=True)


def _header_and_row(name, m, bc, x, y, f):
    n = m.n
    idx2 = [(i, j) for i in range(n) for j in range(n)]
    if name == "a":
        return ([f"a_{i+1}{j+1}" for i, j in idx2],
                [bc.a[i, j] for i, j in idx2])
    if name == "b_form":
        return ([f"b_{i+1}" for i in range(n)], list(bc.b_i))
    if name == "gamma":
        idx3 = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
        return ([f"gamma^{i+1}_{j+1}{k+1}" for i, j, k in idx3],
                [bc.gamma[i, j, k] for i, j, k in idx3])
    if name == "r":
        return ([f"r_{i+1}{j+1}" for i, j in idx2], [bc.r[i, j] for i, j in idx2])
    if name == "s":
        return ([f"s_{i+1}{j+1}" for i, j in idx2], [bc.s[i, j] for i, j in idx2])
    if name == "r_i":
        return ([f"r_{i+1}" for i in range(n)], list(bc.r_i))
    if name == "s_i":
        return ([f"s_{i+1}" for i in range(n)], list(bc.s_i))
    if name == "bnorm":
        return (["bnorm"], [bc.b])
    if name == "sigma":
        return (["sigma"], [sigma_bh(m, f, x)])
    if name == "Q":
        alpha = math.sqrt(float(np.asarray(y) @ bc.a @ np.asarray(y)))
        s_val = float(bc.b_i @ np.asarray(y)) / alpha
        return (["Q"], [float(_q_series(f, s_val, 0).c[0])])
    if name == "G":
        return ([f"G^{i+1}" for i in range(n)], list(spray_ab(m, f, x, y)))
    if name in ("B", "E", "L", "D"):
        B, E = berwald(m, f, x, y)
        if name == "B":
            idx4 = [(i, j, k, l) for i in range(n) for j in range(n)
                    for k in range(n) for l in range(n)]
            return ([f"B^{i+1}_{j+1}{k+1}{l+1}" for i, j, k, l in idx4],
                    [B[i, j, k, l] for i, j, k, l in idx4])
        if name == "E":
            return ([f"E_{i+1}{j+1}" for i, j in idx2], [E[i, j] for i, j in idx2])
        if name == "L":
            L = landsberg(fundamental(m, f, x, y), B)
            idx3 = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
            return ([f"L_{i+1}{j+1}{k+1}" for i, j, k in idx3],
                    [L[i, j, k] for i, j, k in idx3])
        D = douglas(m, f, x, y)
        idx4 = [(i, j, k, l) for i in range(n) for j in range(n)
                for k in range(n) for l in range(n)]
        return ([f"D^{i+1}_{j+1}{k+1}{l+1}" for i, j, k, l in idx4],
                [D[i, j, k, l] for i, j, k, l in idx4])
    if name in ("R", "K"):
        R, K = riemann_flag(m, f, x, y)
        if name == "R":
            return ([f"R^{i+1}_{j+1}" for i, j in idx2],
                    [R[i, j] for i, j in idx2])
        return (["K"], [K if K is not None else ""])
    if name == "S":
        return (["S_formula", "S_def"],
                [s_curvature_formula(m, f, x, y), s_curvature_def(m, f, x, y)])
    if name == "H":
        H = h_curvature(m, f, x, y)
        return ([f"H_{i+1}{j+1}" for i, j in idx2], [H[i, j] for i, j in idx2])
    raise UnknownQuantity(f"unknown quantity {name!r}; choose from {QUANTITIES}")


def cmd_table(cfg, quantity):
    """CSV table of one quantity over the sample grid (and directions)."""
    if quantity not in QUANTITIES:
        raise UnknownQuantity(
            f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    m, f = cfg.metric, cfg.phi
    grid = _sample_grid(cfg)
    directional = quantity in _DIRECTIONAL
    dirs = (default_directions(m.n, cfg.n_directions, seed=cfg.seed)
            if directional else [None])
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    header_written = False
    for x in grid:
        bc = beta_at(m, x)
        for y in dirs:
            cols, vals = _header_and_row(quantity, m, bc, x, y, f)
            if not header_written:
                pre = [f"x{i+1}" for i in range(m.n)]
                if directional:
                    pre += [f"y{i+1}" for i in range(m.n)]
                writer.writerow(pre + cols)
                header_written = True
            pre = [f"{v:.12g}" for v in x]
            if directional:
                pre += [f"{v:.12g}" for v in y]
            writer.writerow(pre + [v if isinstance(v, str) else f"{v:.12g}"
                                   for v in vals])
    return buf.getvalue()


def cmd_classify(cfg):
    report = classify_metric(cfg.metric, cfg.phi, per_axis=3,
                             dirs=default_directions(cfg.metric.n,
                                                     cfg.n_directions,
                                                     seed=cfg.seed))
    return report.to_json()


def cmd_check(seed=42, stream=sys.stdout):
    """Run the verification suite; returns the number of failed criteria."""
    results = acceptance.run_all(seed=seed)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        stream.write(f"[{status}] {r.number:2d}: {r.title}\n")
        for c in r.checks:
            cmp = "<" if c.mode == "lt" else ">"
            mark = "ok " if c.passed else "BAD"
            stream.write(f"    {mark} {c.label}: {c.residual:.3e} {cmp} "
                         f"{c.threshold:.1e}\n")
        failed += 0 if r.passed else 1
    stream.write(f"{len(results) - failed}/{len(results)} criteria passed\n")
    return failed


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def build_parser():
    p = argparse.ArgumentParser(
        prog="finsler",
        description="Curvature reports and classification for "
                    "(alpha, beta)-Finsler metrics.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--metric", choices=catalog_names(),
                        help="catalog metric name")
        sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="metric parameter (JSON value), repeatable")
        sp.add_argument("--config", help="JSON config file (schema 1)")
        sp.add_argument("--per-axis", dest="per_axis", type=int,
                        help="grid points per axis (default 5)")
        sp.add_argument("--directions", type=int,
                        help="direction count (default 16)")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", help="output file (default stdout)")

    common(sub.add_parser("report", help="JSON curvature report"))
    tp = sub.add_parser("table", help="CSV table of one quantity")
    common(tp)
    tp.add_argument("--quantity", required=True,
                    help=f"one of {', '.join(QUANTITIES)}")
    common(sub.add_parser("classify", help="predicate report as JSON"))
    cp = sub.add_parser("check", help="run the verification suite")
    cp.add_argument("--seed", type=int, default=42)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return 1 if cmd_check(seed=args.seed) else 0
        cfg = _config_from_args(args)
        if args.command == "report":
            _emit(cmd_report(cfg), args.out or cfg.out)
        elif args.command == "table":
            _emit(cmd_table(cfg, args.quantity), args.out or cfg.out)
        elif args.command == "classify":
            _emit(cmd_classify(cfg), args.out or cfg.out)
        return 0
    except (ConfigError, UnknownQuantity) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FinslerError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
