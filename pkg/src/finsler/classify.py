"""Metric-level predicates and the trichotomy verdict.

Every predicate returns a ``Verdict`` carrying its max residual, the threshold
it was compared against and the number of samples used — never a bare boolean.
The final verdict is decided by a fixed priority ladder so reports are
deterministic.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (AllSamplesSingular, DomainError, EmptyGrid,
                     MissingReports, RankDeficient, WrongPhiVariant)
from .finsler_metric import fundamental
from .geometry_core import MetricSpec, beta_at
from .phi_families import PhiFamily, _q_series
from .spray_curvature import (berwald, douglas, landsberg, ln_sigma_gradient,
                              riemann_flag, s_curvature_def)

#: default thresholds per predicate family
TOL_TENSOR = 1e-6
TOL_S = 1e-5
TOL_DUAL_ROUTE = 1e-4

VERDICTS = ("RiemannianIsotropic", "LocallyMinkowskiLike", "UnicornCase",
            "NotGeneralizedBerwald", "SNonzero", "Inconclusive")


@dataclass(frozen=True)
class Verdict:
    """A boolean conclusion together with the evidence that produced it."""

    value: bool
    residual: float
    threshold: float
    n_samples: int

    def __bool__(self):
        return self.value

    def as_dict(self):
        return {"verdict": self.value, "residual": self.residual,
                "threshold": self.threshold, "n_samples": self.n_samples}


@dataclass(frozen=True)
class UnicornFit:
    k: float
    q: float
    rms: float

    def as_dict(self):
        return {"k": self.k, "q": self.q, "rms": self.rms}


@dataclass
class ClassificationReport:
    """All predicate verdicts, the optional unicorn fit and the final verdict."""

    metric_name: str
    predicates: dict  # name -> Verdict
    verdict: str
    unicorn: Optional[UnicornFit] = None
    grid_meta: dict = field(default_factory=dict)

    def to_json(self, indent=2):
        doc = {
            "metric": self.metric_name,
            "verdict": self.verdict,
            "predicates": {k: v.as_dict() for k, v in self.predicates.items()},
            "grid": self.grid_meta,
        }
        if self.unicorn is not None:
            doc["unicorn_fit"] = self.unicorn.as_dict()
        return json.dumps(doc, indent=indent, sort_keys=True)


def default_grid(m: MetricSpec, per_axis=3):
    """Interior sampling grid of the chart domain."""
    lo = np.asarray(m.chart_domain.lo, dtype=float)
    hi = np.asarray(m.chart_domain.hi, dtype=float)
    margin = float(np.min(hi - lo)) * m.regularity_margin
    grid = m.chart_domain.grid([per_axis] * m.n, margin=margin)
    if not grid:
        raise EmptyGrid("no sample points inside the chart domain")
    return grid


def default_directions(n, count=16, seed=42):
    """Unit directions: an offset fan for n=2, seeded sphere points for n>=3."""
    if n == 2:
        ang = 0.1 + np.arange(count) * (2.0 * math.pi / count)
        return np.column_stack([np.cos(ang), np.sin(ang)])
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(count, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _admissible_dirs(m, f, x, dirs):
    """Directions whose s = beta/alpha stays inside the regular cone."""
    a = m.a_at(x)
    b = m.b_at(x)
    alpha = np.sqrt(np.einsum("ki,ij,kj->k", dirs, a, dirs))
    s = (dirs @ b) / alpha
    keep = np.abs(s) < f.b0 * (1.0 - f.delta)
    return dirs[keep]


def is_generalized_berwald(m: MetricSpec, grid, tol=TOL_TENSOR) -> Verdict:
    """True iff the one-form length is constant across the grid."""
    if not len(grid):
        raise EmptyGrid("is_generalized_berwald needs a nonempty grid")
    lengths = np.array([beta_at(m, x).b for x in grid])
    residual = float(np.max(np.abs(lengths - lengths[0])))
    return Verdict(residual < tol * max(1.0, lengths[0]), residual, tol, len(grid))


def killing_constant_length(m: MetricSpec, grid, tol=TOL_TENSOR) -> Verdict:
    """True iff r_ij = 0 and s_i = 0 everywhere on the grid."""
    if not len(grid):
        raise EmptyGrid("killing_constant_length needs a nonempty grid")
    residual = 0.0
    for x in grid:
        bc = beta_at(m, x)
        residual = max(residual, float(np.max(np.abs(bc.r))),
                       float(np.max(np.abs(bc.s_i))))
    return Verdict(residual < tol, residual, tol, len(grid))


def randers_s0_shortcut(m: MetricSpec, f: PhiFamily, grid,
                        tol=TOL_TENSOR) -> Verdict:
    """Randers-only S = 0 criterion: r_ij + b_i s_j + b_j s_i = 0."""
    if f.variant != "randers":
        raise WrongPhiVariant(
            f"shortcut applies to the Randers family only, got {f.variant!r}")
    if not len(grid):
        raise EmptyGrid("randers_s0_shortcut needs a nonempty grid")
    residual = 0.0
    for x in grid:
        bc = beta_at(m, x)
        t = bc.r + np.outer(bc.b_i, bc.s_i) + np.outer(bc.s_i, bc.b_i)
        residual = max(residual, float(np.max(np.abs(t))))
    return Verdict(residual < tol, residual, tol, len(grid))


def curvature_flags(m: MetricSpec, f: PhiFamily, grid, dirs=None,
                    tol=TOL_TENSOR, tol_s=TOL_S) -> dict:
    """Berwald / Landsberg / Douglas / S-zero / Riemannian verdicts.

    Directions are normalized to F = 1 before evaluation so the max-norms are
    scale-invariant; directions outside the regular cone of almost-regular
    families are dropped.
    """
    if dirs is None:
        dirs = default_directions(m.n)
    res = {"berwald": 0.0, "landsberg": 0.0, "douglas": 0.0,
           "s_zero": 0.0, "riemannian": 0.0}
    n_used = 0
    for x in grid:
        usable = _admissible_dirs(m, f, x, np.asarray(dirs, dtype=float))
        if not len(usable):
            continue
        grad = ln_sigma_gradient(m, f, x)
        for y in usable:
            y = y / fundamental(m, f, x, y).F
            fd = fundamental(m, f, x, y)
            B, E = berwald(m, f, x, y)
            D = douglas(m, f, x, y)
            L = landsberg(fd, B)
            S = s_curvature_def(m, f, x, y, grad_ln_sigma=grad)
            res["berwald"] = max(res["berwald"], float(np.max(np.abs(B))))
            res["landsberg"] = max(res["landsberg"], float(np.max(np.abs(L))))
            res["douglas"] = max(res["douglas"], float(np.max(np.abs(D))))
            res["s_zero"] = max(res["s_zero"], abs(S))
            res["riemannian"] = max(res["riemannian"], float(np.max(np.abs(fd.C))))
            n_used += 1
    if n_used == 0:
        raise AllSamplesSingular("every grid x direction sample was inadmissible")
    out = {}
    for name, r in res.items():
        t = tol_s if name == "s_zero" else tol
        out[name] = Verdict(r < t, r, t, n_used)
    return out


def unicorn_fit(f_or_samples, b, delta=0.05, n_samples=20) -> UnicornFit:
    """Least-squares fit of Q(s) against the basis {s, sqrt(b^2 - s^2)}.

    Accepts either a PhiFamily (Q sampled from its Taylor data) or a pair of
    arrays (s values, Q values).
    """
    if isinstance(f_or_samples, PhiFamily):
        half = 0.999 * min(b, f_or_samples.b0) * (1.0 - max(delta, f_or_samples.delta))
        s = np.linspace(-half, half, n_samples)
        q = np.array([float(_q_series(f_or_samples, v, 0).c[0]) for v in s])
    else:
        s, q = (np.asarray(v, dtype=float) for v in f_or_samples)
    if len(s) < 2:
        raise RankDeficient("need at least two distinct s samples")
    design = np.column_stack([s, np.sqrt(np.maximum(b * b - s * s, 0.0))])
    if np.linalg.matrix_rank(design, tol=1e-10) < 2:
        raise RankDeficient("unicorn design matrix is rank deficient")
    coef, _, _, _ = np.linalg.lstsq(design, q, rcond=None)
    rms = float(np.sqrt(np.mean((design @ coef - q) ** 2)))
    return UnicornFit(k=float(coef[0]), q=float(coef[1]), rms=rms)


def theorem11_verdict(reports: dict, unicorn: Optional[UnicornFit] = None,
                      flag_zero: Optional[Verdict] = None,
                      unicorn_tol=1e-3) -> str:
    """Trichotomy decision from the predicate verdicts, in fixed priority order."""
    for key in ("gb", "s_zero"):
        if key not in reports:
            raise MissingReports(f"verdict requires the {key!r} predicate")
    gb = reports["gb"]
    s_zero = reports["s_zero"]
    if not gb:
        return "NotGeneralizedBerwald"
    if not s_zero:
        return "SNonzero"
    if reports.get("riemannian"):
        return "RiemannianIsotropic"
    if reports.get("berwald") and flag_zero is not None and flag_zero:
        return "LocallyMinkowskiLike"
    if (reports.get("killing_cl") and unicorn is not None
            and unicorn.rms < unicorn_tol):
        return "UnicornCase"
    return "Inconclusive"


def classify_metric(m: MetricSpec, f: PhiFamily, per_axis=3, dirs=None,
                    tol=TOL_TENSOR, tol_s=TOL_S) -> ClassificationReport:
    """Run every predicate on a default grid and assemble the report."""
    grid = default_grid(m, per_axis)
    if dirs is None:
        dirs = default_directions(m.n)
    preds = {
        "gb": is_generalized_berwald(m, grid, tol),
        "killing_cl": killing_constant_length(m, grid, tol),
    }
    preds.update(curvature_flags(m, f, grid, dirs, tol, tol_s))
    unicorn = None
    flag_zero = None
    if preds["gb"] and preds["s_zero"]:
        if preds["berwald"]:
            kmax, n_flag = 0.0, 0
            for x in grid[: min(3, len(grid))]:
                for y in _admissible_dirs(m, f, x, np.asarray(dirs))[:4]:
                    try:
                        _, K = riemann_flag(m, f, x, y)
                    except DomainError:
                        continue
                    if K is not None:
                        kmax = max(kmax, abs(K))
                        n_flag += 1
            if n_flag:
                flag_zero = Verdict(kmax < tol_s * 10, kmax, tol_s * 10, n_flag)
        if preds["killing_cl"]:
            b = beta_at(m, grid[0]).b
            if b > 1e-8:
                try:
                    unicorn = unicorn_fit(f, b)
                except RankDeficient:
                    unicorn = None
    verdict = theorem11_verdict(preds, unicorn=unicorn, flag_zero=flag_zero)
    meta = {"per_axis": per_axis, "n_points": len(grid),
            "n_directions": int(np.asarray(dirs).shape[0])}
    return ClassificationReport(metric_name=m.name, predicates=preds,
                                verdict=verdict, unicorn=unicorn,
                                grid_meta=meta)
