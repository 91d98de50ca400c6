"""Riemannian side of the (alpha, beta) data.

Metric and one-form evaluation, Christoffel symbols, the covariant derivative
of the one-form, and the symmetric/antisymmetric split with all of its index
raisings and directional contractions.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import (DimensionMismatch, EvaluationError, SingularMetric,
                     ZeroNorm)
from .jets import base_derivative


@dataclass(frozen=True)
class ChartDomain:
    """Axis-aligned sampling box with an optional membership predicate."""

    lo: tuple
    hi: tuple
    predicate: Optional[Callable] = None

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < np.asarray(self.lo)) or np.any(x > np.asarray(self.hi)):
            return False
        return self.predicate(x) if self.predicate is not None else True

    def grid(self, counts, margin=0.0):
        """Cartesian interior grid, box shrunk by ``margin`` on every side."""
        lo = np.asarray(self.lo, dtype=float) + margin
        hi = np.asarray(self.hi, dtype=float) - margin
        axes = [np.linspace(lo[i], hi[i], counts[i]) for i in range(len(lo))]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
        return [p for p in pts if self.contains(p)]


@dataclass(eq=False)
class MetricSpec:
    """Riemannian metric a_ij(x) and one-form b_i(x) on an n-dimensional chart."""

    n: int
    a: Callable  # x -> (n, n) symmetric positive-definite matrix
    b_form: Callable  # x -> (n,) covector
    chart_domain: ChartDomain
    regularity_margin: float = 0.05
    name: str = "custom"

    def a_at(self, x):
        m = np.asarray(self.a(np.asarray(x, dtype=float)), dtype=float)
        if m.shape != (self.n, self.n):
            raise DimensionMismatch(f"a(x) has shape {m.shape}, expected {(self.n, self.n)}")
        return m

    def b_at(self, x):
        v = np.asarray(self.b_form(np.asarray(x, dtype=float)), dtype=float)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"b(x) has shape {v.shape}, expected {(self.n,)}")
        return v


def _inverse_spd(a, what="a_ij"):
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise SingularMetric(f"{what} is not positive definite") from exc
    inv_chol = np.linalg.inv(chol)
    return inv_chol.T @ inv_chol


def christoffels(m: MetricSpec, x):
    """Levi-Civita connection coefficients of alpha at the chart point ``x``."""
    x = np.asarray(x, dtype=float)
    a = m.a_at(x)
    a_inv = _inverse_spd(a)
    n = m.n
    # da[k, i, j] = d a_ij / d x^k  (differenced componentwise)
    da = np.zeros((n, n, n))
    for i in range(n):
        for j in range(i, n):
            def comp(xp, i=i, j=j):
                return m.a_at(xp)[i, j]
            for k in range(n):
                d = base_derivative(comp, x, k, 1)
                da[k, i, j] = d
                da[k, j, i] = d
    gamma = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = 0.0
                for mm in range(n):
                    acc += a_inv[i, mm] * (da[j, mm, k] + da[k, mm, j] - da[mm, j, k])
                gamma[i, j, k] = 0.5 * acc
    return gamma


@dataclass
class BetaCalculus:
    """One-form calculus at a point: covariant derivative and its r/s split."""

    x: np.ndarray
    n: int
    a: np.ndarray
    a_inv: np.ndarray
    gamma: np.ndarray  # gamma[i, j, k]
    b_i: np.ndarray
    b_up: np.ndarray
    b2: float
    b: float
    bij: np.ndarray  # covariant derivative b_{i;j}
    r: np.ndarray  # symmetric part
    s: np.ndarray  # antisymmetric part
    r_i: np.ndarray
    s_i: np.ndarray
    s_up: np.ndarray  # s^i_j


def beta_derivatives(m: MetricSpec, x) -> BetaCalculus:
    """Covariant derivative of the one-form and its full index menagerie."""
    x = np.asarray(x, dtype=float)
    a = m.a_at(x)
    a_inv = _inverse_spd(a)
    gamma = christoffels(m, x)
    b_i = m.b_at(x)
    n = m.n
    db = np.zeros((n, n))  # db[i, j] = d b_i / d x^j
    for i in range(n):
        def comp(xp, i=i):
            return m.b_at(xp)[i]
        for j in range(n):
            db[i, j] = base_derivative(comp, x, j, 1)
    bij = db - np.einsum("k,kij->ij", b_i, gamma)
    r = 0.5 * (bij + bij.T)
    s = 0.5 * (bij - bij.T)
    b_up = a_inv @ b_i
    b2 = float(b_i @ b_up)
    r_i = b_up @ r
    s_i = b_up @ s
    s_up = a_inv @ s
    return BetaCalculus(x=x, n=n, a=a, a_inv=a_inv, gamma=gamma, b_i=b_i,
                        b_up=b_up, b2=b2, b=float(np.sqrt(max(b2, 0.0))),
                        bij=bij, r=r, s=s, r_i=r_i, s_i=s_i, s_up=s_up)


@dataclass
class BetaContractions:
    r_00: float
    r_0: float
    s_0: float
    r_i0: np.ndarray
    s_i0: np.ndarray
    s_up0: np.ndarray  # s^i_0


def beta_contractions(bc: BetaCalculus, y) -> BetaContractions:
    """Directional contractions of the r/s tensors with a tangent vector."""
    y = np.asarray(y, dtype=float)
    if y.shape != (bc.n,):
        raise DimensionMismatch(f"direction has shape {y.shape}, expected {(bc.n,)}")
    return BetaContractions(
        r_00=float(y @ bc.r @ y),
        r_0=float(bc.r_i @ y),
        s_0=float(bc.s_i @ y),
        r_i0=bc.r @ y,
        s_i0=bc.s @ y,
        s_up0=bc.s_up @ y,
    )


def beta_norm_field(m: MetricSpec):
    """Scalar field x -> |beta|_alpha(x)."""

    def field(xp):
        a_inv = _inverse_spd(m.a_at(xp))
        b_i = m.b_at(xp)
        return float(np.sqrt(max(b_i @ a_inv @ b_i, 0.0)))

    return field


def beta_norm_gradient_check(m: MetricSpec, x):
    """Residual of d|beta|/dx^i = (r_i + s_i)/|beta|, componentwise."""
    x = np.asarray(x, dtype=float)
    bc = beta_derivatives(m, x)
    if bc.b <= 1e-12:
        raise ZeroNorm("one-form has zero length at this point")
    fld = beta_norm_field(m)
    grad = np.array([base_derivative(fld, x, i, 1) for i in range(m.n)])
    return grad - (bc.r_i + bc.s_i) / bc.b


_POINT_CACHE_SIZE = 4096


@lru_cache(maxsize=_POINT_CACHE_SIZE)
def _cached_beta(m_id, x_key):
    m, x = _cached_beta.registry[m_id], np.array(x_key)
    return beta_derivatives(m, x)


_cached_beta.registry = {}


def beta_at(m: MetricSpec, x) -> BetaCalculus:
    """Memoized ``beta_derivatives``; heavy callers hit the same points repeatedly."""
    _cached_beta.registry[id(m)] = m
    return _cached_beta(id(m), tuple(np.asarray(x, dtype=float)))
