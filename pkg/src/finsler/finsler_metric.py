"""Fiber-level Finsler quantities for F = alpha * phi(beta/alpha).

Fundamental tensor, Cartan torsion and friends come from exact fiber jets of
F^2; the Busemann-Hausdorff density comes from a polar quadrature of the unit
ball.  Fiber derivatives are never finite-differenced: g and C feed the
noise-critical Landsberg and flag computations.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DomainError, SingularDirectionInQuadrature, SingularG,
                     ZeroVector)
from .geometry_core import MetricSpec, _inverse_spd
from .jets import JetScalar, jet_variable
from .phi_families import PhiFamily
from .quadrature import simpson_weights

_UNIT_BALL_VOLUME = {2: math.pi, 3: 4.0 * math.pi / 3.0}


def finsler_eval(m: MetricSpec, f: PhiFamily, x, y):
    """F(x, y) = alpha * phi(beta/alpha)."""
    y = np.asarray(y, dtype=float)
    a = m.a_at(x)
    alpha2 = float(y @ a @ y)
    if alpha2 <= 0.0:
        raise ZeroVector("alpha(x, y) must be positive")
    alpha = math.sqrt(alpha2)
    s = float(m.b_at(x) @ y) / alpha
    f.require_admissible(s)
    return alpha * f.value(s)


def finsler_eval_many(m: MetricSpec, f: PhiFamily, x, Y):
    """Vectorized F over rows of ``Y``; returns (F values, s values)."""
    Y = np.asarray(Y, dtype=float)
    a = m.a_at(x)
    b = m.b_at(x)
    alpha = np.sqrt(np.einsum("ki,ij,kj->k", Y, a, Y))
    s = (Y @ b) / alpha
    return alpha * f.value_many(s), s


def fsq_jet(m: MetricSpec, f: PhiFamily, x, y, order):
    """Jet of F^2 in the fiber variables, exact to ``order``."""
    y = np.asarray(y, dtype=float)
    n = m.n
    a = m.a_at(x)
    b = m.b_at(x)
    yj = [jet_variable(i, y[i], n, order) for i in range(n)]
    A = JetScalar.constant(0.0, n, order)
    for i in range(n):
        for j in range(n):
            A = A + a[i, j] * yj[i] * yj[j]
    if A.value <= 0.0:
        raise ZeroVector("alpha(x, y) must be positive")
    alpha = A ** 0.5
    beta = JetScalar.constant(0.0, n, order)
    for i in range(n):
        beta = beta + b[i] * yj[i]
    s = beta / alpha
    f.require_admissible(s.value)
    phi = s.compose_series(f.taylor(s.value, order))
    return A * phi * phi


@dataclass
class FundamentalData:
    """F, fundamental tensor, Cartan torsion and derived fiber tensors at (x, y)."""

    F: float
    g: np.ndarray
    g_inv: np.ndarray
    C: np.ndarray  # C_ijk
    I: np.ndarray  # mean Cartan torsion I_i
    y_low: np.ndarray  # y_i = g_ij y^j
    ell: np.ndarray  # y^i / F
    h: np.ndarray  # angular metric h_ij


def fundamental(m: MetricSpec, f: PhiFamily, x, y) -> FundamentalData:
    """All fundamental-tensor data from an order-3 fiber jet of F^2."""
    y = np.asarray(y, dtype=float)
    n = m.n
    jet = fsq_jet(m, f, x, y, 3)
    F = math.sqrt(jet.value)
    g = np.zeros((n, n))
    C = np.zeros((n, n, n))
    e = np.eye(n, dtype=int)
    for i in range(n):
        for j in range(n):
            g[i, j] = 0.5 * jet.partial(tuple(e[i] + e[j]))
            for k in range(n):
                C[i, j, k] = 0.25 * jet.partial(tuple(e[i] + e[j] + e[k]))
    try:
        g_inv = _inverse_spd(g, what="g_ij")
    except Exception as exc:
        raise SingularG(str(exc)) from exc
    I = np.einsum("jk,ijk->i", g_inv, C)
    y_low = g @ y
    h = g - np.outer(y_low, y_low) / (F * F)
    return FundamentalData(F=F, g=g, g_inv=g_inv, C=C, I=I, y_low=y_low,
                           ell=y / F, h=h)


def _radii(m, f, x, dirs, step_shift):
    """1/F on the given unit directions, shifting singular nodes once."""
    F, s = finsler_eval_many(m, f, x, dirs)
    half = f.b0 * (1.0 - f.delta)
    bad = (~np.isfinite(F)) | (F <= 0.0) | (np.abs(s) > half)
    shifted = bool(np.any(bad))
    if shifted:
        dirs2 = dirs.copy()
        dirs2[bad] = step_shift(dirs[bad])
        F2, s2 = finsler_eval_many(m, f, x, dirs2)
        still = (~np.isfinite(F2)) | (F2 <= 0.0) | (np.abs(s2) > half)
        if np.any(still):
            raise SingularDirectionInQuadrature(
                f"{int(np.sum(still))} quadrature nodes persistently singular")
        F = np.where(bad, F2, F)
    return 1.0 / F, shifted


def sigma_bh(m: MetricSpec, f: PhiFamily, x, with_flag=False):
    """Busemann-Hausdorff volume density sigma_F(x).

    Unit-ball volume by polar quadrature: composite Simpson with 2048 intervals
    on the circle (n=2) or a 128 x 256 spherical grid (n=3).  Singular nodes of
    almost-regular metrics are shifted by a half step; ``with_flag`` also
    returns whether any shift occurred.
    """
    n = m.n
    if n == 2:
        n_int = 2048
        theta = np.linspace(0.0, 2.0 * math.pi, n_int + 1)
        h = theta[1] - theta[0]
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])

        def shift(sub):
            ang = np.arctan2(sub[:, 1], sub[:, 0]) + 0.5 * h
            return np.column_stack([np.cos(ang), np.sin(ang)])

        r, shifted = _radii(m, f, x, dirs, shift)
        area = 0.5 * h * float(np.dot(simpson_weights(n_int), r * r))
        sigma = _UNIT_BALL_VOLUME[2] / area
    elif n == 3:
        nt, np_ = 128, 256
        theta = np.linspace(0.0, math.pi, nt + 1)
        phi = np.linspace(0.0, 2.0 * math.pi, np_ + 1)
        ht, hp = theta[1] - theta[0], phi[1] - phi[0]
        T, P = np.meshgrid(theta, phi, indexing="ij")
        dirs = np.column_stack([
            (np.sin(T) * np.cos(P)).ravel(),
            (np.sin(T) * np.sin(P)).ravel(),
            np.cos(T).ravel(),
        ])

        def shift(sub):
            # nudge azimuthally by half a step
            c, s_ = math.cos(0.5 * hp), math.sin(0.5 * hp)
            rot = np.array([[c, -s_, 0.0], [s_, c, 0.0], [0.0, 0.0, 1.0]])
            return sub @ rot.T

        r, shifted = _radii(m, f, x, dirs, shift)
        integrand = (r.reshape(nt + 1, np_ + 1) ** 3) * np.sin(T) / 3.0
        wt = simpson_weights(nt) * ht
        wp = simpson_weights(np_) * hp
        vol = float(wt @ integrand @ wp)
        sigma = _UNIT_BALL_VOLUME[3] / vol
    else:
        raise DomainError("sigma_bh supports n = 2 or 3 only")
    if with_flag:
        return sigma, shifted
    return sigma
