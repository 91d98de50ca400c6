"""Spray coefficients by two routes and the full curvature bundle.

The (alpha, beta) route assembles the spray from the one-form calculus and the
phi scalar series, in exact fiber-jet arithmetic, so every y-derivative up to
the Douglas order is exact.  The generic route differentiates F^2 directly
(fiber jets in y, extrapolated differences in x) and serves as an independent
oracle.  Base-point derivatives of spray-level fields always go through
``base_derivative``.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateFlag, DimensionError, NonPositiveDensity
from .finsler_metric import FundamentalData, fsq_jet, fundamental, sigma_bh
from .geometry_core import MetricSpec, beta_at, beta_contractions
from .jets import JetScalar, base_derivative, jet_variable
from .phi_families import PhiFamily, spray_scalar_series
from .quadrature import adaptive_simpson


def spray_alpha(m: MetricSpec, x, y):
    """Geodesic coefficients of alpha alone: (1/2) gamma^i_jk y^j y^k."""
    y = np.asarray(y, dtype=float)
    bc = beta_at(m, x)
    return 0.5 * np.einsum("ijk,j,k->i", bc.gamma, y, y)


def _spray_jets(bc, f: PhiFamily, y, order):
    """G^i as fiber jets of the requested order, from the one-form calculus."""
    n = bc.n
    y = np.asarray(y, dtype=float)
    yj = [jet_variable(i, y[i], n, order) for i in range(n)]
    A = JetScalar.constant(0.0, n, order)
    for i in range(n):
        for j in range(n):
            A = A + bc.a[i, j] * yj[i] * yj[j]
    alpha = A ** 0.5
    beta = JetScalar.constant(0.0, n, order)
    for i in range(n):
        beta = beta + bc.b_i[i] * yj[i]
    s = beta / alpha
    f.require_admissible(s.value)
    q_t, theta_t, psi_t = spray_scalar_series(f, bc.b, s.value, order)
    Q = s.compose_series(q_t.c)
    Theta = s.compose_series(theta_t.c)
    Psi = s.compose_series(psi_t.c)

    r00 = JetScalar.constant(0.0, n, order)
    s0 = JetScalar.constant(0.0, n, order)
    sup0 = [JetScalar.constant(0.0, n, order) for _ in range(n)]
    for i in range(n):
        s0 = s0 + bc.s_i[i] * yj[i]
        for j in range(n):
            r00 = r00 + bc.r[i, j] * yj[i] * yj[j]
            sup0[i] = sup0[i] + bc.s_up[i, j] * yj[j]

    core = (r00 - 2.0 * Q * alpha * s0) / alpha
    out = []
    for i in range(n):
        g_alpha = JetScalar.constant(0.0, n, order)
        for j in range(n):
            for k in range(n):
                g_alpha = g_alpha + 0.5 * bc.gamma[i, j, k] * yj[j] * yj[k]
        out.append(g_alpha + alpha * Q * sup0[i]
                   + core * (Theta * yj[i] + alpha * Psi * bc.b_up[i]))
    return out


def spray_ab(m: MetricSpec, f: PhiFamily, x, y, order=0):
    """Spray coefficients G^i by the (alpha, beta) formula.

    With ``order`` 0 returns a plain array; otherwise a list of jets carrying
    exact y-derivatives up to ``order``.
    """
    bc = beta_at(m, x)
    jets = _spray_jets(bc, f, y, order)
    if order == 0:
        return np.array([j.value for j in jets])
    return jets


def spray_generic(m: MetricSpec, f: PhiFamily, x, y):
    """Spray coefficients from F^2 directly; independent of the r/s calculus."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = m.n
    fd = fundamental(m, f, x, y)

    def dfsq_dy(xp, l):
        return fsq_jet(m, f, xp, y, 1).partial(tuple(np.eye(n, dtype=int)[l]))

    def fsq(xp):
        return fsq_jet(m, f, xp, y, 0).value

    bracket = np.zeros(n)
    for l in range(n):
        mixed = sum(
            y[k] * base_derivative(lambda xp, l=l: dfsq_dy(xp, l), x, k, 1)
            for k in range(n))
        bracket[l] = mixed - base_derivative(fsq, x, l, 1)
    return 0.25 * (fd.g_inv @ bracket)


def berwald(m: MetricSpec, f: PhiFamily, x, y):
    """Berwald curvature B^i_jkl and its mean E_ij, from order-3 spray jets."""
    n = m.n
    jets = spray_ab(m, f, x, y, order=3)
    e = np.eye(n, dtype=int)
    B = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                for l in range(k, n):
                    v = jets[i].partial(tuple(e[j] + e[k] + e[l]))
                    for p in {(j, k, l), (j, l, k), (k, j, l),
                              (k, l, j), (l, j, k), (l, k, j)}:
                        B[(i, *p)] = v
    E = 0.5 * np.einsum("mmij->ij", B)
    return B, E


def berwald_full(m: MetricSpec, f: PhiFamily, x, y):
    """B, E and the vertical derivative E_{jk,l}, from order-4 spray jets."""
    n = m.n
    jets = spray_ab(m, f, x, y, order=4)
    e = np.eye(n, dtype=int)
    B = np.zeros((n, n, n, n))
    E_vert = np.zeros((n, n, n))
    for j in range(n):
        for k in range(n):
            for l in range(n):
                for i in range(n):
                    B[i, j, k, l] = jets[i].partial(tuple(e[j] + e[k] + e[l]))
                E_vert[j, k, l] = 0.5 * sum(
                    jets[mm].partial(tuple(e[mm] + e[j] + e[k] + e[l]))
                    for mm in range(n))
    E = 0.5 * np.einsum("mmij->ij", B)
    return B, E, E_vert


def landsberg(fd: FundamentalData, B):
    """Landsberg curvature L_jkl = -(1/2) y_i B^i_jkl."""
    return -0.5 * np.einsum("i,ijkl->jkl", fd.y_low, B)


def douglas(m: MetricSpec, f: PhiFamily, x, y):
    """Douglas curvature: third fiber derivatives of the projective spray."""
    n = m.n
    jets = spray_ab(m, f, x, y, order=4)
    trace = jets[0].derivative(0)
    for i in range(1, n):
        trace = trace + jets[i].derivative(i)
    yj3 = [jet_variable(i, float(np.asarray(y, dtype=float)[i]), n, 3)
           for i in range(n)]
    e = np.eye(n, dtype=int)
    D = np.zeros((n, n, n, n))
    for i in range(n):
        proj = jets[i].truncate(3) - (1.0 / (n + 1)) * trace * yj3[i]
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    D[i, j, k, l] = proj.partial(tuple(e[j] + e[k] + e[l]))
    return D


def douglas_2d_identity(m: MetricSpec, f: PhiFamily, x, y):
    """Residual of the surface decomposition of D through B, E and E_{jk,l}."""
    n = m.n
    if n != 2:
        raise DimensionError("surface identity requires n = 2")
    y = np.asarray(y, dtype=float)
    D = douglas(m, f, x, y)
    B, E, E_vert = berwald_full(m, f, x, y)
    delta = np.eye(n)
    rhs = B - (2.0 / 3.0) * (
        np.einsum("jk,il->ijkl", E, delta)
        + np.einsum("kl,ij->ijkl", E, delta)
        + np.einsum("lj,ik->ijkl", E, delta)
        + np.einsum("jkl,i->ijkl", E_vert, y))
    return D - rhs


def berwald_2d_identity(fd: FundamentalData, B, E, L):
    """Residual of the surface decomposition of B through L, E and the angular metric."""
    n = B.shape[0]
    if n != 2:
        raise DimensionError("surface identity requires n = 2")
    y = fd.ell * fd.F
    h_mixed = fd.g_inv @ fd.h  # h^i_l
    rhs = (-2.0 / fd.F**2) * np.einsum("jkl,i->ijkl", L, y) + (2.0 / 3.0) * (
        np.einsum("jk,il->ijkl", E, h_mixed)
        + np.einsum("kl,ij->ijkl", E, h_mixed)
        + np.einsum("jl,ik->ijkl", E, h_mixed))
    return B - rhs


def _spray_partials(m: MetricSpec, f: PhiFamily, x, y):
    """G^i, N^i_j, second fiber derivatives and x-derivatives used by Riemann."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = m.n
    jets = spray_ab(m, f, x, y, order=2)
    e = np.eye(n, dtype=int)
    G = np.array([j.value for j in jets])
    N = np.array([[jets[i].partial(tuple(e[j])) for j in range(n)]
                  for i in range(n)])
    Gyy = np.array([[[jets[i].partial(tuple(e[j] + e[k])) for k in range(n)]
                     for j in range(n)] for i in range(n)])
    Gx = np.array([[base_derivative(
        lambda xp, i=i: spray_ab(m, f, xp, y)[i], x, k, 1)
        for k in range(n)] for i in range(n)])

    def n_field(xp, i, k):
        js = spray_ab(m, f, xp, y, order=1)
        return js[i].partial(tuple(e[k]))

    Gxy = np.array([[[base_derivative(
        lambda xp, i=i, k=k: n_field(xp, i, k), x, j, 1)
        for k in range(n)] for j in range(n)] for i in range(n)])
    return G, N, Gyy, Gx, Gxy


def riemann_flag(m: MetricSpec, f: PhiFamily, x, y, u=None):
    """Riemann curvature R^i_k and (given or default transverse u) flag curvature."""
    y = np.asarray(y, dtype=float)
    n = m.n
    G, N, Gyy, Gx, Gxy = _spray_partials(m, f, x, y)
    R = (2.0 * Gx
         - np.einsum("j,ijk->ik", y, Gxy)
         + 2.0 * np.einsum("j,ijk->ik", G, Gyy)
         - N @ N)
    if u is None:
        if n != 2:
            return R, None
        u = np.array([-y[1], y[0]])
    u = np.asarray(u, dtype=float)
    fd = fundamental(m, f, x, y)
    g = fd.g
    denom = (y @ g @ y) * (u @ g @ u) - (y @ g @ u) ** 2
    if abs(denom) < 1e-12:
        raise DegenerateFlag("flag denominator is numerically zero")
    K = float(u @ g @ (R @ u)) / denom
    return R, K


def ln_sigma_gradient(m: MetricSpec, f: PhiFamily, x):
    """Gradient of ln sigma_F at ``x``; reusable across directions."""
    x = np.asarray(x, dtype=float)

    def ln_sigma(xp):
        return math.log(sigma_bh(m, f, xp))

    return np.array([base_derivative(ln_sigma, x, i, 1) for i in range(m.n)])


def s_curvature_def(m: MetricSpec, f: PhiFamily, x, y, grad_ln_sigma=None):
    """S-curvature from its definition: spray divergence minus the drift of ln sigma.

    Pass a precomputed ``grad_ln_sigma`` when sweeping directions at one point.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = m.n
    jets = spray_ab(m, f, x, y, order=1)
    e = np.eye(n, dtype=int)
    div = sum(jets[i].partial(tuple(e[i])) for i in range(n))
    if grad_ln_sigma is None:
        grad_ln_sigma = ln_sigma_gradient(m, f, x)
    return div - float(y @ grad_ln_sigma)


def _angular_density(f: PhiFamily, b, n):
    """f(b): sin-weighted average of T(b cos t) over [0, pi]."""

    def T(s):
        c = f.taylor(s, 2)
        phi, phip, phipp = c[0], c[1], 2.0 * c[2]
        core = phi - s * phip
        return phi * core ** (n - 2) * (core + (b * b - s * s) * phipp)

    num = adaptive_simpson(lambda t: math.sin(t) ** (n - 2) * T(b * math.cos(t)),
                           0.0, math.pi, tol=1e-12)
    den = adaptive_simpson(lambda t: math.sin(t) ** (n - 2), 0.0, math.pi, tol=1e-12)
    return num / den


def s_curvature_formula(m: MetricSpec, f: PhiFamily, x, y):
    """S-curvature from the (alpha, beta) scalar formula with the f(b) density."""
    from .phi_families import ab_scalars

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    bc = beta_at(m, x)
    con = beta_contractions(bc, y)
    alpha = math.sqrt(float(y @ bc.a @ y))
    s = float(bc.b_i @ y) / alpha
    sc = ab_scalars(f, bc.b, s, m.n)
    fb = _angular_density(f, bc.b, m.n)
    if fb <= 0.0:
        raise NonPositiveDensity(f"f(b) = {fb} <= 0")
    db = 1e-4
    fpb = (_angular_density(f, bc.b + db, m.n)
           - _angular_density(f, bc.b - db, m.n)) / (2.0 * db)
    return ((2.0 * sc.Psi - fpb / (bc.b * fb)) * (con.r_0 + con.s_0)
            - sc.Phi / (2.0 * alpha * sc.Delta**2)
            * (con.r_00 - 2.0 * alpha * sc.Q * con.s_0))


def h_curvature(m: MetricSpec, f: PhiFamily, x, y):
    """H_ij: horizontal derivative of the mean Berwald curvature along the flow."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = m.n

    def e_field(xp, yp):
        return berwald(m, f, xp, yp)[1]

    E = e_field(x, y)
    jets = spray_ab(m, f, x, y, order=1)
    e = np.eye(n, dtype=int)
    G = np.array([j.value for j in jets])
    N = np.array([[jets[i].partial(tuple(e[j])) for j in range(n)]
                  for i in range(n)])
    Ex = np.zeros((n, n, n))  # d E_ij / d x^m
    for mm in range(n):
        def comp(xp, mm=mm):
            return e_field(xp, y)
        # vector-valued Richardson step done componentwise
        for i in range(n):
            for j in range(i, n):
                d = base_derivative(lambda xp: comp(xp)[i, j], x, mm, 1)
                Ex[i, j, mm] = d
                Ex[j, i, mm] = d
    hy = 1e-3 * max(1.0, float(np.linalg.norm(y)))
    Ey = np.zeros((n, n, n))  # d E_ij / d y^k
    for k in range(n):
        yp, ym = y.copy(), y.copy()
        yp[k] += hy
        ym[k] -= hy
        yp2, ym2 = y.copy(), y.copy()
        yp2[k] += 2 * hy
        ym2[k] -= 2 * hy
        d1 = (e_field(x, yp) - e_field(x, ym)) / (2 * hy)
        d2 = (e_field(x, yp2) - e_field(x, ym2)) / (4 * hy)
        Ey[:, :, k] = (4.0 * d1 - d2) / 3.0
    H = (np.einsum("m,ijm->ij", y, Ex)
         - 2.0 * np.einsum("k,ijk->ij", G, Ey)
         - np.einsum("kj,ki->ij", E, N)
         - np.einsum("ik,kj->ij", E, N))
    return H


@dataclass
class SprayData:
    G: np.ndarray
    G_alpha: np.ndarray
    N: np.ndarray
    G_jk: np.ndarray  # connection coefficients d^2 G^i / dy^j dy^k


@dataclass
class CurvatureBundle:
    """All curvature tensors evaluated at one (x, y)."""

    B: np.ndarray
    E: np.ndarray
    L: np.ndarray
    D: np.ndarray
    R: np.ndarray
    K: Optional[float]
    S_def: Optional[float]
    S_formula: float
    H: Optional[np.ndarray]


def spray_data(m: MetricSpec, f: PhiFamily, x, y) -> SprayData:
    n = m.n
    jets = spray_ab(m, f, x, y, order=2)
    e = np.eye(n, dtype=int)
    G = np.array([j.value for j in jets])
    N = np.array([[jets[i].partial(tuple(e[j])) for j in range(n)]
                  for i in range(n)])
    Gyy = np.array([[[jets[i].partial(tuple(e[j] + e[k])) for k in range(n)]
                     for j in range(n)] for i in range(n)])
    return SprayData(G=G, G_alpha=spray_alpha(m, x, y), N=N, G_jk=Gyy)


def curvature_bundle(m: MetricSpec, f: PhiFamily, x, y,
                     with_s_def=True, with_h=False) -> CurvatureBundle:
    """Convenience: every curvature tensor at one (x, y)."""
    fd = fundamental(m, f, x, y)
    B, E = berwald(m, f, x, y)
    L = landsberg(fd, B)
    D = douglas(m, f, x, y)
    R, K = riemann_flag(m, f, x, y)
    s_form = s_curvature_formula(m, f, x, y)
    s_def = s_curvature_def(m, f, x, y) if with_s_def else None
    H = h_curvature(m, f, x, y) if with_h else None
    return CurvatureBundle(B=B, E=E, L=L, D=D, R=R, K=K,
                           S_def=s_def, S_formula=s_form, H=H)
