"""The phi(s) families and the scalar machinery built on them.

Each family exposes its local Taylor expansion ``taylor(s0, order)``; every
downstream quantity (Q, Delta, Theta, Phi, Psi, spray scalars) is assembled
from those coefficients by univariate series arithmetic, so all s-derivatives
are exact.  The almost-regular family integrates its defining logarithmic
derivative with adaptive quadrature and recovers derivatives from the
first-order recurrence phi' = g * phi.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDenominator, DomainError, NonPositivePhi,
                     ParamOutOfRange)
from .exprparse import eval_expr, parse
from .quadrature import adaptive_simpson
from .taylor1d import Taylor1D, sqrt1


class PhiFamily:
    """Base class: a smooth phi(s) with Taylor expansions of any small order."""

    variant = "abstract"
    #: half-width of the admissible s-interval (inf when unrestricted)
    b0 = math.inf
    #: margin excluded near the singular endpoints of almost-regular families
    delta = 0.05

    def taylor(self, s0, order):
        raise NotImplementedError

    def value(self, s):
        return float(self.taylor(s, 0)[0])

    def value_many(self, s):
        s = np.asarray(s, dtype=float)
        return np.array([self.value(v) for v in s.ravel()]).reshape(s.shape)

    def admissible(self, s):
        return abs(s) < self.b0 * (1.0 - self.delta)

    def require_admissible(self, s):
        if not self.admissible(s):
            raise DomainError(
                f"s={s} outside admissible interval |s| < {self.b0}*(1-{self.delta})")

    def check_positivity(self, b, n_samples=41):
        """Sampled positivity of phi and phi - s*phi' on the working interval."""
        half = min(b, self.b0) * (1.0 - self.delta)
        for s in np.linspace(-half, half, n_samples):
            phi, dphi = self.taylor(s, 1)[:2]
            if phi <= 0.0:
                raise NonPositivePhi(f"phi({s}) = {phi} <= 0")
            if phi - s * dphi <= 0.0:
                raise NonPositivePhi(f"(phi - s*phi')({s}) = {phi - s * dphi} <= 0")


class RandersPhi(PhiFamily):
    """phi(s) = 1 + s."""

    variant = "randers"
    b0 = 1.0

    def taylor(self, s0, order):
        c = np.zeros(order + 1)
        c[0] = 1.0 + s0
        if order >= 1:
            c[1] = 1.0
        return c

    def value_many(self, s):
        return 1.0 + np.asarray(s, dtype=float)


class RiemannSqrtPhi(PhiFamily):
    """phi(s) = sqrt(1 + k s^2); the Finsler metric is then Riemannian."""

    variant = "riemann_sqrt"

    def __init__(self, k):
        self.k = float(k)
        self.b0 = math.inf if self.k >= 0 else 1.0 / math.sqrt(-self.k)

    def taylor(self, s0, order):
        t = Taylor1D.variable(s0, order)
        return sqrt1(1.0 + self.k * t * t).c

    def value_many(self, s):
        return np.sqrt(1.0 + self.k * np.asarray(s, dtype=float) ** 2)


class UnicornPhi(PhiFamily):
    """Almost-regular family phi = c * exp(int_0^s g), singular at s = +-b0.

    g(t) = (k t + q sqrt(b0^2 - t^2)) / (1 + k t^2 + q t sqrt(b0^2 - t^2)).
    """

    variant = "unicorn"

    def __init__(self, b0, k, q, c, delta=0.05):
        if not (b0 > 0 and q > 0 and c > 0):
            raise ParamOutOfRange("unicorn family requires b0 > 0, q > 0, c > 0")
        self.b0 = float(b0)
        self.k = float(k)
        self.q = float(q)
        self.c = float(c)
        self.delta = float(delta)
        self._value_cache = {}

    def _g(self, t):
        root = math.sqrt(max(self.b0**2 - t * t, 0.0))
        num = self.k * t + self.q * root
        den = 1.0 + self.k * t * t + self.q * t * root
        return num / den

    def _g_series(self, s0, order):
        t = Taylor1D.variable(s0, order)
        root = sqrt1(self.b0**2 - t * t)
        return (self.k * t + self.q * root) / (1.0 + self.k * t * t + self.q * t * root)

    def value(self, s):
        self.require_admissible(s)
        cached = self._value_cache.get(s)
        if cached is None:
            cached = self.c * math.exp(adaptive_simpson(self._g, 0.0, s, tol=1e-12))
            self._value_cache[s] = cached
        return cached

    def taylor(self, s0, order):
        phi0 = self.value(s0)
        if order == 0:
            return np.array([phi0])
        g = self._g_series(s0, order - 1).c
        c = np.zeros(order + 1)
        c[0] = phi0
        # phi' = g * phi, order by order
        for m in range(order):
            c[m + 1] = float(np.dot(g[: m + 1], c[m::-1])) / (m + 1)
        return c


class CustomExprPhi(PhiFamily):
    """phi given by a user expression in s (with numeric parameters p1..p9)."""

    variant = "custom"

    def __init__(self, text, params=None, b0=math.inf, delta=0.05):
        self.text = text
        self.params = dict(params or {})
        allowed = {"s"} | set(self.params)
        self.ast = parse(text, allowed)
        self.b0 = float(b0)
        self.delta = float(delta)

    def taylor(self, s0, order):
        bindings = dict(self.params)
        bindings["s"] = Taylor1D.variable(s0, order)
        out = eval_expr(self.ast, bindings)
        if isinstance(out, Taylor1D):
            return out.c
        c = np.zeros(order + 1)
        c[0] = float(out)
        return c


def phi_eval(f: PhiFamily, s):
    """(phi, phi', phi'', phi''') at s."""
    f.require_admissible(s)
    c = f.taylor(s, 3)
    return (c[0], c[1], 2.0 * c[2], 6.0 * c[3])


@dataclass
class AlphaBetaScalars:
    Q: float
    Qp: float
    Qpp: float
    Delta: float
    Theta: float
    Phi: float
    Psi: float


def _q_series(f: PhiFamily, s, order):
    """Taylor series of Q = phi'/(phi - s phi') at s, to the given order."""
    c = f.taylor(s, order + 1)
    phi = Taylor1D(c[: order + 1])
    k = np.arange(1, order + 2)
    phip = Taylor1D((c[1:] * k)[: order + 1])
    sv = Taylor1D.variable(s, order)
    den = phi - sv * phip
    if den.value <= 1e-12:
        raise DegenerateDenominator(f"phi - s*phi' = {den.value} at s={s}")
    return phip / den


def ab_scalars(f: PhiFamily, b, s, n) -> AlphaBetaScalars:
    """The seven scalars Q, Q', Q'', Delta, Theta, Phi, Psi at (b, s)."""
    if abs(s) > b + 1e-12:
        raise DomainError(f"|s|={abs(s)} exceeds b={b}")
    qs = _q_series(f, s, 3)
    q, qp, qpp = qs.derivs(2)
    delta = 1.0 + s * q + (b * b - s * s) * qp
    if delta <= 1e-12:
        raise DegenerateDenominator(f"Delta = {delta} at (b={b}, s={s})")
    theta = (q - s * qp) / (2.0 * delta)
    phi_big = -(q - s * qp) * (n * delta + 1.0 + s * q) \
        - (b * b - s * s) * (1.0 + s * q) * qpp
    c = f.taylor(s, 2)
    phi, phip, phipp = c[0], c[1], 2.0 * c[2]
    psi_den = (phi - s * phip) + (b * b - s * s) * phipp
    if abs(psi_den) <= 1e-300:
        raise DegenerateDenominator(f"Psi denominator ~0 at (b={b}, s={s})")
    psi = phipp / (2.0 * psi_den)
    return AlphaBetaScalars(Q=q, Qp=qp, Qpp=qpp, Delta=delta, Theta=theta,
                            Phi=phi_big, Psi=psi)


def ode_residual(f: PhiFamily, b, s):
    """Residual of Q'' - s Q'/(b^2-s^2) + Q/(b^2-s^2) = 0."""
    if abs(s) >= b:
        raise DomainError(f"|s|={abs(s)} must be < b={b}")
    qs = _q_series(f, s, 2)
    q, qp, qpp = qs.derivs(2)
    w = b * b - s * s
    return qpp - s * qp / w + q / w


def spray_scalar_series(f: PhiFamily, b, s0, order):
    """Taylor series (in s at s0) of Q, Theta and Psi, used by the spray assembly."""
    q_big = _q_series(f, s0, order + 1)
    qp = q_big.deriv()  # order
    q = Taylor1D(q_big.c[: order + 1])
    sv = Taylor1D.variable(s0, order)
    delta = 1.0 + sv * q + (b * b - sv * sv) * qp
    if delta.value <= 1e-12:
        raise DegenerateDenominator(f"Delta = {delta.value} at (b={b}, s={s0})")
    theta = (q - sv * qp) / (2.0 * delta)
    c = f.taylor(s0, order + 2)
    k = np.arange(1, len(c))
    dc = c[1:] * k
    ddc = dc[1:] * np.arange(1, len(dc))
    phi = Taylor1D(c[: order + 1])
    phip = Taylor1D(dc[: order + 1])
    phipp = Taylor1D(ddc[: order + 1])
    psi = phipp / ((phi - sv * phip + (b * b - sv * sv) * phipp) * 2.0)
    return q, theta, psi
