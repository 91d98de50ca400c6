"""Truncated multivariate Taylor-jet arithmetic in the fiber variables.

A :class:`JetScalar` stores the Taylor coefficients of a scalar in ``n_vars``
direction variables up to total degree ``max_order`` (at most 4).  Arithmetic
and the elementary functions propagate coefficients exactly, so derivatives of
any composed expression up to ``max_order`` are exact up to roundoff.

Base-point (x-)derivatives are a different regime: metric evaluators may hide
quadratures that are cheap to re-evaluate but awkward to jet through, so those
derivatives go through :func:`base_derivative`, a Richardson-extrapolated
central difference.
"""

import math
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import ArityError, DomainError, EvaluationError
from .series import TINY, pow_coeffs, taylor_coeffs

MAX_ORDER = 4


@lru_cache(maxsize=None)
def _tables(n_vars, max_order):
    """Multi-index list, index positions and the truncated product table."""
    idx = [m for m in product(range(max_order + 1), repeat=n_vars)
           if sum(m) <= max_order]
    idx.sort(key=lambda m: (sum(m), m))
    pos = {m: i for i, m in enumerate(idx)}
    ii, jj, kk = [], [], []
    for i, mi in enumerate(idx):
        di = sum(mi)
        for j, mj in enumerate(idx):
            if di + sum(mj) > max_order:
                continue
            ii.append(i)
            jj.append(j)
            kk.append(pos[tuple(a + b for a, b in zip(mi, mj))])
    return idx, pos, (np.array(ii), np.array(jj), np.array(kk))


class JetScalar:
    """Dense truncated Taylor expansion of a scalar in the direction variables."""

    __slots__ = ("coeffs", "n_vars", "max_order")

    def __init__(self, coeffs, n_vars, max_order):
        if not 0 <= max_order <= MAX_ORDER:
            raise ValueError(f"max_order must lie in [0, {MAX_ORDER}]")
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.n_vars = n_vars
        self.max_order = max_order

    # -- construction -------------------------------------------------------

    @staticmethod
    def constant(value, n_vars, max_order):
        idx, _, _ = _tables(n_vars, max_order)
        c = np.zeros(len(idx))
        c[0] = value
        return JetScalar(c, n_vars, max_order)

    # -- basic queries ------------------------------------------------------

    @property
    def value(self):
        return float(self.coeffs[0])

    def coeff(self, multi_index):
        _, pos, _ = _tables(self.n_vars, self.max_order)
        return float(self.coeffs[pos[tuple(multi_index)]])

    def partial(self, multi_index):
        """Partial derivative for the given multi-index (coefficient times factorials)."""
        fac = 1.0
        for m in multi_index:
            fac *= math.factorial(m)
        return self.coeff(multi_index) * fac

    def derivative(self, axis):
        """Jet of the partial derivative along ``axis``; order drops by one."""
        if self.max_order == 0:
            raise DomainError("cannot differentiate an order-0 jet")
        idx_out, pos_out, _ = _tables(self.n_vars, self.max_order - 1)
        _, pos_in, _ = _tables(self.n_vars, self.max_order)
        out = np.zeros(len(idx_out))
        for i, m in enumerate(idx_out):
            shifted = list(m)
            shifted[axis] += 1
            out[i] = self.coeffs[pos_in[tuple(shifted)]] * shifted[axis]
        return JetScalar(out, self.n_vars, self.max_order - 1)

    def truncate(self, order):
        if order > self.max_order:
            raise ValueError("cannot truncate to a higher order")
        idx_out, _, _ = _tables(self.n_vars, order)
        return JetScalar(self.coeffs[: len(idx_out)].copy(), self.n_vars, order)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, JetScalar):
            if other.n_vars != self.n_vars or other.max_order != self.max_order:
                raise DomainError("jet arithmetic requires equal n_vars and max_order")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return JetScalar.constant(float(other), self.n_vars, self.max_order)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return JetScalar(self.coeffs + o.coeffs, self.n_vars, self.max_order)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return JetScalar(self.coeffs - o.coeffs, self.n_vars, self.max_order)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return JetScalar(o.coeffs - self.coeffs, self.n_vars, self.max_order)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return JetScalar(self.coeffs * float(other), self.n_vars, self.max_order)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ii, jj, kk = _tables(self.n_vars, self.max_order)[2]
        out = np.zeros_like(self.coeffs)
        np.add.at(out, kk, self.coeffs[ii] * o.coeffs[jj])
        return JetScalar(out, self.n_vars, self.max_order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            if abs(other) < TINY:
                raise DomainError("division by ~0")
            return JetScalar(self.coeffs / float(other), self.n_vars, self.max_order)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o._compose("recip")

    def __rtruediv__(self, other):
        return self._compose("recip") * other

    def __neg__(self):
        return JetScalar(-self.coeffs, self.n_vars, self.max_order)

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) or (isinstance(p, float) and p.is_integer()):
            p = int(p)
            if p < 0:
                return (self._compose("recip")) ** (-p)
            out = JetScalar.constant(1.0, self.n_vars, self.max_order)
            base = self
            while p:
                if p & 1:
                    out = out * base
                base = base * base
                p >>= 1
            return out
        return self.compose_series(pow_coeffs(self.value, float(p), self.max_order))

    # -- composition --------------------------------------------------------

    def compose_series(self, coeffs):
        """Compose with a univariate Taylor series given at this jet's value.

        ``coeffs[k]`` must be f^(k)(value)/k!.  Exact to ``max_order`` because
        the offset jet has no constant term.
        """
        w = JetScalar(self.coeffs.copy(), self.n_vars, self.max_order)
        w.coeffs[0] = 0.0
        top = min(len(coeffs) - 1, self.max_order)
        out = JetScalar.constant(float(coeffs[top]), self.n_vars, self.max_order)
        for k in range(top - 1, -1, -1):
            out = out * w + float(coeffs[k])
        return out

    def _compose(self, tag):
        return self.compose_series(taylor_coeffs(tag, self.value, self.max_order))

    def __repr__(self):
        return (f"JetScalar(value={self.value!r}, n_vars={self.n_vars}, "
                f"max_order={self.max_order})")


def jet_variable(index, point_value, n_vars, max_order):
    """Jet of the coordinate function y^index seeded at ``point_value``."""
    if not 0 <= index < n_vars:
        raise DomainError(f"variable index {index} out of range for n_vars={n_vars}")
    j = JetScalar.constant(float(point_value), n_vars, max_order)
    if max_order >= 1:
        _, pos, _ = _tables(n_vars, max_order)
        unit = tuple(1 if i == index else 0 for i in range(n_vars))
        j.coeffs[pos[unit]] = 1.0
    return j


_UNARY = {"neg", "sqrt", "exp", "log", "sin", "cos", "atan"}
_BINARY = {"add", "sub", "mul", "div", "pow"}


def jet_apply(fn, args):
    """Apply an elementary-function tag to jets (or to a jet and a scalar)."""
    want = 1 if fn in _UNARY else 2 if fn in _BINARY else None
    if want is None:
        raise ArityError(f"unknown elementary-function tag {fn!r}")
    if len(args) != want:
        raise ArityError(f"{fn} expects {want} argument(s), got {len(args)}")
    if fn == "add":
        return args[0] + args[1]
    if fn == "sub":
        return args[0] - args[1]
    if fn == "mul":
        return args[0] * args[1]
    if fn == "div":
        return args[0] / args[1]
    if fn == "pow":
        p = args[1]
        if isinstance(p, JetScalar):
            if np.any(p.coeffs[1:] != 0.0):
                return jet_exp(jet_log(args[0]) * p)
            p = p.value
        return args[0] ** p
    if fn == "neg":
        return -args[0]
    u = args[0]
    if isinstance(u, JetScalar):
        return u._compose(fn)
    return getattr(math, fn)(u)


# Generic elementary functions usable on floats and jets alike.

def _lift(tag, u):
    if isinstance(u, JetScalar):
        return u._compose(tag)
    if tag in ("sqrt", "log") and u <= 0.0:
        raise DomainError(f"{tag} of non-positive value {u}")
    return getattr(math, tag)(float(u))


def jet_sqrt(u):
    return _lift("sqrt", u)


def jet_exp(u):
    return _lift("exp", u)


def jet_log(u):
    return _lift("log", u)


def jet_sin(u):
    return _lift("sin", u)


def jet_cos(u):
    return _lift("cos", u)


def jet_atan(u):
    return _lift("atan", u)


def jet_abs(u):
    if isinstance(u, JetScalar):
        if abs(u.value) < TINY:
            raise DomainError("abs is not differentiable at 0")
        return u if u.value > 0 else -u
    return abs(u)


def base_derivative(field, x, axis, order, h0=None):
    """Derivative of a scalar field along a chart axis by extrapolated differences.

    One Richardson step over the classic central stencils: fourth-order
    accurate for ``order`` 1, and correspondingly extrapolated for ``order`` 2.
    """
    x = np.asarray(x, dtype=float)
    if h0 is None:
        h0 = 1e-3 * max(1.0, abs(x[axis]))

    def f(offset):
        xp = x.copy()
        xp[axis] += offset
        try:
            return float(field(xp))
        except Exception as exc:  # noqa: BLE001 - surface stencil failures uniformly
            raise EvaluationError(
                f"field evaluation failed at offset {offset:+g} along axis {axis}: {exc}"
            ) from exc

    if order == 1:
        def central(h):
            return (f(h) - f(-h)) / (2.0 * h)
    elif order == 2:
        f0 = f(0.0)

        def central(h):
            return (f(h) - 2.0 * f0 + f(-h)) / (h * h)
    else:
        raise DomainError("base_derivative supports orders 1 and 2 only")

    d1 = central(h0)
    d2 = central(2.0 * h0)
    return (4.0 * d1 - d2) / 3.0
