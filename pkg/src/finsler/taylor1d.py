"""Univariate truncated Taylor series.

Complements the multivariate jets: the phi families expand in the single ratio
variable s, sometimes beyond the multivariate order cap (a quotient like
Q = phi'/(phi - s phi') eats orders), so they carry their own little algebra.
Coefficients are stored as c_k = f^(k)(s0)/k! around a fixed expansion point.
"""

import numpy as np

from .errors import DomainError
from .series import TINY, pow_coeffs, taylor_coeffs


class Taylor1D:
    """Truncated power series in one offset variable."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @staticmethod
    def variable(value, order):
        c = np.zeros(order + 1)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return Taylor1D(c)

    @staticmethod
    def constant(value, order):
        c = np.zeros(order + 1)
        c[0] = value
        return Taylor1D(c)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def value(self):
        return float(self.c[0])

    def deriv(self):
        """Series of the derivative; order drops by one."""
        if self.order == 0:
            raise DomainError("cannot differentiate an order-0 series")
        k = np.arange(1, self.order + 1)
        return Taylor1D(self.c[1:] * k)

    def derivs(self, upto):
        """Derivative values f, f', ..., f^(upto) at the expansion point."""
        from math import factorial

        return tuple(self.c[k] * factorial(k) if k <= self.order else 0.0
                     for k in range(upto + 1))

    def _coerce(self, other):
        if isinstance(other, Taylor1D):
            if other.order != self.order:
                raise DomainError("series arithmetic requires equal orders")
            return other
        return Taylor1D.constant(float(other), self.order)

    def __add__(self, other):
        return Taylor1D(self.c + self._coerce(other).c)

    __radd__ = __add__

    def __sub__(self, other):
        return Taylor1D(self.c - self._coerce(other).c)

    def __rsub__(self, other):
        return Taylor1D(self._coerce(other).c - self.c)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Taylor1D(self.c * float(other))
        o = self._coerce(other)
        return Taylor1D(np.convolve(self.c, o.c)[: self.order + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            if abs(other) < TINY:
                raise DomainError("division by ~0")
            return Taylor1D(self.c / float(other))
        return self * self._coerce(other).compose("recip")

    def __rtruediv__(self, other):
        return self.compose("recip") * other

    def __neg__(self):
        return Taylor1D(-self.c)

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) or (isinstance(p, float) and p.is_integer()):
            p = int(p)
            if p < 0:
                return self.compose("recip") ** (-p)
            out = Taylor1D.constant(1.0, self.order)
            base = self
            while p:
                if p & 1:
                    out = out * base
                base = base * base
                p >>= 1
            return out
        return self.compose_coeffs(pow_coeffs(self.value, float(p), self.order))

    def compose_coeffs(self, coeffs):
        """Horner composition with outer Taylor coefficients at this value."""
        w = Taylor1D(self.c.copy())
        w.c[0] = 0.0
        top = min(len(coeffs) - 1, self.order)
        out = Taylor1D.constant(float(coeffs[top]), self.order)
        for k in range(top - 1, -1, -1):
            out = out * w + float(coeffs[k])
        return out

    def compose(self, tag):
        return self.compose_coeffs(taylor_coeffs(tag, self.value, self.order))

    def __repr__(self):
        return f"Taylor1D({self.c!r})"


def sqrt1(t):
    if isinstance(t, Taylor1D):
        return t.compose("sqrt")
    if t <= 0.0:
        raise DomainError(f"sqrt of non-positive value {t}")
    return float(np.sqrt(t))


def exp1(t):
    if isinstance(t, Taylor1D):
        return t.compose("exp")
    return float(np.exp(t))
