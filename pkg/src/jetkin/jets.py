"""Fourth-order truncated jets over real, complex, and double-double scalars.

A `Jet4` holds five coefficients a[0..4] where a[k] is the raw k-th
derivative carried through arithmetic (no 1/k! scaling).  Products follow
the binomial convolution c[k] = sum_i C(k,i) a[i] b[k-i]; anything that
would land beyond index 4 is discarded.  `variable(x)` seeds x with a unit
first-derivative slot, so for smooth f the coefficients of f(variable(x))
are exactly f(x), f'(x), f''(x), f'''(x), f''''(x).

The module-level elementary functions (sin, exp, ...) accept jets as well
as plain scalars, so the same user code runs on floats, complex numbers,
double-doubles, and jets of any of those.  The set is extensible: a new
outer function needs only its value and first four derivatives at the
jet's real part, handed to `lift_univariate`.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import ddouble
from .ddouble import DDReal
from .errors import DomainError, IndexOutOfRange, PureDualNotInvertible

_SCALAR_TYPES = (int, float, complex, DDReal, np.floating, np.integer,
                 np.complexfloating)


class Jet4:
    """Truncated fourth-order jet; immutable value type."""

    __slots__ = ("a",)

    def __init__(self, coeffs):
        a = tuple(coeffs)
        if len(a) != 5:
            raise ValueError(f"Jet4 needs 5 coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)

    @classmethod
    def _raw(cls, a):
        j = object.__new__(cls)
        object.__setattr__(j, "a", a)
        return j

    def __setattr__(self, name, value):
        raise AttributeError("Jet4 is immutable")

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Jet4):
            u, v = self.a, other.a
            return Jet4._raw((u[0] + v[0], u[1] + v[1], u[2] + v[2],
                              u[3] + v[3], u[4] + v[4]))
        if isinstance(other, _SCALAR_TYPES):
            u = self.a
            return Jet4._raw((u[0] + other, u[1], u[2], u[3], u[4]))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet4):
            u, v = self.a, other.a
            return Jet4._raw((u[0] - v[0], u[1] - v[1], u[2] - v[2],
                              u[3] - v[3], u[4] - v[4]))
        if isinstance(other, _SCALAR_TYPES):
            u = self.a
            return Jet4._raw((u[0] - other, u[1], u[2], u[3], u[4]))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            u = self.a
            return Jet4._raw((other - u[0], -u[1], -u[2], -u[3], -u[4]))
        return NotImplemented

    def __neg__(self):
        u = self.a
        return Jet4._raw((-u[0], -u[1], -u[2], -u[3], -u[4]))

    def __mul__(self, other):
        if isinstance(other, Jet4):
            u0, u1, u2, u3, u4 = self.a
            v0, v1, v2, v3, v4 = other.a
            return Jet4._raw((
                u0 * v0,
                u0 * v1 + u1 * v0,
                u0 * v2 + 2 * (u1 * v1) + u2 * v0,
                u0 * v3 + 3 * (u1 * v2) + 3 * (u2 * v1) + u3 * v0,
                u0 * v4 + 4 * (u1 * v3) + 6 * (u2 * v2) + 4 * (u3 * v1)
                + u4 * v0,
            ))
        if isinstance(other, _SCALAR_TYPES):
            u = self.a
            return Jet4._raw((u[0] * other, u[1] * other, u[2] * other,
                              u[3] * other, u[4] * other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet4):
            return self * inverse(other)
        if isinstance(other, _SCALAR_TYPES):
            u = self.a
            return Jet4._raw((u[0] / other, u[1] / other, u[2] / other,
                              u[3] / other, u[4] / other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return inverse(self) * other
        return NotImplemented

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)):
            return powi(self, int(p))
        if isinstance(p, (float, np.floating)):
            return powf(self, float(p))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Jet4):
            return self.a == other.a
        return NotImplemented

    def __hash__(self):
        return hash(self.a)

    # ordering compares real parts only; a convention, since jets carry no
    # intrinsic order
    def _real0(self, other):
        if isinstance(other, Jet4):
            return _real(other.a[0])
        if isinstance(other, _SCALAR_TYPES):
            return _real(other)
        return None

    def __lt__(self, other):
        r = self._real0(other)
        return NotImplemented if r is None else _real(self.a[0]) < r

    def __le__(self, other):
        r = self._real0(other)
        return NotImplemented if r is None else _real(self.a[0]) <= r

    def __gt__(self, other):
        r = self._real0(other)
        return NotImplemented if r is None else _real(self.a[0]) > r

    def __ge__(self, other):
        r = self._real0(other)
        return NotImplemented if r is None else _real(self.a[0]) >= r

    def __repr__(self):
        return f"Jet4({list(self.a)!r})"


def variable(x) -> Jet4:
    """Jet seeding x as the differentiation variable: x + unit first slot."""
    return Jet4._raw((x, 1.0, 0.0, 0.0, 0.0))


def constant(x) -> Jet4:
    return Jet4._raw((x, 0.0, 0.0, 0.0, 0.0))


def part(u: Jet4, k: int):
    """Coefficient a[k], i.e. the raw k-th derivative slot."""
    if not 0 <= k <= 4:
        raise IndexOutOfRange(f"jet part index {k} outside 0..4")
    return u.a[k]


def lift_univariate(d, u: Jet4) -> Jet4:
    """Compose an outer univariate function with the jet u.

    d[k] must be the k-th derivative of the outer function at u.a[0].
    The composition is the degree-4 truncated Taylor composition written
    in raw-derivative form (Faa di Bruno through order 4).
    """
    d0, d1, d2, d3, d4 = d
    a1, a2, a3, a4 = u.a[1], u.a[2], u.a[3], u.a[4]
    a1sq = a1 * a1
    return Jet4._raw((
        d0,
        d1 * a1,
        d1 * a2 + d2 * a1sq,
        d1 * a3 + d2 * (3 * (a1 * a2)) + d3 * (a1sq * a1),
        d1 * a4 + d2 * (4 * (a1 * a3) + 3 * (a2 * a2))
        + d3 * (6 * (a1sq * a2)) + d4 * (a1sq * a1sq),
    ))


def inverse(u: Jet4, tol: float = 0.0) -> Jet4:
    """Multiplicative inverse; defined only when the real part is nonzero."""
    x = u.a[0]
    if _abs_real(x) <= tol:
        raise PureDualNotInvertible(
            f"jet with real part {x!r} has no multiplicative inverse")
    inv = 1.0 / x
    inv2 = inv * inv
    return lift_univariate(
        (inv, -inv2, 2 * (inv2 * inv), -6 * (inv2 * inv2),
         24 * (inv2 * inv2 * inv)), u)


def powi(u: Jet4, n: int) -> Jet4:
    """Integer power by repeated squaring."""
    if n < 0:
        return powi(inverse(u), -n)
    result = constant(1.0)
    base = u
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


# -- scalar dispatch ----------------------------------------------------------

def _abs_real(x) -> float:
    if isinstance(x, DDReal):
        return abs(x.hi + x.lo)
    if isinstance(x, (complex, np.complexfloating)):
        return abs(x)
    return abs(float(x))


def _real(x) -> float:
    if isinstance(x, DDReal):
        return x.hi + x.lo
    if isinstance(x, (complex, np.complexfloating)):
        return x.real
    return float(x)


def _is_complex(x) -> bool:
    return isinstance(x, (complex, np.complexfloating))


def _scalar_sin(x):
    if isinstance(x, DDReal):
        return ddouble.sin(x)
    return cmath.sin(x) if _is_complex(x) else math.sin(x)


def _scalar_cos(x):
    if isinstance(x, DDReal):
        return ddouble.cos(x)
    return cmath.cos(x) if _is_complex(x) else math.cos(x)


def _scalar_tan(x):
    if isinstance(x, DDReal):
        return ddouble.tan(x)
    return cmath.tan(x) if _is_complex(x) else math.tan(x)


def _scalar_exp(x):
    if isinstance(x, DDReal):
        return ddouble.exp(x)
    return cmath.exp(x) if _is_complex(x) else math.exp(x)


def _scalar_log(x):
    if isinstance(x, DDReal):
        return ddouble.log(x)
    return cmath.log(x) if _is_complex(x) else math.log(x)


def _scalar_sqrt(x):
    if isinstance(x, DDReal):
        return ddouble.sqrt(x)
    return cmath.sqrt(x) if _is_complex(x) else math.sqrt(x)


def _scalar_sinh(x):
    if isinstance(x, DDReal):
        return ddouble.sinh(x)
    return cmath.sinh(x) if _is_complex(x) else math.sinh(x)


def _scalar_cosh(x):
    if isinstance(x, DDReal):
        return ddouble.cosh(x)
    return cmath.cosh(x) if _is_complex(x) else math.cosh(x)


def _scalar_pow(x, p: float):
    if isinstance(x, DDReal):
        return x ** p
    if _is_complex(x):
        # zero-imaginary bases take the real path so real and complex
        # pipelines stay bit-identical
        if x.imag == 0.0 and x.real > 0.0:
            return complex(x.real ** p, 0.0)
        return x ** p
    return x ** p


def _check_positive(x, op: str):
    if _is_complex(x):
        if x == 0:
            raise DomainError(f"{op} of complex zero")
    elif _real(x) <= 0.0:
        raise DomainError(f"{op} requires a positive real part, got {_real(x)}")


# -- elementary functions (jets or scalars) -----------------------------------

def sin(x):
    if isinstance(x, Jet4):
        s = _scalar_sin(x.a[0])
        c = _scalar_cos(x.a[0])
        return lift_univariate((s, c, -s, -c, s), x)
    return _scalar_sin(x)


def cos(x):
    if isinstance(x, Jet4):
        s = _scalar_sin(x.a[0])
        c = _scalar_cos(x.a[0])
        return lift_univariate((c, -s, -c, s, c), x)
    return _scalar_cos(x)


def tan(x):
    if isinstance(x, Jet4):
        t = _scalar_tan(x.a[0])
        t2 = t * t
        d1 = 1 + t2
        return lift_univariate(
            (t, d1, 2 * (t * d1), d1 * (2 + 6 * t2),
             8 * (t * d1) * (2 + 3 * t2)), x)
    return _scalar_tan(x)


def exp(x):
    if isinstance(x, Jet4):
        e = _scalar_exp(x.a[0])
        return lift_univariate((e, e, e, e, e), x)
    return _scalar_exp(x)


def log(x):
    if isinstance(x, Jet4):
        x0 = x.a[0]
        _check_positive(x0, "log")
        v = _scalar_log(x0)
        inv = 1.0 / x0
        inv2 = inv * inv
        return lift_univariate(
            (v, inv, -inv2, 2 * (inv2 * inv), -6 * (inv2 * inv2)), x)
    _check_positive(x, "log")
    return _scalar_log(x)


def sqrt(x):
    if isinstance(x, Jet4):
        x0 = x.a[0]
        _check_positive(x0, "sqrt")
        s = _scalar_sqrt(x0)
        si = 1.0 / s
        inv = 1.0 / x0
        return lift_univariate(
            (s, 0.5 * si, -0.25 * (si * inv), 0.375 * (si * inv * inv),
             -0.9375 * (si * inv * inv * inv)), x)
    _check_positive(x, "sqrt")
    return _scalar_sqrt(x)


def sinh(x):
    if isinstance(x, Jet4):
        sh = _scalar_sinh(x.a[0])
        ch = _scalar_cosh(x.a[0])
        return lift_univariate((sh, ch, sh, ch, sh), x)
    return _scalar_sinh(x)


def cosh(x):
    if isinstance(x, Jet4):
        sh = _scalar_sinh(x.a[0])
        ch = _scalar_cosh(x.a[0])
        return lift_univariate((ch, sh, ch, sh, ch), x)
    return _scalar_cosh(x)


def powf(x, p: float):
    """Real power with non-integer exponent; base real part must be > 0."""
    if isinstance(x, Jet4):
        x0 = x.a[0]
        _check_positive(x0, "powf")
        d0 = _scalar_pow(x0, p)
        d1 = p * _scalar_pow(x0, p - 1.0)
        d2 = (p * (p - 1.0)) * _scalar_pow(x0, p - 2.0)
        d3 = (p * (p - 1.0) * (p - 2.0)) * _scalar_pow(x0, p - 3.0)
        d4 = (p * (p - 1.0) * (p - 2.0) * (p - 3.0)) * _scalar_pow(x0, p - 4.0)
        return lift_univariate((d0, d1, d2, d3, d4), x)
    _check_positive(x, "powf")
    return _scalar_pow(x, p)


def absolute(x):
    """Sign-of-real-part absolute value (not differentiable at zero)."""
    if isinstance(x, Jet4):
        return -x if _real(x.a[0]) < 0.0 else x
    if isinstance(x, DDReal):
        return abs(x)
    if _is_complex(x):
        return -x if x.real < 0.0 else x
    return abs(x)
