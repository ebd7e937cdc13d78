"""Compensated double-double arithmetic (~106-bit significand).

A value is an unevaluated sum hi + lo of two binary64 floats with
|lo| <= 0.5 ulp(hi).  The low-level kernels work on flat (hi, lo) float
pairs so they can be compiled by numba and reused from compiled code;
the `DDReal` class wraps them for ordinary use, and `DDVector` holds a
vector of double-doubles as two float64 arrays.

Error-free transformations follow Dekker/Knuth; elementary functions use
the usual argument-reduction + short Taylor series recipes (exp via
2^m * (exp(r/512))^512, log via Newton on exp, sin/cos via 2*pi and pi/2
reduction).  Accuracy is a few units in 2^-104, checked against mpmath
in the test suite.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from .errors import DomainError

try:  # pragma: no cover - exercised implicitly
    if os.environ.get("JETKIN_NO_NUMBA"):
        raise ImportError
    from numba import njit as _njit

    def _jit(f):
        return _njit(cache=True)(f)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    def _jit(f):
        return f

    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# error-free transformations

_SPLITTER = 134217729.0  # 2^27 + 1


@_jit
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@_jit
def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


@_jit
def two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


# ---------------------------------------------------------------------------
# ring operations on (hi, lo) pairs


@_jit
def dd_add(ahi, alo, bhi, blo):
    s1, s2 = two_sum(ahi, bhi)
    t1, t2 = two_sum(alo, blo)
    s2 += t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 += t2
    return quick_two_sum(s1, s2)


@_jit
def dd_add_d(ahi, alo, b):
    s1, s2 = two_sum(ahi, b)
    s2 += alo
    return quick_two_sum(s1, s2)


@_jit
def dd_sub(ahi, alo, bhi, blo):
    return dd_add(ahi, alo, -bhi, -blo)


@_jit
def dd_mul(ahi, alo, bhi, blo):
    p, e = two_prod(ahi, bhi)
    e += ahi * blo + alo * bhi
    return quick_two_sum(p, e)


@_jit
def dd_mul_d(ahi, alo, b):
    p, e = two_prod(ahi, b)
    e += alo * b
    return quick_two_sum(p, e)


@_jit
def dd_div(ahi, alo, bhi, blo):
    q1 = ahi / bhi
    rhi, rlo = dd_add(ahi, alo, *dd_mul_d(bhi, blo, -q1))
    q2 = rhi / bhi
    rhi, rlo = dd_add(rhi, rlo, *dd_mul_d(bhi, blo, -q2))
    q3 = rhi / bhi
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add_d(q1, q2, q3)


@_jit
def dd_div_d(ahi, alo, b):
    return dd_div(ahi, alo, b, 0.0)


@_jit
def dd_sqrt(ahi, alo):
    # one Newton step from the double seed doubles the accurate bits
    if ahi == 0.0 and alo == 0.0:
        return 0.0, 0.0
    x = 1.0 / math.sqrt(ahi)
    ax = ahi * x
    phi, plo = two_prod(ax, ax)
    dhi, dlo = dd_sub(ahi, alo, phi, plo)
    return quick_two_sum(ax, dhi * (x * 0.5))


# ---------------------------------------------------------------------------
# verified double-double constants

_LN2_HI, _LN2_LO = 0.6931471805599453, 2.3190468138462996e-17
_PI_HI, _PI_LO = 3.141592653589793, 1.2246467991473532e-16
_TWOPI_HI, _TWOPI_LO = 6.283185307179586, 2.4492935982947064e-16
_HALFPI_HI, _HALFPI_LO = 1.5707963267948966, 6.123233995736766e-17


@_jit
def dd_exp(ahi, alo):
    if ahi > 709.0:
        return math.inf, 0.0
    if ahi < -709.0:
        return 0.0, 0.0
    m = math.floor(ahi / _LN2_HI + 0.5)
    rhi, rlo = dd_add(ahi, alo, *dd_mul_d(_LN2_HI, _LN2_LO, -m))
    # scale so the series needs ~10 terms, then square back 9 times
    rhi = rhi * 0.001953125  # exact: / 512
    rlo = rlo * 0.001953125
    shi, slo = rhi, rlo          # running sum of expm1(r/512)
    phi, plo = rhi, rlo          # running power r^j / j!
    for j in range(2, 12):
        phi, plo = dd_mul(phi, plo, rhi, rlo)
        phi, plo = dd_div_d(phi, plo, float(j))
        shi, slo = dd_add(shi, slo, phi, plo)
        if abs(phi) < 1e-40:
            break
    for _ in range(9):
        # expm1 doubling: (1+s)^2 - 1 = 2s + s^2
        sqhi, sqlo = dd_mul(shi, slo, shi, slo)
        shi, slo = dd_add(2.0 * shi, 2.0 * slo, sqhi, sqlo)
    shi, slo = dd_add_d(shi, slo, 1.0)
    im = int(m)
    return math.ldexp(shi, im), math.ldexp(slo, im)


@_jit
def dd_log(ahi, alo):
    # Newton on exp(y) = a from the double seed; caller guards ahi > 0
    yhi, ylo = math.log(ahi), 0.0
    for _ in range(2):
        ehi, elo = dd_exp(yhi, ylo)
        qhi, qlo = dd_div(ahi, alo, ehi, elo)
        yhi, ylo = dd_add(yhi, ylo, *dd_add_d(qhi, qlo, -1.0))
    return yhi, ylo


@_jit
def dd_sincos(ahi, alo):
    k = math.floor(ahi / _TWOPI_HI + 0.5)
    rhi, rlo = dd_add(ahi, alo, *dd_mul_d(_TWOPI_HI, _TWOPI_LO, -k))
    j = int(math.floor(rhi / _HALFPI_HI + 0.5))
    thi, tlo = dd_add(rhi, rlo, *dd_mul_d(_HALFPI_HI, _HALFPI_LO, -float(j)))
    x2hi, x2lo = dd_mul(thi, tlo, thi, tlo)
    # sin series on |t| <= pi/4
    snhi, snlo = thi, tlo
    phi, plo = thi, tlo
    for i in range(1, 16):
        phi, plo = dd_mul(phi, plo, x2hi, x2lo)
        phi, plo = dd_div_d(phi, plo, -float((2 * i) * (2 * i + 1)))
        snhi, snlo = dd_add(snhi, snlo, phi, plo)
        if abs(phi) < 1e-40:
            break
    # cos series
    cshi, cslo = 1.0, 0.0
    phi, plo = 1.0, 0.0
    for i in range(1, 16):
        phi, plo = dd_mul(phi, plo, x2hi, x2lo)
        phi, plo = dd_div_d(phi, plo, -float((2 * i - 1) * (2 * i)))
        cshi, cslo = dd_add(cshi, cslo, phi, plo)
        if abs(phi) < 1e-40:
            break
    q = j % 4
    if q == 0:
        return snhi, snlo, cshi, cslo
    if q == 1:
        return cshi, cslo, -snhi, -snlo
    if q == 2:
        return -snhi, -snlo, -cshi, -cslo
    return -cshi, -cslo, snhi, snlo


@_jit
def dd_sin(ahi, alo):
    shi, slo, _, _ = dd_sincos(ahi, alo)
    return shi, slo


@_jit
def dd_cos(ahi, alo):
    _, _, chi, clo = dd_sincos(ahi, alo)
    return chi, clo


# ---------------------------------------------------------------------------
# scalar wrapper


class DDReal:
    """Extended-precision real scalar (hi + lo pair of binary64)."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi=0.0, lo=0.0):
        h, l = two_sum(float(hi), float(lo))
        self.hi = h
        self.lo = l

    @classmethod
    def _raw(cls, hi, lo):
        v = object.__new__(cls)
        v.hi = hi
        v.lo = lo
        return v

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "DDReal":
        hi = float(fr)
        lo = float(fr - Fraction(hi))
        return cls(hi, lo)

    # -- coercion ----------------------------------------------------------
    @staticmethod
    def _parts(x):
        if isinstance(x, DDReal):
            return x.hi, x.lo
        if isinstance(x, (int, float)):
            return float(x), 0.0
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_add(self.hi, self.lo, p[0], p[1]))

    __radd__ = __add__

    def __sub__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_sub(self.hi, self.lo, p[0], p[1]))

    def __rsub__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_sub(p[0], p[1], self.hi, self.lo))

    def __mul__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_mul(self.hi, self.lo, p[0], p[1]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_div(self.hi, self.lo, p[0], p[1]))

    def __rtruediv__(self, other):
        p = DDReal._parts(other)
        if p is None:
            return NotImplemented
        return DDReal._raw(*dd_div(p[0], p[1], self.hi, self.lo))

    def __neg__(self):
        return DDReal._raw(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.hi < 0.0 else self

    def __pow__(self, n):
        if isinstance(n, int):
            if n < 0:
                return 1.0 / self.__pow__(-n)
            r = DDReal._raw(1.0, 0.0)
            b = self
            k = n
            while k:
                if k & 1:
                    r = r * b
                b = b * b
                k >>= 1
            return r
        return exp(log(self) * float(n))

    # -- comparisons (lexicographic on the normalized pair) -----------------
    def _cmp(self, other):
        p = DDReal._parts(other)
        if p is None:
            return None
        if self.hi != p[0]:
            return -1 if self.hi < p[0] else 1
        if self.lo != p[1]:
            return -1 if self.lo < p[1] else 1
        return 0

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash((self.hi, self.lo))

    def __float__(self):
        return float(self.hi + self.lo)

    def __repr__(self):
        return f"DDReal({self.hi!r}, {self.lo!r})"


def sqrt(x: DDReal) -> DDReal:
    if x.hi < 0.0:
        raise DomainError(f"sqrt of negative double-double: {x.hi}")
    return DDReal._raw(*dd_sqrt(x.hi, x.lo))


def exp(x: DDReal) -> DDReal:
    return DDReal._raw(*dd_exp(x.hi, x.lo))


def log(x: DDReal) -> DDReal:
    if x.hi <= 0.0:
        raise DomainError(f"log of non-positive double-double: {x.hi}")
    return DDReal._raw(*dd_log(x.hi, x.lo))


def sin(x: DDReal) -> DDReal:
    return DDReal._raw(*dd_sin(x.hi, x.lo))


def cos(x: DDReal) -> DDReal:
    return DDReal._raw(*dd_cos(x.hi, x.lo))


def tan(x: DDReal) -> DDReal:
    shi, slo, chi, clo = dd_sincos(x.hi, x.lo)
    return DDReal._raw(*dd_div(shi, slo, chi, clo))


def sinh(x: DDReal) -> DDReal:
    if abs(x.hi) < 0.1:
        # series avoids the (e^x - e^-x) cancellation near zero
        x2 = x * x
        s = x
        p = x
        for i in range(1, 12):
            p = p * x2 / float((2 * i) * (2 * i + 1))
            s = s + p
        return s
    e = exp(x)
    return (e - 1.0 / e) / 2.0


def cosh(x: DDReal) -> DDReal:
    e = exp(x)
    return (e + 1.0 / e) / 2.0


class DDVector:
    """Vector of double-doubles stored as parallel hi/lo float64 arrays."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=None):
        self.hi = np.asarray(hi, dtype=np.float64).copy()
        self.lo = (np.zeros_like(self.hi) if lo is None
                   else np.asarray(lo, dtype=np.float64).copy())
        if self.hi.shape != self.lo.shape:
            raise ValueError("hi/lo shape mismatch")

    @classmethod
    def from_scalars(cls, values) -> "DDVector":
        hi = np.empty(len(values))
        lo = np.empty(len(values))
        for i, v in enumerate(values):
            p = DDReal._parts(v)
            hi[i], lo[i] = p
        return cls(hi, lo)

    def __len__(self):
        return self.hi.shape[0]

    def __getitem__(self, i) -> DDReal:
        return DDReal._raw(float(self.hi[i]), float(self.lo[i]))

    def __setitem__(self, i, value):
        p = DDReal._parts(value)
        if p is None:
            raise TypeError(f"cannot store {type(value).__name__} in DDVector")
        self.hi[i], self.lo[i] = p

    def copy(self) -> "DDVector":
        return DDVector(self.hi, self.lo)

    __copy__ = copy

    def to_float(self) -> np.ndarray:
        return self.hi + self.lo

    def __repr__(self):
        return f"DDVector({self.to_float()!r})"
