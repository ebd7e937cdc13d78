"""Forward-mode finite differences to arbitrary approximation order.

The derivative operator is the logarithm series in the forward delta
operator; truncating it after n terms approximates f' with error O(h^n).
`deriv` applies the truncated operator in a single fused pass: the p-term
alternating sum collapses to one stencil over the n+1 nodes q, q+h, ...,
q+nh (coefficients accumulated in exact rational arithmetic, realized in
the working scalar type).  Derivatives of order r nest `deriv` through
one-variable restrictions, so a partial of orders (n1..nr) costs
(n1+1)*...*(nr+1) function evaluations; nothing is memoized across calls
on purpose - the benchmark numbers are meant to reflect that cost.

Points may be float64 arrays (binary64 work) or DDVector (double-double
work); stencil coefficients and node offsets are formed in the matching
arithmetic.  Coordinate indices are 1-based.
"""

from __future__ import annotations

import copy
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .ddouble import DDReal, DDVector, two_prod
from .errors import DimensionCapExceeded, DimensionMismatch, IndexOutOfRange

__all__ = [
    "FdScheme", "forward_delta", "deriv", "df1", "df2", "df3", "df4",
    "setvn", "directional4_fd",
]


PRECISIONS = ("f64", "extended")


@dataclass
class FdScheme:
    """Step size plus the per-level order split for one partial derivative."""

    h: float = 1e-5
    orders: tuple = (1, 2, 2, 2)
    precision: str = "f64"

    def __post_init__(self):
        self.orders = tuple(int(n) for n in self.orders)
        if self.h <= 0.0:
            raise ValueError(f"step size must be positive, got {self.h}")
        if not 1 <= len(self.orders) <= 4:
            raise ValueError(f"derivative order {len(self.orders)} outside 1..4")
        if any(n < 1 for n in self.orders):
            raise ValueError(f"approximation orders must be >= 1: {self.orders}")
        if self.precision not in PRECISIONS:
            raise ValueError(f"unknown precision {self.precision!r}")

    @classmethod
    def of_order(cls, r: int, oa: int, h: float = 1e-5,
                 precision: str = "f64") -> "FdScheme":
        """Scheme for an r-th derivative at overall approximation order oa."""
        return cls(h=h, orders=tuple(setvn(r, oa)), precision=precision)


def setvn(r: int, oa: int) -> list:
    """Near-equal ascending split n1..nr with sum oa + r - 1."""
    if not 1 <= r <= 4:
        raise ValueError(f"derivative order r={r} outside 1..4")
    if oa < 1:
        raise ValueError(f"approximation order must be >= 1, got {oa}")
    total = oa + r - 1
    res = total % r
    nmin = (total - res) // r
    return [nmin] * (r - res) + [nmin + 1] * res


def _step(q, k: int, h: float):
    # node offsets in the scalar's own arithmetic so dd nodes stay exact
    if isinstance(q, DDReal):
        return q + DDReal._raw(*two_prod(float(k), h))
    return q + k * h


def forward_delta(f, q, h: float, p: int):
    """p-th forward difference: alternating binomial sum over f(q + h*k)."""
    if p < 1:
        raise ValueError(f"delta power must be >= 1, got {p}")
    total = None
    for k in range(p + 1):
        c = (-1) ** (p - k) * math.comb(p, k)
        term = c * f(_step(q, k, h))
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def _log_series_stencil(n: int):
    # coefficients of the truncated log-series operator gathered per node
    c = [Fraction(0)] * (n + 1)
    for p in range(1, n + 1):
        lead = Fraction((-1) ** (p + 1), p)
        for k in range(p + 1):
            c[k] += lead * (-1) ** (p - k) * math.comb(p, k)
    return tuple(c)


@lru_cache(maxsize=None)
def _stencil_f64(n: int):
    return tuple(float(c) for c in _log_series_stencil(n))


@lru_cache(maxsize=None)
def _stencil_dd(n: int):
    return tuple(DDReal.from_fraction(c) for c in _log_series_stencil(n))


def deriv(f, q, h: float, n: int):
    """First derivative of f at q to approximation order n, from the n+1
    forward nodes q, q+h, ..., q+nh."""
    if n < 1:
        raise ValueError(f"approximation order must be >= 1, got {n}")
    coeffs = _stencil_dd(n) if isinstance(q, DDReal) else _stencil_f64(n)
    total = None
    for k in range(n + 1):
        term = coeffs[k] * f(_step(q, k, h))
        total = term if total is None else total + term
    return total / h


def _check_index(q, i: int):
    if not 1 <= i <= len(q):
        raise IndexOutOfRange(f"coordinate index {i} outside 1..{len(q)}")


def df1(f, q, i: int, h: float, n: int):
    """Partial df/dq_i at q via the one-variable restriction along i."""
    _check_index(q, i)

    def faux(t):
        v = copy.copy(q)
        v[i - 1] = t
        return f(v)

    return deriv(faux, q[i - 1], h, n)


def df2(f, q, i: int, j: int, h: float, n1: int, n2: int):
    """Second partial d2f/dq_j dq_i; the outer level differentiates q_j."""
    _check_index(q, j)

    def faux(t):
        v = copy.copy(q)
        v[j - 1] = t
        return df1(f, v, i, h, n2)

    return deriv(faux, q[j - 1], h, n1)


def df3(f, q, i: int, j: int, k: int, h: float, n1: int, n2: int, n3: int):
    _check_index(q, k)

    def faux(t):
        v = copy.copy(q)
        v[k - 1] = t
        return df2(f, v, i, j, h, n2, n3)

    return deriv(faux, q[k - 1], h, n1)


def df4(f, q, i: int, j: int, k: int, l: int, h: float,
        n1: int, n2: int, n3: int, n4: int):
    _check_index(q, l)

    def faux(t):
        v = copy.copy(q)
        v[l - 1] = t
        return df3(f, v, i, j, k, h, n2, n3, n4)

    return deriv(faux, q[l - 1], h, n1)


def _symmetric_weight(x, y, z, w, combo):
    total = 0.0
    for p in set(itertools.permutations(combo)):
        total += x[p[0] - 1] * y[p[1] - 1] * z[p[2] - 1] * w[p[3] - 1]
    return total


def directional4_fd(f, q, x, y, z, w, scheme: FdScheme, m_cap: int = 25):
    """Fourth-order directional derivative by brute-force contraction of the
    finite-difference fourth-partial tensor (cost O(m^4))."""
    m = len(q)
    for v in (x, y, z, w):
        if len(v) != m:
            raise DimensionMismatch(
                f"direction of dimension {len(v)} against point of dimension {m}")
    if m > m_cap:
        raise DimensionCapExceeded(
            f"m={m} above the O(m^4) contraction cap {m_cap}")
    if len(scheme.orders) != 4:
        raise ValueError("directional4_fd needs a rank-4 scheme")
    n1, n2, n3, n4 = scheme.orders

    if scheme.precision == "extended":
        point = DDVector(np.asarray(q, dtype=np.float64))
    else:
        point = np.asarray(q, dtype=np.float64).copy()

    total = None
    for combo in itertools.combinations_with_replacement(range(1, m + 1), 4):
        weight = _symmetric_weight(x, y, z, w, combo)
        i, j, k, l = combo
        a = df4(f, point, i, j, k, l, scheme.h, n1, n2, n3, n4)
        term = a * weight
        total = term if total is None else total + term
    return total
