"""Higher-order directional derivatives via single jet evaluations.

Evaluating a field at q + eps*v yields, in one pass, the value and the
directional derivatives of orders 1..4 along v (jet parts 1..4).  Mixed
directions are recovered from those single-direction values through the
polarization identities of symmetric multilinear forms; the chains below
follow that algebra literally so results are reproducible term for term.

Points and directions are plain sequences of scalars (float, complex, or
DDReal).  Fields take a list of Jet4 and return a Jet4 (scalar field) or a
sequence of Jet4 (vector field).  Scalar and vector paths share the same
polarization code: it operates on anything supporting +, - and division
by an int, which covers scalars and numpy arrays alike.

Coordinate indices at this API are 1-based.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyIndexList,
    IndexOutOfRange,
    MoreThanFourIndices,
)
from .jets import Jet4

__all__ = [
    "eval_jet", "veval_jet",
    "d1", "d2_single", "d3_single", "d4_single",
    "d2", "d3", "d4",
    "vd1", "vd2", "vd3", "vd4",
    "partial", "hessian_vector_product",
]


def _check_dims(q, *vecs):
    m = len(q)
    if m < 1:
        raise DimensionMismatch("point must have at least one component")
    for v in vecs:
        if len(v) != m:
            raise DimensionMismatch(
                f"direction of dimension {len(v)} against point of dimension {m}")


def _vadd(x, y):
    return [a + b for a, b in zip(x, y)]


def _vsub(x, y):
    return [a - b for a, b in zip(x, y)]


def eval_jet(f, q, v) -> Jet4:
    """Evaluate the scalar field f at q + eps*v; parts 1..4 are the
    directional derivatives of orders 1..4 along v."""
    _check_dims(q, v)
    jets = [Jet4._raw((qi, vi, 0.0, 0.0, 0.0)) for qi, vi in zip(q, v)]
    return f(jets)


def veval_jet(F, q, v):
    """Vector-field analogue of eval_jet; returns a sequence of Jet4."""
    _check_dims(q, v)
    jets = [Jet4._raw((qi, vi, 0.0, 0.0, 0.0)) for qi, vi in zip(q, v)]
    return F(jets)


# -- polarization chains, shared between scalar and vector paths --------------

def _pol2(single, x, y):
    return (single(_vadd(x, y)) - single(x) - single(y)) / 2


def _pol3_xxz(single, x, z):
    return (single(_vadd(z, x)) + single(_vsub(z, x)) - 2 * single(z)) / 6


def _pol3(single, x, y, z):
    return (_pol3_xxz(single, _vadd(x, y), z)
            - _pol3_xxz(single, x, z)
            - _pol3_xxz(single, y, z)) / 2


def _pol4_xxzz(single, x, z):
    return (single(_vadd(x, z)) + single(_vsub(x, z))
            - 2 * single(x) - 2 * single(z)) / 12


def _pol4_xxzw(single, x, z, w):
    return (_pol4_xxzz(single, x, _vadd(z, w))
            - _pol4_xxzz(single, x, z)
            - _pol4_xxzz(single, x, w)) / 2


def _pol4(single, x, y, z, w):
    return (_pol4_xxzw(single, _vadd(x, y), z, w)
            - _pol4_xxzw(single, x, z, w)
            - _pol4_xxzw(single, y, z, w)) / 2


def _scalar_single(f, q, k):
    def single(v):
        return eval_jet(f, q, v).a[k]
    return single


def _vector_single(F, q, k):
    def single(v):
        return np.array([j.a[k] for j in veval_jet(F, q, v)])
    return single


# -- scalar fields -------------------------------------------------------------

def d1(f, q, x):
    return eval_jet(f, q, x).a[1]


def d2_single(f, q, x):
    return eval_jet(f, q, x).a[2]


def d3_single(f, q, x):
    return eval_jet(f, q, x).a[3]


def d4_single(f, q, x):
    return eval_jet(f, q, x).a[4]


def d2(f, q, x, y):
    """x^T (Hessian f)(q) y."""
    _check_dims(q, x, y)
    return _pol2(_scalar_single(f, q, 2), x, y)


def d3(f, q, x, y, z):
    _check_dims(q, x, y, z)
    return _pol3(_scalar_single(f, q, 3), x, y, z)


def d4(f, q, x, y, z, w):
    _check_dims(q, x, y, z, w)
    return _pol4(_scalar_single(f, q, 4), x, y, z, w)


# -- vector fields -------------------------------------------------------------

def vd1(F, q, x):
    """Jacobian-times-vector for the vector field F."""
    return np.array([j.a[1] for j in veval_jet(F, q, x)])


def vd2(F, q, x, y):
    _check_dims(q, x, y)
    return _pol2(_vector_single(F, q, 2), x, y)


def vd3(F, q, x, y, z):
    _check_dims(q, x, y, z)
    return _pol3(_vector_single(F, q, 3), x, y, z)


def vd4(F, q, x, y, z, w):
    _check_dims(q, x, y, z, w)
    return _pol4(_vector_single(F, q, 4), x, y, z, w)


# -- coordinate representation --------------------------------------------------

def _basis(m, i1):
    e = [0.0] * m
    e[i1 - 1] = 1.0
    return e


def partial(f, q, indices):
    """Mixed partial derivative of f at q for 1..4 coordinate indices
    (1-based), as the multilinear form evaluated on basis vectors."""
    m = len(q)
    idx = list(indices)
    if not idx:
        raise EmptyIndexList("no coordinate indices given")
    if len(idx) > 4:
        raise MoreThanFourIndices(f"{len(idx)} indices; at most 4 supported")
    for i in idx:
        if not 1 <= i <= m:
            raise IndexOutOfRange(f"coordinate index {i} outside 1..{m}")
    es = [_basis(m, i) for i in idx]
    if len(idx) == 1:
        return d1(f, q, es[0])
    if len(idx) == 2:
        return d2(f, q, es[0], es[1])
    if len(idx) == 3:
        return d3(f, q, es[0], es[1], es[2])
    return d4(f, q, es[0], es[1], es[2], es[3])


def hessian_vector_product(f, q, w):
    """(Hessian f)(q) @ w, one component per coordinate."""
    _check_dims(q, w)
    m = len(q)
    return np.array([d2(f, q, _basis(m, k), w) for k in range(1, m + 1)])
