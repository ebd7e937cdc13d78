"""Benchmark and example fields used by the CLI and the test suite.

All fields are written against the package's generic elementary functions,
so one definition runs on floats, complex numbers, double-doubles, and
jets.  `inverted_cosine_wave_dd` is a compiled double-double fast path for
the same sum, used for the extended-precision finite-difference sweeps
where the generic per-scalar path would be prohibitively slow; the test
suite checks it against the generic definition.
"""

from __future__ import annotations

import math

import numpy as np

from .ddouble import (
    DDReal,
    DDVector,
    _jit,
    dd_add,
    dd_cos,
    dd_exp,
    dd_mul,
    dd_sqrt,
)
from .jets import cos, exp, log, sin, sqrt
from .kinematics import KinematicSnapshot

__all__ = [
    "inverted_cosine_wave",
    "inverted_cosine_wave_dd",
    "bilinear",
    "mixed_trig_log",
    "nested_sine_position",
    "table1_vectors",
    "hypothetical_snapshot",
    "rcr_snapshot",
]


def inverted_cosine_wave(x):
    """Sum of inverted cosine-wave wells over consecutive coordinate pairs;
    a standard optimization test function, smooth in every variable."""
    total = None
    for i in range(len(x) - 1):
        a = x[i]
        b = x[i + 1]
        s = a * a + b * b + 0.5 * (a * b)
        term = exp(s * -0.125) * cos(4.0 * sqrt(s))
        total = term if total is None else total + term
    return -total


@_jit
def _icwf_dd_kernel(qhi, qlo):
    thi = 0.0
    tlo = 0.0
    for i in range(qhi.shape[0] - 1):
        ahi, alo = qhi[i], qlo[i]
        bhi, blo = qhi[i + 1], qlo[i + 1]
        p1h, p1l = dd_mul(ahi, alo, ahi, alo)
        p2h, p2l = dd_mul(bhi, blo, bhi, blo)
        p3h, p3l = dd_mul(ahi, alo, bhi, blo)
        sh, sl = dd_add(p1h, p1l, p2h, p2l)
        sh, sl = dd_add(sh, sl, 0.5 * p3h, 0.5 * p3l)
        eh, el = dd_exp(-0.125 * sh, -0.125 * sl)
        rh, rl = dd_sqrt(sh, sl)
        ch, cl = dd_cos(4.0 * rh, 4.0 * rl)
        mh, ml = dd_mul(eh, el, ch, cl)
        thi, tlo = dd_add(thi, tlo, mh, ml)
    return -thi, -tlo


def inverted_cosine_wave_dd(v: DDVector) -> DDReal:
    """Compiled double-double evaluation of `inverted_cosine_wave`."""
    hi, lo = _icwf_dd_kernel(v.hi, v.lo)
    # the pure-Python kernel fallback hands back numpy scalars
    return DDReal._raw(float(hi), float(lo))


def bilinear(v):
    """Product of the first two coordinates; smoke-test field with one
    nonzero mixed partial."""
    return v[0] * v[1]


def mixed_trig_log(v):
    """Five-variable trig/log mixture used for the partial-derivative
    comparison tables; coordinates are (x, y, z, w, u)."""
    x, y, z, w, u = v[0], v[1], v[2], v[3], v[4]
    return (cos(x * y / u) * z / w
            + 3.0 * sin(x * u) * sin(y / u) * log(x * y * z / (u * w)))


def nested_sine_position(q):
    """Hypothetical R^2 -> R^3 position vector whose third component nests
    the sine a hundred times (only expressible as a loop)."""
    q1, q2 = q[0], q[1]
    s = q1 * q2
    for _ in range(100):
        s = sin(s)
    return [log(q1 * (q2 * q2)), sqrt(q2) / q1, s]


def table1_vectors(m: int):
    """Evaluation point and direction set for the fourth-order directional
    derivative benchmark: x = [1..m], y = sin x, z = cos x, w = sqrt x,
    evaluated at q = log x (all element-wise)."""
    if m < 2:
        raise ValueError(f"benchmark dimension must be >= 2, got {m}")
    x = np.arange(1.0, m + 1.0)
    return np.log(x), x, np.sin(x), np.cos(x), np.sqrt(x)


def hypothetical_snapshot() -> KinematicSnapshot:
    """Coordinates and time derivatives for the nested-sine example."""
    return KinematicSnapshot(
        q=[1.1, 2.2],
        qd=[0.5, -2.7],
        qdd=[-0.1, 0.7],
        qddd=[0.3, 0.5],
        qdddd=[-0.2, 0.1],
    )


def rcr_snapshot() -> KinematicSnapshot:
    """Joint coordinates and rates for the RCR manipulator example."""
    return KinematicSnapshot(
        q=[math.pi / 2, 0.0, 2.0, 0.0],
        qd=[1.0, 5.0, 1.0, 1.0],
        qdd=[1.0, 0.0, 2.0, 1.0],
        qddd=[1.0, 2.0, 3.0, 4.0],
        qdddd=[4.0, 5.0, 6.0, 7.0],
    )
