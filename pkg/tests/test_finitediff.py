import math

import numpy as np
import pytest

from jetkin import directional as dr
from jetkin import finitediff as fd
from jetkin import models
from jetkin.ddouble import DDReal, DDVector
from jetkin.errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    IndexOutOfRange,
)


class Counting:
    def __init__(self, f):
        self.f = f
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.f(x)


# -- forward delta ------------------------------------------------------------

def test_forward_delta_identity():
    assert fd.forward_delta(lambda q: q, 2.0, 0.25, 1) == pytest.approx(0.25)


def test_forward_delta_quadratic():
    # second forward difference of q^2 is exactly 2 h^2
    got = fd.forward_delta(lambda q: q * q, 3.0, 0.5, 2)
    assert got == pytest.approx(0.5, abs=1e-14)


def test_forward_delta_constant():
    for p in range(1, 6):
        assert fd.forward_delta(lambda q: 4.25, 1.0, 0.1, p) == pytest.approx(
            0.0, abs=1e-12)


def test_forward_delta_validates_power():
    with pytest.raises(ValueError):
        fd.forward_delta(lambda q: q, 0.0, 0.1, 0)


# -- deriv ----------------------------------------------------------------------

def test_deriv_equals_alternating_delta_sum():
    # the fused stencil must match the term-by-term operator definition
    f = math.exp
    q, h = 0.3, 0.01
    for n in range(1, 7):
        fused = fd.deriv(f, q, h, n)
        alternating = sum(((-1) ** (p + 1) / p) * fd.forward_delta(f, q, h, p)
                          for p in range(1, n + 1)) / h
        assert fused == pytest.approx(alternating, rel=1e-12)


def test_deriv_exact_for_quadratic():
    for h in (0.5, 0.1, 1e-3):
        assert fd.deriv(lambda q: q * q, 3.0, h, 2) == pytest.approx(
            6.0, rel=1e-10)


def test_deriv_exact_for_linear():
    for n in range(1, 6):
        assert fd.deriv(lambda q: 3.0 * q - 1.0, 0.7, 0.05, n) == \
            pytest.approx(3.0, rel=1e-11)


def test_deriv_evaluation_count():
    for n in (1, 2, 5):
        cf = Counting(math.exp)
        fd.deriv(cf, 0.1, 1e-3, n)
        assert cf.calls == n + 1


@pytest.mark.parametrize("f,fprime,q", [
    (math.exp, math.exp, 0.5),
    (math.sin, math.cos, 0.7),
    (math.log1p, lambda q: 1.0 / (1.0 + q), 0.4),
])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_convergence_order(f, fprime, q, n):
    hs = np.logspace(-1.0, -2.5, 7)
    errs = np.array([abs(fd.deriv(f, q, h, n) - fprime(q)) for h in hs])
    assert np.all(errs > 1e-12)  # above the roundoff floor on this h range
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert abs(slope - n) <= 0.3


def test_polynomial_exactness_1d():
    p = np.poly1d([1.5, -2.0, 1.0, -0.5])  # cubic
    dp = np.polyder(p)
    for q in (-1.2, 0.3, 2.0):
        got = fd.deriv(lambda t: float(p(t)), q, 0.1, 3)
        assert got == pytest.approx(float(dp(q)), rel=1e-10)


# -- nested partials --------------------------------------------------------------

def poly2(v):
    return v[0] * v[0] * v[1] * v[1]


def test_df1_simple():
    q = np.array([1.5, -0.7])
    got = fd.df1(lambda v: float(np.sin(v[0]) * v[1]), q, 1, 1e-5, 4)
    assert got == pytest.approx(math.cos(1.5) * -0.7, rel=1e-8)
    assert q[0] == 1.5  # input point untouched


def test_df2_mixed_partial_constant():
    q = np.array([0.8, 1.3])
    got = fd.df2(lambda v: v[0] * v[1], q, 1, 2, 1e-4, 1, 1)
    assert got == pytest.approx(1.0, abs=1e-6)


def test_df2_polynomial_exact():
    # d2/dx dy of x^2 y^2 = 4 x y; orders (2,2) are exact for the quadratic
    # one-variable restrictions
    q = np.array([1.1, 0.9])
    got = fd.df2(poly2, q, 1, 2, 0.05, 2, 2)
    assert got == pytest.approx(4.0 * 1.1 * 0.9, rel=1e-9)


def test_df_evaluation_counts():
    q = np.array([0.5, 0.25, -0.3, 0.8])
    cf = Counting(lambda v: v[0] * v[1] * v[2] * v[3])
    fd.df4(cf, q, 1, 2, 3, 4, 1e-2, 1, 2, 2, 2)
    assert cf.calls == 2 * 3 * 3 * 3  # product of (order + 1) per level


def test_df_index_validation():
    q = np.array([1.0, 2.0])
    with pytest.raises(IndexOutOfRange):
        fd.df1(poly2, q, 0, 1e-5, 2)
    with pytest.raises(IndexOutOfRange):
        fd.df2(poly2, q, 1, 3, 1e-5, 2, 2)


def test_df_against_dual_route_extended():
    # extended-precision finite differences vs jet values, all reference rows
    x0 = [1.1, 2.2, 3.3, 4.4, 5.5]
    f = models.mixed_trig_log
    cases = [((1,), fd.df1), ((3, 3), fd.df2), ((5, 4, 2), fd.df3),
             ((5, 3, 4, 1), fd.df4)]
    for indices, dfn in cases:
        dual = float(dr.partial(f, x0, list(indices)))
        orders = fd.setvn(len(indices), 8)
        got = dfn(f, DDVector(np.array(x0)), *indices, 1e-5, *orders)
        assert abs(float(got) - dual) <= 1e-9


def test_dd_point_aloft():
    # dd evaluation point keeps node spacing exact at dd precision
    f = lambda q: q * q * q
    got = fd.deriv(f, DDReal(1.25), 1e-5, 3)
    assert isinstance(got, DDReal)
    assert abs(float(got) - 3 * 1.25 ** 2) < 1e-12


# -- setvn -------------------------------------------------------------------------

def test_setvn_reference_cases():
    assert fd.setvn(4, 8) == [2, 3, 3, 3]
    assert fd.setvn(1, 6) == [6]
    assert fd.setvn(2, 4) == [2, 3]
    assert fd.setvn(4, 4) == [1, 2, 2, 2]


def test_setvn_postconditions():
    for r in range(1, 5):
        for oa in range(1, 13):
            ns = fd.setvn(r, oa)
            assert len(ns) == r
            assert sum(ns) == oa + r - 1
            assert ns == sorted(ns)
            assert all(n >= 1 for n in ns)


def test_setvn_validation():
    with pytest.raises(ValueError):
        fd.setvn(0, 4)
    with pytest.raises(ValueError):
        fd.setvn(5, 4)
    with pytest.raises(ValueError):
        fd.setvn(2, 0)


# -- scheme and contraction ---------------------------------------------------------

def test_fd_scheme_validation():
    with pytest.raises(ValueError):
        fd.FdScheme(h=0.0)
    with pytest.raises(ValueError):
        fd.FdScheme(orders=())
    with pytest.raises(ValueError):
        fd.FdScheme(orders=(1, 0, 1, 1))
    with pytest.raises(ValueError):
        fd.FdScheme(precision="f32")
    s = fd.FdScheme.of_order(4, 8, h=1e-4, precision="extended")
    assert s.orders == (2, 3, 3, 3) and s.h == 1e-4


def test_directional4_fd_quartic_monomial():
    f = lambda v: v[0] * v[1] * v[2] * v[3]
    e = [list(row) for row in np.eye(4)]
    q = [0.9, 1.2, -0.4, 0.7]
    ext = fd.directional4_fd(f, q, *e, fd.FdScheme.of_order(4, 4, 1e-5,
                                                            "extended"))
    assert float(ext) == pytest.approx(1.0, abs=1e-9)
    f64 = fd.directional4_fd(f, q, *e, fd.FdScheme.of_order(4, 4, 0.05, "f64"))
    assert f64 == pytest.approx(1.0, abs=1e-6)


def test_directional4_fd_zero_direction():
    f = lambda v: v[0] * v[1] * v[2] * v[3]
    q = [0.9, 1.2, -0.4, 0.7]
    ones = [1.0] * 4
    zero = [0.0] * 4
    got = fd.directional4_fd(f, q, ones, ones, ones, zero,
                             fd.FdScheme.of_order(4, 2, 0.05, "f64"))
    assert got == 0.0


def test_directional4_fd_guards():
    f = models.inverted_cosine_wave
    scheme = fd.FdScheme.of_order(4, 4, 1e-5, "f64")
    q = list(np.linspace(0.1, 1.0, 30))
    ones = [1.0] * 30
    with pytest.raises(DimensionCapExceeded):
        fd.directional4_fd(f, q, ones, ones, ones, ones, scheme)
    with pytest.raises(DimensionMismatch):
        fd.directional4_fd(f, [0.1, 0.2], [1.0], [1.0, 0.0], [1.0, 0.0],
                           [1.0, 0.0], scheme)


def test_directional4_fd_table_reference():
    q, x, y, z, w = models.table1_vectors(5)
    scheme = fd.FdScheme.of_order(4, 4, 1e-5, "extended")
    got = fd.directional4_fd(models.inverted_cosine_wave_dd, q, x, y, z, w,
                             scheme)
    assert float(got) == pytest.approx(3581.554, abs=0.2)


def test_fast_icwf_matches_generic():
    rng = np.random.default_rng(9)
    for m in (2, 5, 11):
        q = rng.uniform(-2.0, 2.0, m)
        v = DDVector(q)
        fast = models.inverted_cosine_wave_dd(v)
        generic = models.inverted_cosine_wave([v[i] for i in range(m)])
        assert float(fast - generic) == 0.0
        assert float(fast) == pytest.approx(
            models.inverted_cosine_wave(q), rel=1e-13)
