import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import jetkin as jk
from jetkin import Jet4, constant, inverse, part, powf, powi, variable
from jetkin.ddouble import DDReal
from jetkin.errors import DomainError, IndexOutOfRange, PureDualNotInvertible

coeff = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
jets = st.tuples(coeff, coeff, coeff, coeff, coeff).map(Jet4)


def close(a, b, rtol, scale=1.0):
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b), scale)


def jet_close(u, v, rtol, scale=1.0):
    return all(close(a, b, rtol, scale) for a, b in zip(u.a, v.a))


def coeff_mag(u):
    return sum(abs(c) for c in u.a)


# -- constructors and parts ----------------------------------------------------

def test_variable_and_constant():
    assert variable(0.0).a == (0.0, 1.0, 0.0, 0.0, 0.0)
    assert variable(2.5).a == (2.5, 1.0, 0.0, 0.0, 0.0)
    assert variable(complex(1, 2)).a == (complex(1, 2), 1.0, 0.0, 0.0, 0.0)
    assert constant(7.0).a == (7.0, 0.0, 0.0, 0.0, 0.0)
    prod = constant(3.0) * constant(4.0)
    assert prod.a == (12.0, 0.0, 0.0, 0.0, 0.0)
    assert jk.sin(constant(0.0)).a == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_part():
    assert part(variable(5.0), 0) == 5.0
    assert part(variable(5.0), 1) == 1.0
    assert part(variable(2.0) * variable(2.0), 2) == 2.0
    with pytest.raises(IndexOutOfRange):
        part(variable(1.0), 5)
    with pytest.raises(IndexOutOfRange):
        part(variable(1.0), -1)


def test_bad_coefficient_count():
    with pytest.raises(ValueError):
        Jet4((1.0, 2.0))


# -- multiplication -------------------------------------------------------------

def test_mul_epsilon_square():
    one_eps = Jet4((1.0, 1.0, 0.0, 0.0, 0.0))
    assert (one_eps * one_eps).a == (1.0, 2.0, 2.0, 0.0, 0.0)


def test_mul_fourth_power():
    # derivatives of q^4 at q = 2: 16, 32, 48, 48, 24
    u = variable(2.0)
    assert (u * u * u * u).a == (16.0, 32.0, 48.0, 48.0, 24.0)


def test_mul_fifth_power_third_part():
    # d^3/dq^3 q^5 = 60 q^2 at q = 1
    u = variable(1.0)
    p5 = u * u * u * u * u
    assert part(p5, 3) == pytest.approx(60.0, rel=1e-14)


def test_truncation_drops_high_orders():
    eps4 = Jet4((0.0, 0.0, 0.0, 0.0, 1.0))
    eps1 = Jet4((0.0, 1.0, 0.0, 0.0, 0.0))
    assert (eps4 * eps1).a == (0.0, 0.0, 0.0, 0.0, 0.0)
    assert len((eps4 * eps4).a) == 5


def test_linear_ops():
    a = Jet4((1.0, 2.0, 0.0, 0.0, 0.0))
    b = Jet4((3.0, 4.0, 0.0, 0.0, 0.0))
    assert (a + b).a == (4.0, 6.0, 0.0, 0.0, 0.0)
    assert (Jet4((1.0,) * 5) * 2.0).a == (2.0,) * 5
    assert (a - a).a == (0.0,) * 5
    assert (-a).a == (-1.0, -2.0, 0.0, 0.0, 0.0)
    assert (1.0 + a).a == (2.0, 2.0, 0.0, 0.0, 0.0)
    assert (1.0 - a).a == (0.0, -2.0, 0.0, 0.0, 0.0)
    assert (a / 2.0).a == (0.5, 1.0, 0.0, 0.0, 0.0)


@given(jets, jets)
@settings(max_examples=200, deadline=None)
def test_leibniz_convolution_exact(u, v):
    u0, u1, u2, u3, u4 = u.a
    v0, v1, v2, v3, v4 = v.a
    expected = (
        u0 * v0,
        u0 * v1 + u1 * v0,
        u0 * v2 + 2 * (u1 * v1) + u2 * v0,
        u0 * v3 + 3 * (u1 * v2) + 3 * (u2 * v1) + u3 * v0,
        u0 * v4 + 4 * (u1 * v3) + 6 * (u2 * v2) + 4 * (u3 * v1) + u4 * v0,
    )
    assert (u * v).a == expected


@given(jets, jets, jets)
@settings(max_examples=200, deadline=None)
def test_ring_axioms(u, v, w):
    scale = coeff_mag(u) * coeff_mag(v) * coeff_mag(w) + 1.0
    assert jet_close(u * v, v * u, 1e-14, scale)  # same terms, reassociated
    assert jet_close(u + v, v + u, 0.0)
    assert jet_close((u * v) * w, u * (v * w), 1e-13, scale)
    assert jet_close(u * (v + w), u * v + u * w, 1e-13, scale)
    assert jet_close((u + v) + w, u + (v + w), 1e-13, scale)


# -- inverse and division --------------------------------------------------------

def test_inverse_examples():
    assert inverse(variable(2.0)).a == (0.5, -0.25, 0.25, -0.375, 0.75)
    assert inverse(constant(4.0)).a == (0.25, 0.0, 0.0, 0.0, 0.0)
    with pytest.raises(PureDualNotInvertible):
        inverse(Jet4((0.0, 1.0, 0.0, 0.0, 0.0)))
    with pytest.raises(PureDualNotInvertible):
        inverse(Jet4((1e-30, 1.0, 0.0, 0.0, 0.0)), tol=1e-12)


@given(jets)
@settings(max_examples=150, deadline=None)
def test_inverse_roundtrip(u):
    if abs(u.a[0]) < 0.1:
        u = u + 1.5
    w = u * inverse(u)
    cond = (coeff_mag(u) / abs(u.a[0])) ** 4  # conditioning of jet inversion
    assert jet_close(w, constant(1.0), 1e-13, cond)


def test_division():
    u = Jet4((2.0, 3.0, -1.0, 0.5, 2.0))
    v = Jet4((1.5, -2.0, 0.7, 1.1, -0.3))
    q = u / v
    assert jet_close(q * v, u, 1e-13, 100.0)
    assert jet_close(2.0 / v, constant(2.0) / v, 1e-15)


# -- lift and elementary functions ----------------------------------------------

def test_lift_identity():
    u = Jet4((1.3, 0.5, -2.0, 0.25, 1.0))
    assert jk.lift_univariate((u.a[0], 1.0, 0.0, 0.0, 0.0), u).a == u.a


def test_lift_exp_at_zero():
    assert jk.exp(variable(0.0)).a == (1.0, 1.0, 1.0, 1.0, 1.0)


def test_lift_sin_at_zero():
    assert jk.sin(variable(0.0)).a == (0.0, 1.0, 0.0, -1.0, 0.0)


def test_sqrt_at_four():
    assert jk.sqrt(variable(4.0)).a == (
        2.0, 0.25, -0.03125, 0.01171875, -0.00732421875)


def test_exp_log_roundtrip():
    u = jk.exp(jk.log(variable(3.0)))
    assert jet_close(u, variable(3.0), 1e-14)


def test_pythagorean_identity():
    for x in (0.0, 0.5, 1.9, -4.2, 11.0):
        u = variable(x)
        w = jk.sin(u) * jk.sin(u) + jk.cos(u) * jk.cos(u)
        assert jet_close(w, constant(1.0), 1e-14)


def test_tan_matches_sin_over_cos():
    for x in (0.3, -1.1, 2.5):
        u = variable(x)
        assert jet_close(jk.tan(u), jk.sin(u) / jk.cos(u), 1e-12, 100.0)


def test_sinh_cosh_match_exp_combinations():
    for x in (0.0, 0.7, -2.2):
        u = variable(x)
        e, ei = jk.exp(u), jk.exp(-u)
        assert jet_close(jk.sinh(u), (e - ei) / 2.0, 1e-13, 10.0)
        assert jet_close(jk.cosh(u), (e + ei) / 2.0, 1e-13, 10.0)


def test_polynomial_derivative_exactness():
    rng = np.random.default_rng(11)
    fact = [1.0, 1.0, 2.0, 6.0, 24.0]
    for _ in range(60):
        coeffs = rng.uniform(-3, 3, size=int(rng.integers(2, 10)))
        x = float(rng.uniform(-2, 2))
        p = np.poly1d(coeffs)
        jet = constant(0.0)
        for c in coeffs:  # Horner in jet arithmetic
            jet = jet * variable(x) + float(c)
        for k in range(5):
            exact = float(np.polyder(p, k)(x)) if k <= p.order else 0.0
            got = part(jet, k)
            scale = float(np.abs(coeffs).sum()) * fact[k] * 2.0 ** 8
            assert abs(got - exact) <= 1e-12 * max(1.0, abs(exact), scale * 1e-3)


def test_chain_rule_first_order():
    pairs = [
        (jk.exp, math.exp, jk.sin, math.sin, math.cos),
        (jk.sqrt, math.sqrt, jk.cosh, math.cosh, math.sinh),
        (jk.log, math.log, jk.cosh, math.cosh, math.sinh),
    ]
    for x in (0.4, 1.2, -0.9):
        for g, gs, f, fs, fprime in pairs:
            got = part(g(f(variable(x))), 1)
            h = 1e-8  # derivative of the outer scalar function
            gprime = (gs(fs(x) + h) - gs(fs(x) - h)) / (2 * h)
            assert got == pytest.approx(gprime * fprime(x), rel=1e-6)
            # exact comparison against the analytic outer derivative
    u = jk.exp(jk.sin(variable(0.8)))
    assert part(u, 1) == pytest.approx(
        math.exp(math.sin(0.8)) * math.cos(0.8), rel=1e-12)


def test_powi_and_powf():
    u = Jet4((1.7, 0.4, -0.2, 0.9, 0.1))
    assert jet_close(powi(u, 5), u * u * u * u * u, 1e-13, 50.0)
    assert powi(u, 0).a == (1.0, 0.0, 0.0, 0.0, 0.0)
    assert jet_close(powi(u, -2), inverse(u) * inverse(u), 1e-12, 10.0)
    assert jet_close(powf(variable(4.0), 0.5), jk.sqrt(variable(4.0)), 1e-13)
    assert (variable(2.0) ** 3).a == (8.0, 12.0, 12.0, 6.0, 0.0)
    v = variable(3.0) ** 1.5
    assert part(v, 1) == pytest.approx(1.5 * 3.0 ** 0.5, rel=1e-14)


def test_domain_errors():
    with pytest.raises(DomainError):
        jk.log(variable(-1.0))
    with pytest.raises(DomainError):
        jk.log(variable(0.0))
    with pytest.raises(DomainError):
        jk.sqrt(variable(-4.0))
    with pytest.raises(DomainError):
        powf(variable(-2.0), 0.5)
    with pytest.raises(DomainError):
        jk.log(variable(complex(0.0, 0.0)))


def test_absolute_sign_rule():
    u = Jet4((-2.0, 1.0, 0.5, 0.0, 0.0))
    assert jk.absolute(u).a == (2.0, -1.0, -0.5, 0.0, 0.0)
    v = Jet4((2.0, 1.0, 0.0, 0.0, 0.0))
    assert jk.absolute(v) is v
    assert jk.absolute(-3.5) == 3.5
    assert jk.absolute(DDReal(-2.0)) == DDReal(2.0)


def test_ordering_uses_real_parts():
    assert variable(1.0) < variable(2.0)
    assert constant(3.0) >= 3.0
    assert Jet4((1.0, 9.0, 9.0, 9.0, 9.0)) <= Jet4((1.0, 0.0, 0.0, 0.0, 0.0))


# -- scalar genericity -----------------------------------------------------------

def _pipeline(var):
    w = jk.sin(var) * jk.cos(var) + jk.exp(var) / (var * var + 2.0)
    w = jk.sqrt(w * w + 1.5) + jk.log(var * var + 0.5) - jk.tan(var)
    return w + jk.sinh(var * 0.1) + jk.cosh(var * 0.05) + powf(var * var + 0.25, 0.7)


@pytest.mark.parametrize("x", [0.7, 1.3, 2.9, -0.4])
def test_complex_real_bit_consistency(x):
    r = _pipeline(variable(x))
    c = _pipeline(variable(complex(x, 0.0)))
    for rr, cc in zip(r.a, c.a):
        assert complex(cc).imag == 0.0
        assert complex(cc).real == rr  # bit-for-bit


@pytest.mark.parametrize("x", [0.7, 1.3, 2.9, -0.4])
def test_double_double_jets_match_float_jets(x):
    r = _pipeline(variable(x))
    d = _pipeline(variable(DDReal(x)))
    for rr, ddv in zip(r.a, d.a):
        assert float(ddv) == pytest.approx(rr, rel=1e-13, abs=1e-13)


def test_complex_derivatives():
    z = complex(0.9, -0.4)
    u = jk.exp(variable(z))
    e = cmath.exp(z)
    for k in range(5):
        assert part(u, k) == pytest.approx(e, rel=1e-14)


def test_immutability():
    u = variable(1.0)
    with pytest.raises(AttributeError):
        u.a = (0.0,) * 5
