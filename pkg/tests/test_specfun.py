import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besseldist import specfun
from besseldist.errors import DomainError

mp.mp.dps = 20


def k_nu_integral(nu, x):
    # K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt; the integrand is
    # below e^-800 past t_max
    t_max = mp.acosh(800 / x + 1)
    return float(mp.quad(lambda t: mp.exp(-x * mp.cosh(t)) * mp.cosh(nu * t), mp.linspace(0, t_max, 32)))


def k0_tail_integral(x):
    if x >= 30:
        # direct quadrature of K0 is cheap once the argument is large
        return float(mp.quad(lambda t: mp.besselk(0, t), mp.linspace(x, x + 70, 60)))
    # int_x^inf K0 = int_0^inf exp(-x cosh u) / cosh u du
    u_max = mp.acosh(800 / x + 1)
    return float(mp.quad(lambda u: mp.exp(-x * mp.cosh(u)) / mp.cosh(u), mp.linspace(0, u_max, 32)))


def struve_integral(nu, x):
    # L_nu(x) = 2 (x/2)^nu / (sqrt(pi) Gamma(nu + 1/2)) int_0^{pi/2} sinh(x cos t) sin(t)^{2 nu} dt
    pref = 2 * (mp.mpf(x) / 2) ** nu / (mp.sqrt(mp.pi) * mp.gamma(nu + 0.5))
    return float(pref * mp.quad(lambda t: mp.sinh(x * mp.cos(t)) * mp.sin(t) ** (2 * nu), [0, mp.pi / 2]))


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("x", [1.0, 10.0, 1e-3, 0.5, 2.0, 2.0000001, 3.7, 25.0])
def test_k0_matches_integral_representation(x):
    assert rel(specfun.bessel_k0(x), k_nu_integral(0, x)) < 1e-10


@pytest.mark.parametrize("x", [1.0, 5.0, 0.01, 2.0, 40.0])
def test_k1_matches_integral_representation(x):
    assert rel(specfun.bessel_k1(x), k_nu_integral(1, x)) < 1e-10


@pytest.mark.parametrize("x", [1e-8, 1e-5, 0.1, 1.9, 2.1, 7.0, 50.0, 300.0, 699.0])
def test_k0_k1_against_mpmath_besselk(x):
    assert rel(specfun.bessel_k0(x), float(mp.besselk(0, x))) < 1e-12
    assert rel(specfun.bessel_k1(x), float(mp.besselk(1, x))) < 1e-12


def test_k0_decreases_towards_origin_blowup():
    assert specfun.bessel_k0(1e-6) > specfun.bessel_k0(1e-3) > specfun.bessel_k0(1.0)


def test_k0_underflows_to_zero():
    assert specfun.bessel_k0(800.0) == 0.0


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_k0_k1_reject_nonpositive(bad):
    with pytest.raises(DomainError):
        specfun.bessel_k0(bad)
    with pytest.raises(DomainError):
        specfun.bessel_k1(bad)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=600.0))
def test_k1_exceeds_k0(x):
    k0, k1 = specfun.bessel_k01(x)
    assert k1 > k0


def test_wronskian_by_finite_differences():
    # I0 K1 + I1 K0 = 1/x; with I from mpmath and K from us
    x = 5.0
    i0, i1 = float(mp.besseli(0, x)), float(mp.besseli(1, x))
    k0, k1 = specfun.bessel_k01(x)
    assert rel(i0 * k1 + i1 * k0, 1.0 / x) < 1e-12
    # K0' = -K1 checked by a central difference
    h = 1e-5
    dk0 = (specfun.bessel_k0(x + h) - specfun.bessel_k0(x - h)) / (2 * h)
    assert rel(-dk0, k1) < 1e-8


def test_half_order_special_cases():
    x = 0.83
    assert specfun.bessel_k_half(0, x) == math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    # K_{3/2}(x) = sqrt(pi/2x) e^-x (1 + 1/x)
    expected = math.sqrt(math.pi / 4) * math.exp(-2) * (1 + 1 / 2)
    assert rel(specfun.bessel_k_half(1, 2.0), expected) < 1e-15


@pytest.mark.parametrize("r,x", [(3, 1.7), (0, 0.2), (5, 9.0), (10, 3.0), (20, 15.0)])
def test_half_order_against_integral(r, x):
    assert rel(specfun.bessel_k_half(r, x), k_nu_integral(r + 0.5, x)) < 1e-10


def test_half_order_cap():
    with pytest.raises(DomainError):
        specfun.bessel_k_half(21, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_k_half(1, 0.0)


@pytest.mark.parametrize("nu", [0, 1, 2, 3, 0.5, 2.5, 6])
def test_integer_and_half_orders(nu):
    x = 2.7
    assert rel(specfun.bessel_k_int_plus_half(nu, x), float(mp.besselk(nu, x))) < 1e-12


def test_struve_values():
    assert specfun.struve_l0(0.0) == 0.0
    assert specfun.struve_l_minus1(0.0) == 2 / math.pi
    for x in (1.0, 10.0, 0.3):
        assert rel(specfun.struve_l0(x), struve_integral(0, x)) < 1e-10
    # L_{-1} = L_1 + 2/pi for the integral form, which requires nu > -1/2
    for x in (1.0, 4.0):
        assert rel(specfun.struve_l_minus1(x), struve_integral(1, x) + 2 / math.pi) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=12.0))
def test_struve_l_minus1_above_its_origin_value(x):
    value = specfun.struve_l_minus1(x)
    assert value >= 2 / math.pi
    if x > 1e-6:
        assert value > 2 / math.pi


def test_struve_rejects_negative():
    with pytest.raises(DomainError):
        specfun.struve_l0(-1.0)
    with pytest.raises(DomainError):
        specfun.struve_l_minus1(-1.0)


def test_k0_tail_values():
    assert specfun.k0_tail(0.0) == math.pi / 2
    assert 2 * specfun.k0_tail(0.0) / math.pi == 1.0
    assert rel(specfun.k0_tail(1.0), k0_tail_integral(1.0)) < 1e-10


@pytest.mark.parametrize("x", [0.05, 3.0, 11.9, 12.1, 20.0, 30.0, 100.0, 650.0])
def test_k0_tail_against_mpmath(x):
    assert rel(specfun.k0_tail(x), k0_tail_integral(x)) < 1e-9


@pytest.mark.parametrize("x", [5e-324, 1e-310, 1e-300, 1e-12, 9e-9, 1.1e-8])
def test_k0_tail_near_zero(x):
    # K1 overflows below ~1e-308, so the tail must not go through it
    ref = mp.pi / 2 - mp.quad(lambda t: mp.besselk(0, t), [0, x])
    assert rel(specfun.k0_tail(x), ref) < 1e-14
    assert math.isfinite(specfun.bessel_k0(x))


def test_k0_tail_at_30_matches_asymptotics():
    value = specfun.k0_tail(30.0)
    assert 0 < value < 1e-12
    leading = math.sqrt(math.pi / 60.0) * math.exp(-30.0)
    # the leading term alone is off by the 5/(8x) correction
    assert rel(value, leading * (1 - 5 / 240)) < 2e-3
    assert rel(value, specfun.k0_tail_asymptotic(30.0)) < 1e-11


@pytest.mark.parametrize("x", [10.8, 12.0, 13.2])
def test_tail_branches_agree_near_switch(x):
    struve = specfun._k0_tail_struve(x)
    quad = specfun._k0_tail_trapezoid(x)
    assert rel(struve, quad) < 1e-9


def test_k0_tail_and_k0_strictly_decrease():
    xs = [0.01 * 1.1**k for k in range(90)]
    tails = [specfun.k0_tail(x) for x in xs]
    k0s = [specfun.bessel_k0(x) for x in xs]
    assert all(a > b for a, b in zip(tails, tails[1:]))
    assert all(a > b for a, b in zip(k0s, k0s[1:]))


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.05, max_value=40.0))
def test_k0_tail_derivative_is_minus_k0(x):
    h = 1e-3 * min(x, 1.0)
    slope = (specfun.k0_tail(x - h) - specfun.k0_tail(x + h)) / (2 * h)
    assert rel(slope, specfun.bessel_k0(x)) < 1e-6


def test_erf():
    assert specfun.erf(0.0) == 0.0
    assert abs(specfun.erf(6.0) - 1.0) < 1e-15
    assert specfun.erf(-0.7) == -specfun.erf(0.7)
    exact = float(2 / mp.sqrt(mp.pi) * mp.quad(lambda t: mp.exp(-t * t), [0, 1]))
    assert abs(specfun.erf(1.0) - exact) < 1e-12


def test_perturbation_hook_is_scoped():
    base = specfun.bessel_k0(1.0)
    with specfun.perturbed_k0(1e-3):
        assert rel(specfun.bessel_k0(1.0), base * 1.001) < 1e-15
    assert specfun.bessel_k0(1.0) == base


def test_accuracy_config_validation():
    assert specfun.DEFAULT_ACCURACY.rel_tol == 1e-12
    with pytest.raises(DomainError):
        specfun.EvalAccuracy(rel_tol=0.0)
    with pytest.raises(DomainError):
        specfun.EvalAccuracy(abs_tol=-1.0)


def test_deterministic():
    assert specfun.bessel_k0(3.3) == specfun.bessel_k0(3.3)
    assert specfun.k0_tail(7.1) == specfun.k0_tail(7.1)
