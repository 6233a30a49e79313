import math

import pytest

from besseldist.errors import DomainError, QuadratureError
from besseldist.quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate


def test_polynomial_exact():
    value, err = integrate(lambda x: 3 * x * x, 0.0, 2.0)
    assert value == pytest.approx(8.0, rel=1e-15)
    assert err < 1e-12


def test_gaussian_over_the_line():
    value, _ = integrate(lambda x: math.exp(-x * x), -math.inf, math.inf)
    assert value == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_half_lines():
    left, _ = integrate(lambda x: math.exp(x), -math.inf, 0.0)
    right, _ = integrate(lambda x: math.exp(-2 * x), 1.0, math.inf)
    assert left == pytest.approx(1.0, rel=1e-12)
    assert right == pytest.approx(math.exp(-2) / 2, rel=1e-12)


def test_inverse_sqrt_endpoint_singularity():
    value, _ = integrate(lambda x: 1 / math.sqrt(x), 0.0, 1.0)
    assert value == pytest.approx(2.0, rel=1e-10)


def test_log_singularity_needs_a_break_point():
    cfg = QuadratureConfig(singularity_points=(0.0,))
    value, _ = integrate(lambda x: -math.log(abs(x)), -1.0, 1.0, cfg)
    assert value == pytest.approx(2.0, rel=1e-10)
    value, _ = integrate(lambda x: -math.log(abs(x)), -1.0, 1.0, points=(0.0,))
    assert value == pytest.approx(2.0, rel=1e-10)


def test_kink_at_break_point():
    value, _ = integrate(abs, -1.0, 3.0, points=(0.0,))
    assert value == pytest.approx(5.0, rel=1e-14)


def test_reversed_limits_and_empty_range():
    value, _ = integrate(math.sin, math.pi, 0.0)
    assert value == pytest.approx(-2.0, rel=1e-13)
    assert integrate(math.sin, 1.0, 1.0) == (0.0, 0.0)


def test_exhausted_subdivisions_raise_with_estimate():
    cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=10)
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: math.sin(1 / x), 1e-6, 1.0, cfg)
    assert math.isfinite(info.value.estimate)
    assert info.value.error > 0


def test_config_validation():
    assert DEFAULT_CONFIG.rel_tol == 1e-11
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_subdivisions=2)
    assert QuadratureConfig(singularity_points=[1.0]).singularity_points == (1.0,)
