"""Brute-force numerical routes used to validate the closed forms in :mod:`dist`.

Nothing here calls a closed-form density, CDF or special function of the
family being checked; each value comes from a representation of the law
(compounding integral, product of variables, ch.f. inversion, sample means)
pushed through :func:`besseldist.quadrature.integrate`.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SingularityError
from .quadrature import QuadratureConfig, integrate

ORACLE_CONFIG = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14, max_subdivisions=4000, singularity_points=(0.0,))

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def product_density(f_x, f_y, z: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """Density of ``X * Y`` for independent ``X``, ``Y`` at ``z``.

    ``int f_X(x) f_Y(z/x) dx/|x|``, split at ``x = 0``; on each half
    ``x = +-e^v`` turns the ``dx/|x|`` weight into ``dv``.
    """

    def integrand(v):
        if abs(v) > 700.0:
            return 0.0
        x = math.exp(v)
        w = z / x
        return f_x(x) * f_y(w) + f_x(-x) * f_y(-w)

    value, _ = integrate(integrand, -math.inf, math.inf, _no_points(cfg))
    return value


def compound_density(sigma: float, y: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """Bessel density from its compounding integral.

    ``(1/(pi sigma)) int_0^inf exp(-y^2/(2x^2)) exp(-x^2/(2 sigma^2)) dx/x`` with
    ``x = exp(u)``, centred on the integrand's peak ``x^2 = |y| sigma``.
    """
    if y == 0:
        raise SingularityError("compounding integral diverges at y = 0")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    y2 = y * y
    centre = 0.25 * math.log(y2 * sigma * sigma)

    def integrand(v):
        w = 2.0 * (v + centre)
        if abs(w) > 700.0:
            return 0.0
        x2 = math.exp(w)
        return math.exp(-0.5 * y2 / x2 - 0.5 * x2 / (sigma * sigma))

    value, _ = integrate(integrand, -math.inf, math.inf, _no_points(cfg))
    return value / (math.pi * sigma)


def compound_normal_density(variance_pdf, y: float, scale: float = 1.0, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """Density at ``y`` of ``scale * sqrt(U) * Z`` given the density of ``U > 0``.

    ``int_0^inf phi(y / (scale sqrt u)) / (scale sqrt u) f_U(u) du``, taken in
    ``u = exp(v)``.
    """
    y2 = (y / scale) ** 2

    def integrand(v):
        if abs(v) > 700.0:
            return 0.0
        u = math.exp(v)
        f_u = variance_pdf(u)
        if f_u == 0.0:
            return 0.0
        return math.exp(-0.5 * y2 / u - 0.5 * v - _LOG_SQRT_2PI) * f_u * u

    value, _ = integrate(integrand, -math.inf, math.inf, _no_points(cfg))
    return value / scale


def gamma_pdf(shape: float, rate: float = 1.0):
    """Density of ``gamma(rate, shape)`` as a callable (rate/shape as in the text)."""
    log_norm = shape * math.log(rate) - math.lgamma(shape)

    def f(u):
        if u <= 0:
            return 0.0
        return math.exp(log_norm + (shape - 1.0) * math.log(u) - rate * u)

    return f


def gal_density(sigma: float, tau: float, y: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """Symmetric GAL density for any ``tau > 0`` via ``sigma sqrt(W) Z``, ``W ~ gamma(1, tau)``."""
    if tau <= 0.5 and y == 0:
        raise SingularityError("GAL density is unbounded at 0 for tau <= 1/2")
    return compound_normal_density(gamma_pdf(tau), y, sigma, cfg)


def density_by_chf_inversion(chf, y: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """``(1/pi) int_0^inf chf(t) cos(t y) dt`` for a real, even, fast-decaying ch.f."""
    value, _ = integrate(lambda t: chf(t) * math.cos(t * y), 0.0, math.inf, _no_points(cfg))
    return value / math.pi


def cdf_by_quadrature(pdf, y: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """``int_{-inf}^y pdf``, split at ``cfg.singularity_points``."""
    value, _ = integrate(pdf, -math.inf, y, cfg)
    return value


def moment_by_quadrature(pdf, k: int, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """``int x^k pdf(x) dx`` over the real line."""
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    value, _ = integrate(lambda x: x**k * pdf(x), -math.inf, math.inf, cfg)
    return value


class ChfEstimate(NamedTuple):
    estimate: float
    std_error: float
    sin_estimate: float
    sin_std_error: float


def chf_by_monte_carlo(batch, t: float) -> ChfEstimate:
    """Sample mean of ``cos(t Y)`` (and of ``sin(t Y)``, which should vanish)."""
    values = np.asarray(getattr(batch, "values", batch), dtype=float)
    if values.size == 0:
        raise DomainError("empty batch")
    n = values.size
    ty = t * values
    c = np.cos(ty)
    s = np.sin(ty)
    denom = math.sqrt(n)
    c_se = float(c.std(ddof=1)) / denom if n > 1 else 0.0
    s_se = float(s.std(ddof=1)) / denom if n > 1 else 0.0
    return ChfEstimate(float(c.mean()), c_se, float(s.mean()), s_se)


def _no_points(cfg):
    if not cfg.singularity_points:
        return cfg
    return QuadratureConfig(cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, ())


def martin_maas_density(s: float, y: float, cfg: QuadratureConfig = ORACLE_CONFIG) -> float:
    """Martin-Maas density as a mixture of exponentials.

    ``(1/(2 pi sqrt s)) int_0^inf exp(-|y| (u + 1/s)) u^{-1/2} du``; with
    ``u = v^2`` the integrand is a smooth Gaussian in ``v``.
    """
    if y == 0:
        raise SingularityError("Martin-Maas density is unbounded at 0")
    if not s > 0:
        raise DomainError("s must be positive")
    a = abs(y)
    value, _ = integrate(lambda v: math.exp(-a * (v * v + 1.0 / s)), 0.0, math.inf, _no_points(cfg))
    return value / (math.pi * math.sqrt(s))
