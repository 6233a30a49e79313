"""Real-valued special functions used by the closed-form distribution formulas.

Everything here is scalar and built on :mod:`math` only:

* ``bessel_k0`` / ``bessel_k1``: ascending series with logarithmic term for
  ``x <= 2``; Steed's continued fraction (Temme's CF2) for ``x > 2``.
* ``bessel_k_half``: the finite elementary sum for ``K_{r+1/2}``.
* ``struve_l0`` / ``struve_l_minus1``: ascending power series.
* ``k0_tail``: the integral of ``K0`` over ``[x, inf)``. Struve closed form
  up to ``K0_TAIL_SWITCH``; past it, a trapezoid rule on the ``cosh``
  integral representation (no cancellation against ``pi/2``).
"""
from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061
_LN2 = math.log(2.0)
K0_TAIL_SWITCH = 12.0
MAX_HALF_ORDER = 20

_MAXIT = 10_000


@dataclass(frozen=True)
class EvalAccuracy:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if not self.abs_tol >= 0:
            raise DomainError("abs_tol must be nonnegative")


DEFAULT_ACCURACY = EvalAccuracy()

# Relative perturbation applied to K0; only the self-check sensitivity test sets it.
_k0_perturbation = contextvars.ContextVar("k0_perturbation", default=0.0)


@contextlib.contextmanager
def perturbed_k0(rel: float):
    """Temporarily multiply every ``bessel_k0`` result by ``1 + rel``."""
    token = _k0_perturbation.set(rel)
    try:
        yield
    finally:
        _k0_perturbation.reset(token)


def _check_positive(x, name="x"):
    if math.isnan(x) or x <= 0:
        raise DomainError(f"{name} must be > 0, got {x!r}")


def _check_nonnegative(x, name="x"):
    if math.isnan(x) or x < 0:
        raise DomainError(f"{name} must be >= 0, got {x!r}")


def _k01_series(x):
    q = 0.25 * x * x
    log_half = math.log(x) - _LN2  # 0.5 * x underflows for the smallest subnormals
    # K0
    term = 1.0
    harmonic = 0.0
    i0 = 1.0
    tail0 = 0.0
    # K1
    u = 1.0
    psi_k1 = -EULER_GAMMA  # psi(k + 1)
    psi_k2 = 1.0 - EULER_GAMMA  # psi(k + 2)
    s1 = u * (log_half - 0.5 * (psi_k1 + psi_k2))
    for k in range(1, _MAXIT):
        term *= q / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail0 += term * harmonic
        u *= q / (k * (k + 1))
        psi_k1 = psi_k2
        psi_k2 += 1.0 / (k + 1)
        s1 += u * (log_half - 0.5 * (psi_k1 + psi_k2))
        if term < 1e-17 * i0 and u < 1e-17:
            break
    k0 = -(log_half + EULER_GAMMA) * i0 + tail0
    k1 = 1.0 / x + 0.5 * x * s1
    return k0, k1


def _k01_scaled_cf2(x):
    """``(e^x K0(x), e^x K1(x))`` by Steed's method, valid for ``x >= 2``."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    h *= a1
    k0e = math.sqrt(math.pi / (2.0 * x)) / s
    k1e = k0e * (x + 0.5 - h) / x
    return k0e, k1e


def _k01(x):
    if x <= 2.0:
        k0, k1 = _k01_series(x)
    else:
        k0e, k1e = _k01_scaled_cf2(x)
        scale = math.exp(-x)
        k0, k1 = k0e * scale, k1e * scale
    rel = _k0_perturbation.get()
    if rel:
        k0 *= 1.0 + rel
    return k0, k1


def bessel_k0(x: float) -> float:
    """Modified Bessel function of the second kind, order 0, for ``x > 0``."""
    _check_positive(x)
    return _k01(x)[0]


def bessel_k1(x: float) -> float:
    """Modified Bessel function of the second kind, order 1, for ``x > 0``."""
    _check_positive(x)
    return _k01(x)[1]


def bessel_k01(x: float) -> tuple[float, float]:
    """``(K0(x), K1(x))`` from a single evaluation."""
    _check_positive(x)
    return _k01(x)


def bessel_k_half(r: int, x: float) -> float:
    """``K_{r+1/2}(x)`` as the finite sum of elementary terms.

    Factorials are exact doubles for ``r <= 20``; larger orders are rejected.
    """
    _check_positive(x)
    if r < 0 or int(r) != r:
        raise DomainError(f"r must be a nonnegative integer, got {r!r}")
    r = int(r)
    if r > MAX_HALF_ORDER:
        raise DomainError(f"r={r} exceeds the factorial cap {MAX_HALF_ORDER}")
    total = 0.0
    for k in range(r + 1):
        coef = math.factorial(r + k) / (math.factorial(r - k) * math.factorial(k))
        total += coef * (2.0 * x) ** (-k)
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def bessel_k_int_plus_half(nu: float, x: float) -> float:
    """``K_nu(x)`` for ``nu`` a nonnegative multiple of 1/2.

    Half-odd orders go through :func:`bessel_k_half`; integer orders use the
    upward recurrence from ``K0`` and ``K1``.
    """
    _check_positive(x)
    twice = 2.0 * nu
    if nu < 0 or twice != int(twice):
        raise DomainError(f"order must be a nonnegative multiple of 1/2, got {nu!r}")
    if int(twice) % 2 == 1:
        return bessel_k_half(int(nu - 0.5), x)
    n = int(nu)
    k_prev, k_cur = _k01(x)
    if n == 0:
        return k_prev
    for m in range(1, n):
        k_prev, k_cur = k_cur, k_prev + 2.0 * m / x * k_cur
    return k_cur


def struve_l0(x: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """Modified Struve function ``L0`` by its ascending series."""
    _check_nonnegative(x)
    if x == 0:
        return 0.0
    q = 0.25 * x * x
    term = 0.5 * x / (0.25 * math.pi)  # (x/2) / Gamma(3/2)^2
    total = term
    for k in range(_MAXIT):
        term *= q / ((k + 1.5) * (k + 1.5))
        total += term
        if term <= acc.rel_tol * 1e-4 * total + acc.abs_tol:
            break
    return total


def struve_l_minus1(x: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """Modified Struve function ``L_{-1}`` by its ascending series."""
    _check_nonnegative(x)
    term = 2.0 / math.pi  # 1 / (Gamma(1/2) Gamma(3/2))
    total = term
    if x == 0:
        return total
    q = 0.25 * x * x
    for k in range(_MAXIT):
        term *= q / ((k + 0.5) * (k + 1.5))
        total += term
        if term <= acc.rel_tol * 1e-4 * total + acc.abs_tol:
            break
    return total


def _k0_tail_struve(x):
    k0, k1 = _k01(x)
    return 0.5 * math.pi - 0.5 * math.pi * x * (k0 * struve_l_minus1(x) + k1 * struve_l0(x))


def _k0_tail_trapezoid(x):
    # int_x^inf K0 = int_0^inf exp(-x cosh u) / cosh u du; the integrand is
    # analytic in |Im u| < pi/2 and has Gaussian width ~1/sqrt(x); the step
    # must resolve both for the trapezoid rule to converge exponentially.
    h = min(0.125, 0.5 / math.sqrt(x))
    upper = math.acosh(1.0 + 760.0 / x)
    total = 0.5
    u = h
    while u <= upper:
        cu = math.cosh(u)
        total += math.exp(-x * (cu - 1.0)) / cu
        u += h
    return h * total * math.exp(-x)


def k0_tail_asymptotic(x: float) -> float:
    """Optimally truncated asymptotic expansion of ``int_x^inf K0``.

    ``sqrt(pi/2x) e^-x (1 - 5/(8x) + 129/(128x^2) - ...)``; the truncation
    error is roughly ``sqrt(2 pi x) e^-x`` relative, so this is only a
    cross-check for large ``x``.
    """
    _check_positive(x)
    # Coefficients c_k of sqrt(pi/2x) e^-x sum c_k x^-k follow from
    # differentiating against the K0 expansion coefficients a_k.
    a = 1.0
    c = 1.0
    total = 1.0
    power = 1.0
    last = math.inf
    for k in range(1, 200):
        a *= -((2 * k - 1) ** 2) / (8.0 * k)
        c = a - (k - 0.5) * c
        power /= x
        term = c * power
        if abs(term) >= last:
            break
        total += term
        last = abs(term)
        if last < 1e-17 * abs(total):
            break
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def k0_tail(x: float) -> float:
    """Integral of ``K0`` over ``[x, inf)``; equals ``pi/2`` at ``x = 0``."""
    _check_nonnegative(x)
    if x == 0:
        return 0.5 * math.pi
    if x < 1e-8:
        # int_0^x K0 = x (1 - gamma - ln(x/2)) + O(x^3 ln x); avoids K1 overflow
        return 0.5 * math.pi - x * (1.0 - EULER_GAMMA - (math.log(x) - _LN2))
    if x <= K0_TAIL_SWITCH:
        return _k0_tail_struve(x)
    return _k0_tail_trapezoid(x)


def erf(x: float) -> float:
    return math.erf(x)
