"""Distribution families: the zero-order Bessel law and its approximations.

Every family is an immutable dataclass exposing ``pdf``, ``cdf``, ``sf``,
``quantile``, ``moments``, ``chf`` and ``mgf``. Module-level functions of the
same names dispatch to the methods, so ``pdf(BesselK(2.0), 1.0)`` and
``BesselK(2.0).pdf(1.0)`` are interchangeable.

All families except a location-shifted :class:`ClassicalLaplace` are
symmetric about zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from statistics import NormalDist
from typing import Union

from . import specfun
from .errors import DomainError, SingularityError, UnsupportedClosedForm
from .quadrature import QuadratureConfig, integrate

MAX_MEAN_TERMS = specfun.MAX_HALF_ORDER + 1
_STD_NORMAL = NormalDist()
_SQRT2 = math.sqrt(2.0)


def _positive(value, name):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def _check_p(p):
    if not (0.0 < p < 1.0):
        raise DomainError(f"probability must lie in (0, 1), got {p!r}")


def _invert_cdf(cdf, p, mean, std):
    """Bracket by doubling around ``mean``, then bisect and finish with one secant step."""
    step = max(std, 1e-300)
    lo, hi = mean - step, mean + step
    while cdf(lo) > p:
        step *= 2.0
        lo = mean - step
    step = max(std, 1e-300)
    while cdf(hi) < p:
        step *= 2.0
        hi = mean + step
    f_lo, f_hi = cdf(lo) - p, cdf(hi) - p
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or hi - lo <= 4e-16 * max(1.0, abs(mid)):
            break
        f_mid = cdf(mid) - p
        if f_mid == 0.0:
            return mid
        if f_mid < 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    if f_hi == f_lo:
        return 0.5 * (lo + hi)
    return lo - f_lo * (hi - lo) / (f_hi - f_lo)


class _Symmetric:
    """Shared behaviour for zero-centred families."""

    def sf(self, y: float) -> float:
        return self.cdf(-y)

    def quantile(self, p: float) -> float:
        _check_p(p)
        if p == 0.5:
            return 0.0
        if p < 0.5:
            return -self.quantile(1.0 - p)
        _, var = self.moments()
        return _invert_cdf(self.cdf, p, 0.0, math.sqrt(var))


@dataclass(frozen=True)
class BesselK(_Symmetric):
    """Zero-order Bessel law ``K(sigma)``: density ``K0(|y/sigma|) / (pi sigma)``.

    Equivalently ``sigma * Z1 * Z2`` for independent standard normals.
    """

    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", _positive(self.sigma, "sigma"))

    def pdf(self, y: float) -> float:
        if y == 0:
            raise SingularityError("Bessel density is unbounded at y = 0")
        return specfun.bessel_k0(abs(y) / self.sigma) / (math.pi * self.sigma)

    def cdf(self, y: float) -> float:
        if y == 0:
            return 0.5
        tail = specfun.k0_tail(abs(y) / self.sigma) / math.pi
        return 1.0 - tail if y > 0 else tail

    def sf(self, y: float) -> float:
        return self.cdf(-y)

    def moments(self):
        return 0.0, self.sigma**2

    def chf(self, t: float) -> float:
        return 1.0 / math.sqrt(1.0 + (self.sigma * t) ** 2)

    def mgf(self, t: float) -> float:
        bound = 1.0 / self.sigma
        if not abs(t) < bound:
            raise DomainError(f"Bessel m.g.f. requires |t| < 1/sigma = {bound!r}")
        return 1.0 / math.sqrt(1.0 - (self.sigma * t) ** 2)


def bessel_cdf_struve(sigma: float, y: float) -> float:
    """Bessel CDF evaluated literally through the Struve-function closed form.

    ``1/2 + (y / 2 sigma) (K0 L_{-1} + K1 L0)`` at ``|y/sigma|``. Loses relative
    accuracy in the far tail, which :meth:`BesselK.cdf` avoids.
    """
    if y == 0:
        return 0.5
    x = abs(y) / sigma
    k0, k1 = specfun.bessel_k01(x)
    bracket = k0 * specfun.struve_l_minus1(x) + k1 * specfun.struve_l0(x)
    return 0.5 + 0.5 * (y / sigma) * bracket


def bessel_absolute_moment(dist: BesselK, mu: float) -> float:
    """``E|Y|^(mu-1)`` for ``Y ~ K(sigma)``.

    From ``int_0^inf t^(mu-1) K0(t) dt = 2^(mu-2) Gamma(mu/2)^2`` this is
    ``sigma^(mu-1) 2^(mu-1) Gamma(mu/2)^2 / pi``.
    """
    if not mu > 0:
        raise DomainError(f"mu must be > 0, got {mu!r}")
    log_val = (
        (mu - 1.0) * math.log(dist.sigma)
        + (mu - 1.0) * math.log(2.0)
        + 2.0 * math.lgamma(0.5 * mu)
        - math.log(math.pi)
    )
    return math.exp(log_val)


@dataclass(frozen=True)
class ClassicalLaplace:
    """Classical Laplace ``CL(theta, s)`` with density ``exp(-|y - theta|/s) / 2s``.

    Use :meth:`from_lambda` for the ``CL(0, sigma_ref / lam)`` parameterisation.
    """

    s: float
    theta: float = 0.0
    lam: float | None = None
    sigma_ref: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", _positive(self.s, "s"))
        if not math.isfinite(self.theta):
            raise DomainError("theta must be finite")
        if (self.lam is None) != (self.sigma_ref is None):
            raise DomainError("lam and sigma_ref must be given together")
        if self.lam is not None:
            lam = _positive(self.lam, "lam")
            ref = _positive(self.sigma_ref, "sigma_ref")
            if abs(self.s * lam - ref) > 8 * 2.2e-16 * ref:
                raise DomainError("s * lam must equal sigma_ref")
            object.__setattr__(self, "lam", lam)
            object.__setattr__(self, "sigma_ref", ref)

    @classmethod
    def from_lambda(cls, lam: float, sigma_ref: float = 1.0) -> "ClassicalLaplace":
        lam = _positive(lam, "lam")
        sigma_ref = _positive(sigma_ref, "sigma_ref")
        return cls(s=sigma_ref / lam, lam=lam, sigma_ref=sigma_ref)

    def pdf(self, y: float) -> float:
        return math.exp(-abs(y - self.theta) / self.s) / (2.0 * self.s)

    def cdf(self, y: float) -> float:
        z = (y - self.theta) / self.s
        if z == 0:
            return 0.5
        if z > 0:
            return 1.0 - 0.5 * math.exp(-z)
        return 0.5 * math.exp(z)

    def sf(self, y: float) -> float:
        z = (y - self.theta) / self.s
        return 0.5 * math.exp(-z) if z >= 0 else 1.0 - 0.5 * math.exp(z)

    def quantile(self, p: float) -> float:
        _check_p(p)
        if p == 0.5:
            return self.theta
        if p > 0.5:
            return self.theta - self.s * math.log(2.0 * (1.0 - p))
        return self.theta + self.s * math.log(2.0 * p)

    def moments(self):
        return self.theta, 2.0 * self.s**2

    def chf(self, t: float):
        core = 1.0 / (1.0 + (self.s * t) ** 2)
        if self.theta == 0:
            return core
        return complex(math.cos(self.theta * t), math.sin(self.theta * t)) * core

    def mgf(self, t: float) -> float:
        bound = 1.0 / self.s
        if not abs(t) < bound:
            raise DomainError(f"Laplace m.g.f. requires |t| < 1/s = {bound!r}")
        return math.exp(self.theta * t) / (1.0 - (self.s * t) ** 2)


@dataclass(frozen=True)
class MartinMaas(_Symmetric):
    """``M(s)``: density ``exp(-|y|/s) / (2 sqrt(pi s |y|))``.

    ``|Y| / s`` is gamma distributed with shape 1/2, so the CDF is an error
    function of ``sqrt(|y|/s)``.
    """

    s: float

    def __post_init__(self):
        object.__setattr__(self, "s", _positive(self.s, "s"))

    def pdf(self, y: float) -> float:
        if y == 0:
            raise SingularityError("Martin-Maas density is unbounded at y = 0")
        a = abs(y)
        return math.exp(-a / self.s) / (2.0 * math.sqrt(math.pi * self.s * a))

    def cdf(self, y: float) -> float:
        if y == 0:
            return 0.5
        half_tail = 0.5 * math.erfc(math.sqrt(abs(y) / self.s))
        return 1.0 - half_tail if y > 0 else half_tail

    def quantile(self, p: float) -> float:
        _check_p(p)
        if p == 0.5:
            return 0.0
        z = _STD_NORMAL.inv_cdf(p)
        return math.copysign(0.5 * self.s * z * z, z)

    def moments(self):
        return 0.0, 0.75 * self.s**2

    def chf(self, t: float):
        raise UnsupportedClosedForm(
            "no closed-form ch.f. for Martin-Maas; use oracle.chf_by_monte_carlo"
        )

    def mgf(self, t: float) -> float:
        inv = 1.0 / self.s
        if not abs(t) < inv:
            raise DomainError(f"Martin-Maas m.g.f. requires |t| < 1/s = {inv!r}")
        st = self.s * t
        return 0.5 * (1.0 / math.sqrt(1.0 + st) + 1.0 / math.sqrt(1.0 - st))


@lru_cache(maxsize=None)
def _sum_coefficients(n):
    # b_k = (n-1+k)! / ((n-1-k)! k! (n-1)! 2^(n-1+k)), k = 0..n-1
    out = []
    for k in range(n):
        num = math.factorial(n - 1 + k)
        den = math.factorial(n - 1 - k) * math.factorial(k) * math.factorial(n - 1) * 2 ** (n - 1 + k)
        out.append(num / den)
    return tuple(out)


def laplace_sum_density(n: int, s: float, t: float) -> float:
    """Density of the sum of ``n`` iid ``CL(0, s)`` variables.

    The finite elementary sum: with ``x = |t|/s``,
    ``(x/2)^(n-1) e^-x / (2 s Gamma(n)) * sum_k (n-1+k)! / ((n-1-k)! k!) x^-k 2^-k``,
    rearranged so the ``x = 0`` limit needs no special case.
    """
    x = abs(t) / s
    total = 0.0
    for k, b in enumerate(_sum_coefficients(n)):
        total += b * x ** (n - 1 - k)
    return math.exp(-x) * total / (2.0 * s)


def _laplace_sum_sf(n, s, t):
    """``P(T > t)`` for ``t >= 0``, integrating each ``x^m e^-x`` term exactly."""
    x = t / s
    ex = math.exp(-x)
    total = 0.0
    for k, b in enumerate(_sum_coefficients(n)):
        m = n - 1 - k
        # Gamma(m+1, x) = m! e^-x sum_{j<=m} x^j / j!
        partial = 0.0
        term = 1.0
        for j in range(m + 1):
            if j:
                term *= x / j
            partial += term
        total += b * math.factorial(m) * partial
    return 0.5 * ex * total


@dataclass(frozen=True)
class LaplaceMean(_Symmetric):
    """Average of ``n`` iid ``CL(0, s)`` variables; ``n = 1`` is the Laplace law."""

    n: int
    s: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or not 1 <= self.n <= MAX_MEAN_TERMS:
            raise DomainError(f"n must be an integer in [1, {MAX_MEAN_TERMS}], got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "s", _positive(self.s, "s"))

    def pdf(self, y: float) -> float:
        return self.n * laplace_sum_density(self.n, self.s, self.n * y)

    def cdf(self, y: float) -> float:
        if y == 0:
            return 0.5
        tail = _laplace_sum_sf(self.n, self.s, self.n * abs(y))
        return 1.0 - tail if y > 0 else tail

    def moments(self):
        return 0.0, 2.0 * self.s**2 / self.n

    def chf(self, t: float) -> float:
        return (1.0 + (self.s * t / self.n) ** 2) ** (-self.n)

    def mgf(self, t: float) -> float:
        bound = self.n / self.s
        if not abs(t) < bound:
            raise DomainError(f"Laplace-mean m.g.f. requires |t| < n/s = {bound!r}")
        return (1.0 - (self.s * t / self.n) ** 2) ** (-self.n)


def _is_half_integer(tau):
    return float(2.0 * tau).is_integer()


@dataclass(frozen=True)
class SymmetricGAL(_Symmetric):
    """Symmetric generalised Laplace ``GAL(0, 0, sigma, tau)``.

    ch.f. ``(1 + sigma^2 t^2 / 2)^-tau``. The density involves
    ``K_{tau - 1/2}``, which this module evaluates only for ``tau`` a multiple
    of 1/2. ``tau = 1/2`` is ``K(sigma / sqrt 2)``; integer ``tau = n`` is the
    sum of ``n`` iid ``CL(0, sigma / sqrt 2)``.
    """

    sigma: float
    tau: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", _positive(self.sigma, "sigma"))
        object.__setattr__(self, "tau", _positive(self.tau, "tau"))

    def _require_closed_form(self):
        if not _is_half_integer(self.tau):
            raise UnsupportedClosedForm(
                f"GAL density for tau={self.tau!r} has no elementary form; "
                "use oracle.gal_density"
            )

    def pdf(self, y: float) -> float:
        self._require_closed_form()
        nu = self.tau - 0.5
        if y == 0:
            if nu == 0:
                raise SingularityError("GAL(tau=1/2) density is unbounded at y = 0")
            return math.exp(math.lgamma(nu) - math.lgamma(self.tau)) / (
                math.sqrt(2.0 * math.pi) * self.sigma
            )
        a = abs(y)
        kv = specfun.bessel_k_int_plus_half(nu, _SQRT2 * a / self.sigma)
        log_pref = (
            0.5 * math.log(2.0)
            - (self.tau + 0.5) * math.log(self.sigma)
            - 0.5 * math.log(math.pi)
            - math.lgamma(self.tau)
            + nu * math.log(a / _SQRT2)
        )
        return math.exp(log_pref) * kv

    def cdf(self, y: float) -> float:
        self._require_closed_form()
        if y == 0:
            return 0.5
        if self.tau == 0.5:
            return BesselK(self.sigma / _SQRT2).cdf(y)
        if float(self.tau).is_integer() and self.tau <= MAX_MEAN_TERMS:
            n = int(self.tau)
            return LaplaceMean(n, self.sigma / _SQRT2).cdf(y / n)
        # half-odd tau > 1/2: bounded density; integrate whichever side keeps
        # the small tail probabilities accurate
        cfg = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-300)
        a = abs(y)
        if a <= self.sigma * math.sqrt(self.tau):
            half, _ = integrate(self.pdf, 0.0, a, cfg)
            return 0.5 + half if y > 0 else 0.5 - half
        tail, _ = integrate(self.pdf, a, math.inf, cfg)
        return 1.0 - tail if y > 0 else tail

    def moments(self):
        return 0.0, self.sigma**2 * self.tau

    def chf(self, t: float) -> float:
        return (1.0 + 0.5 * (self.sigma * t) ** 2) ** (-self.tau)

    def mgf(self, t: float) -> float:
        bound = _SQRT2 / self.sigma
        if not abs(t) < bound:
            raise DomainError(f"GAL m.g.f. requires |t| < sqrt(2)/sigma = {bound!r}")
        return (1.0 - 0.5 * (self.sigma * t) ** 2) ** (-self.tau)


@dataclass(frozen=True)
class ZeroMeanNormal(_Symmetric):
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", _positive(self.sigma, "sigma"))

    def pdf(self, y: float) -> float:
        z = y / self.sigma
        return math.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * self.sigma)

    def cdf(self, y: float) -> float:
        if y == 0:
            return 0.5
        return 0.5 * math.erfc(-y / (_SQRT2 * self.sigma))

    def quantile(self, p: float) -> float:
        _check_p(p)
        if p == 0.5:
            return 0.0
        return self.sigma * _STD_NORMAL.inv_cdf(p)

    def moments(self):
        return 0.0, self.sigma**2

    def chf(self, t: float) -> float:
        return math.exp(-0.5 * (self.sigma * t) ** 2)

    def mgf(self, t: float) -> float:
        return math.exp(0.5 * (self.sigma * t) ** 2)


DistributionSpec = Union[BesselK, ClassicalLaplace, MartinMaas, SymmetricGAL, LaplaceMean, ZeroMeanNormal]


def pdf(dist: DistributionSpec, y: float) -> float:
    return dist.pdf(y)


def cdf(dist: DistributionSpec, y: float) -> float:
    return dist.cdf(y)


def sf(dist: DistributionSpec, y: float) -> float:
    return dist.sf(y)


def quantile(dist: DistributionSpec, p: float) -> float:
    return dist.quantile(p)


def quantile_by_root(dist: DistributionSpec, p: float) -> float:
    """Quantile by bracketing and bisection on the CDF, ignoring any closed form."""
    _check_p(p)
    mean, var = dist.moments()
    return _invert_cdf(dist.cdf, p, mean, math.sqrt(var))


def moments(dist: DistributionSpec) -> tuple[float, float]:
    return dist.moments()


def chf(dist: DistributionSpec, t: float):
    return dist.chf(t)


def mgf(dist: DistributionSpec, t: float) -> float:
    return dist.mgf(t)


# -- text form ``family:key=value[,key=value...]`` --------------------------

_FAMILIES = {
    "bessel": (BesselK, {"sigma"}),
    "laplace": (ClassicalLaplace, {"s", "theta", "lambda", "sigma"}),
    "martinmaas": (MartinMaas, {"s"}),
    "gal": (SymmetricGAL, {"sigma", "tau"}),
    "laplacemean": (LaplaceMean, {"n", "s"}),
    "normal": (ZeroMeanNormal, {"sigma"}),
}

GRAMMAR = (
    "family:key=value[,key=value...] with families bessel(sigma), "
    "laplace(s[,theta] | lambda[,sigma][,theta]), martinmaas(s), gal(sigma,tau), "
    "laplacemean(n,s), normal(sigma)"
)


def parse_spec(text: str) -> DistributionSpec:
    """Parse ``"bessel:sigma=2"``-style text into a distribution."""
    family, sep, rest = text.strip().partition(":")
    family = family.strip().lower()
    if family not in _FAMILIES or not sep:
        raise DomainError(f"cannot parse distribution {text!r}; expected {GRAMMAR}")
    cls, allowed = _FAMILIES[family]
    params = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, eq, value = item.partition("=")
        key = key.strip().lower()
        if not eq or key not in allowed or key in params:
            raise DomainError(f"bad parameter {item!r} in {text!r}; expected {GRAMMAR}")
        try:
            params[key] = float(value)
        except ValueError:
            raise DomainError(f"parameter {key!r} is not a number in {text!r}") from None
    try:
        if family == "laplace":
            theta = params.pop("theta", 0.0)
            if "lambda" in params:
                if "s" in params:
                    raise DomainError("give either s or lambda for laplace, not both")
                base = ClassicalLaplace.from_lambda(params["lambda"], params.get("sigma", 1.0))
                return ClassicalLaplace(base.s, theta, base.lam, base.sigma_ref)
            if "sigma" in params:
                raise DomainError("laplace sigma is only meaningful together with lambda")
            return ClassicalLaplace(params["s"], theta)
        if family == "laplacemean":
            n = params["n"]
            if not float(n).is_integer():
                raise DomainError(f"laplacemean n must be an integer, got {n!r}")
            return LaplaceMean(int(n), params["s"])
        return cls(**params)
    except (KeyError, TypeError):
        raise DomainError(f"missing parameters in {text!r}; expected {GRAMMAR}") from None


def format_spec(dist: DistributionSpec) -> str:
    """Inverse of :func:`parse_spec` (``repr`` floats round-trip exactly)."""
    if isinstance(dist, BesselK):
        return f"bessel:sigma={dist.sigma!r}"
    if isinstance(dist, ClassicalLaplace):
        if dist.lam is not None:
            text = f"laplace:lambda={dist.lam!r},sigma={dist.sigma_ref!r}"
        else:
            text = f"laplace:s={dist.s!r}"
        return text + (f",theta={dist.theta!r}" if dist.theta else "")
    if isinstance(dist, MartinMaas):
        return f"martinmaas:s={dist.s!r}"
    if isinstance(dist, SymmetricGAL):
        return f"gal:sigma={dist.sigma!r},tau={dist.tau!r}"
    if isinstance(dist, LaplaceMean):
        return f"laplacemean:n={dist.n},s={dist.s!r}"
    if isinstance(dist, ZeroMeanNormal):
        return f"normal:sigma={dist.sigma!r}"
    raise TypeError(f"not a distribution: {dist!r}")
