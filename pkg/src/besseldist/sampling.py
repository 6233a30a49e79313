"""Seeded samplers built from the representations of each law, and KS tests.

The random stream is pinned end to end so batches are bit-reproducible:

* uniforms: ``((raw >> 11) + 0.5) * 2**-53`` from raw 64-bit PCG64 output,
  so they lie strictly inside (0, 1);
* normals: inverse CDF of those uniforms (one uniform per variate);
* exponentials: ``-log(u)``;
* gamma: Marsaglia-Tsang squeeze/rejection, with ``G_a = G_{a+1} U^{1/a}``
  for shape ``a < 1``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import ndtri

from . import dist as _dist
from .errors import DomainError

GENERATOR_ID = "pcg64-raw53/ndtri-normal/mt-gamma-boost/v1"
KS_C_01 = 1.6276  # sqrt(-ln(0.01/2)/2), asymptotic Kolmogorov 1% point

REPRESENTATIONS = {
    "bessel": ("product", "chi_mixture"),
    "laplace": ("difference", "compound"),
    "gal": ("compound",),
    "laplace_sum": ("direct_sum", "gamma_difference", "compound"),
    "martinmaas": ("gamma_sign",),
    "normal": ("inverse_cdf",),
}


class Stream:
    """Pinned variate generator over a seeded PCG64 bit generator."""

    def __init__(self, seed: int):
        if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2**64:
            raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        self._bits = np.random.PCG64(int(seed))

    def uniform(self, n: int) -> np.ndarray:
        raw = self._bits.random_raw(n)
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53

    def normal(self, n: int) -> np.ndarray:
        return ndtri(self.uniform(n))

    def exponential(self, n: int) -> np.ndarray:
        return -np.log(self.uniform(n))

    def gamma(self, shape: float, n: int) -> np.ndarray:
        """``gamma(rate=1, shape)`` variates."""
        if not shape > 0:
            raise DomainError(f"gamma shape must be > 0, got {shape!r}")
        if shape < 1.0:
            g = self._gamma_ge1(shape + 1.0, n)
            return g * self.uniform(n) ** (1.0 / shape)
        return self._gamma_ge1(shape, n)

    def _gamma_ge1(self, shape, n):
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        out = np.empty(n)
        filled = 0
        while filled < n:
            m = int((n - filled) * 1.05) + 16
            x = self.normal(m)
            u = self.uniform(m)
            v = (1.0 + c * x) ** 3
            ok = v > 0
            with np.errstate(invalid="ignore", divide="ignore"):
                log_v = np.where(ok, np.log(np.where(ok, v, 1.0)), -np.inf)
                accept = ok & (
                    (u < 1.0 - 0.0331 * x**4)
                    | (np.log(u) < 0.5 * x * x + d * (1.0 - v + log_v))
                )
            take = (d * v[accept])[: n - filled]
            out[filled : filled + take.size] = take
            filled += take.size
        return out


@dataclass(frozen=True, eq=False)
class SampleBatch:
    values: np.ndarray
    seed: int
    dist: object
    representation_id: str
    generator_id: str = GENERATOR_ID
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.size == 0:
            raise DomainError("a sample batch cannot be empty")

    def __len__(self):
        return int(self.values.size)

    def metadata(self) -> dict:
        meta = {
            "seed": self.seed,
            "generator_id": self.generator_id,
            "dist": _dist.format_spec(self.dist),
            "representation_id": self.representation_id,
            "n": len(self),
        }
        meta.update(self.extra)
        return meta

    def to_csv(self, fh=None, extra_meta: dict | None = None) -> str | None:
        """Single-column CSV with ``#`` metadata lines; returns text if ``fh`` is None."""
        out = io.StringIO() if fh is None else fh
        meta = self.metadata()
        meta.update(extra_meta or {})
        for key, value in meta.items():
            out.write(f"# {key}={value}\n")
        out.write("value\n")
        out.write("\n".join(f"{v:.16e}" for v in self.values.tolist()))
        out.write("\n")
        return out.getvalue() if fh is None else None


def read_sample_csv(path) -> tuple[np.ndarray, dict]:
    meta = {}
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
            elif line != "value":
                values.append(float(line))
    return np.asarray(values), meta


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def _check_rep(family, representation):
    if representation not in REPRESENTATIONS[family]:
        raise DomainError(
            f"unknown {family} representation {representation!r}; "
            f"choose from {REPRESENTATIONS[family]}"
        )


def sample_bessel(sigma: float, n: int, seed: int, representation: str = "product") -> SampleBatch:
    """``K(sigma)`` draws as ``sigma Z1 Z2`` or ``sigma sqrt(S1) Z`` with ``S1 ~ chi^2_1``."""
    dist = _dist.BesselK(sigma)
    n = _check_n(n)
    _check_rep("bessel", representation)
    st = Stream(seed)
    if representation == "product":
        z1 = st.normal(n)
        z2 = st.normal(n)
        values = dist.sigma * z1 * z2
    else:
        s1 = st.normal(n) ** 2
        values = dist.sigma * np.sqrt(s1) * st.normal(n)
    return SampleBatch(values, seed, dist, representation)


def sample_bessel_divided(sigma: float, a: float, n: int, seed: int) -> SampleBatch:
    """``sqrt(a) sqrt(U/a) Z`` with ``U = sigma^2 S1``: the same law for every ``a > 0``."""
    if not a > 0:
        raise DomainError(f"a must be > 0, got {a!r}")
    dist = _dist.BesselK(sigma)
    n = _check_n(n)
    st = Stream(seed)
    u = dist.sigma**2 * st.normal(n) ** 2
    values = math.sqrt(a) * np.sqrt(u / a) * st.normal(n)
    return SampleBatch(values, seed, dist, "divided", extra={"a": a})


def sample_laplace(s: float, n: int, seed: int, representation: str = "difference") -> SampleBatch:
    """``CL(0, s)`` draws as ``s (W1 - W2)`` or ``s sqrt(2W) Z``."""
    dist = _dist.ClassicalLaplace(s)
    n = _check_n(n)
    _check_rep("laplace", representation)
    st = Stream(seed)
    if representation == "difference":
        w1 = st.exponential(n)
        w2 = st.exponential(n)
        values = dist.s * (w1 - w2)
    else:
        w = st.exponential(n)
        values = dist.s * np.sqrt(2.0 * w) * st.normal(n)
    return SampleBatch(values, seed, dist, representation)


def sample_gal(sigma: float, tau: float, n: int, seed: int) -> SampleBatch:
    """``GAL(0, 0, sigma, tau)`` draws as ``sigma sqrt(G) Z``, ``G ~ gamma(1, tau)``."""
    dist = _dist.SymmetricGAL(sigma, tau)
    n = _check_n(n)
    st = Stream(seed)
    g = st.gamma(dist.tau, n)
    values = dist.sigma * np.sqrt(g) * st.normal(n)
    return SampleBatch(values, seed, dist, "compound")


def sample_laplace_sum(n_terms: int, s: float, n: int, seed: int, representation: str = "direct_sum") -> SampleBatch:
    """Sum of ``n_terms`` iid ``CL(0, s)``.

    ``direct_sum`` adds difference-form Laplace draws (so ``n_terms=1`` is
    exactly :func:`sample_laplace` for the same seed); ``gamma_difference``
    uses ``s (G1 - G2)``; ``compound`` uses ``sqrt(2) s sqrt(G) Z``. The
    gammas have shape ``n_terms``.
    """
    if isinstance(n_terms, bool) or int(n_terms) != n_terms or n_terms < 1:
        raise DomainError(f"n_terms must be a positive integer, got {n_terms!r}")
    n_terms = int(n_terms)
    n = _check_n(n)
    _check_rep("laplace_sum", representation)
    scale = _dist.ClassicalLaplace(s).s
    st = Stream(seed)
    if representation == "direct_sum":
        values = np.zeros(n)
        for _ in range(n_terms):
            w1 = st.exponential(n)
            w2 = st.exponential(n)
            values += scale * (w1 - w2)
    elif representation == "gamma_difference":
        g1 = st.gamma(n_terms, n)
        g2 = st.gamma(n_terms, n)
        values = scale * (g1 - g2)
    else:
        g = st.gamma(n_terms, n)
        values = math.sqrt(2.0) * scale * np.sqrt(g) * st.normal(n)
    dist = _dist.SymmetricGAL(math.sqrt(2.0) * scale, n_terms)
    return SampleBatch(values, seed, dist, representation, extra={"n_terms": n_terms})


def sample_martin_maas(s: float, n: int, seed: int) -> SampleBatch:
    """``M(s)`` draws: ``|Y| = s G`` with ``G ~ gamma(1, 1/2)``, i.e. ``s Z^2 / 2``, random sign."""
    dist = _dist.MartinMaas(s)
    n = _check_n(n)
    st = Stream(seed)
    z = st.normal(n)
    values = np.sign(z) * 0.5 * dist.s * z * z
    return SampleBatch(values, seed, dist, "gamma_sign")


def sample_normal(sigma: float, n: int, seed: int) -> SampleBatch:
    dist = _dist.ZeroMeanNormal(sigma)
    n = _check_n(n)
    values = dist.sigma * Stream(seed).normal(_check_n(n))
    return SampleBatch(values, seed, dist, "inverse_cdf")


def sample(dist, n: int, seed: int, representation: str | None = None) -> SampleBatch:
    """Draw from any supported family, using its default representation if none is given."""
    if isinstance(dist, _dist.BesselK):
        return sample_bessel(dist.sigma, n, seed, representation or "product")
    if isinstance(dist, _dist.ClassicalLaplace):
        if dist.theta != 0:
            raise DomainError("only zero-location Laplace laws can be sampled")
        batch = sample_laplace(dist.s, n, seed, representation or "difference")
        return SampleBatch(batch.values, seed, dist, batch.representation_id)
    if isinstance(dist, _dist.SymmetricGAL):
        if representation not in (None, "compound"):
            _check_rep("gal", representation)
        return sample_gal(dist.sigma, dist.tau, n, seed)
    if isinstance(dist, _dist.LaplaceMean):
        batch = sample_laplace_sum(dist.n, dist.s, n, seed, representation or "direct_sum")
        return SampleBatch(batch.values / dist.n, seed, dist, batch.representation_id)
    if isinstance(dist, _dist.MartinMaas):
        if representation not in (None, "gamma_sign"):
            _check_rep("martinmaas", representation)
        return sample_martin_maas(dist.s, n, seed)
    if isinstance(dist, _dist.ZeroMeanNormal):
        if representation not in (None, "inverse_cdf"):
            _check_rep("normal", representation)
        return sample_normal(dist.sigma, n, seed)
    raise DomainError(f"cannot sample {dist!r}")


# -- Kolmogorov-Smirnov ------------------------------------------------------


class KSReport(NamedTuple):
    statistic: float
    critical_value: float
    alpha: float
    passed: bool
    reference: str = ""


def ks_critical_value(alpha: float, n: int, m: int | None = None) -> float:
    """Asymptotic Kolmogorov critical value ``c(alpha) / sqrt(n_eff)``."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    c = KS_C_01 if alpha == 0.01 else math.sqrt(-0.5 * math.log(alpha / 2.0))
    n_eff = n if m is None else n * m / (n + m)
    return c / math.sqrt(n_eff)


def _values(batch):
    values = np.asarray(getattr(batch, "values", batch), dtype=float)
    if values.size == 0:
        raise DomainError("empty sample")
    return values


def ks_statistic_one_sample(batch, cdf) -> float:
    """``max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)``.

    ``cdf`` is a callable or anything with a ``.cdf`` method.
    """
    x = np.sort(_values(batch))
    fn = getattr(cdf, "cdf", cdf)
    f = np.fromiter((fn(v) for v in x.tolist()), dtype=float, count=x.size)
    n = x.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_statistic_two_sample(a, b) -> float:
    a = np.sort(_values(a))
    b = np.sort(_values(b))
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def ks_test_one_sample(batch, cdf, alpha: float = 0.01, reference: str = "") -> KSReport:
    d = ks_statistic_one_sample(batch, cdf)
    crit = ks_critical_value(alpha, len(_values(batch)))
    return KSReport(d, crit, alpha, d < crit, reference)


def ks_test_two_sample(a, b, alpha: float = 0.01, reference: str = "") -> KSReport:
    d = ks_statistic_two_sample(a, b)
    crit = ks_critical_value(alpha, _values(a).size, _values(b).size)
    return KSReport(d, crit, alpha, d < crit, reference)


def verify_bessel_sum_is_laplace(sigma: float, n: int, seed: int, laplace_scale: float | None = None, alpha: float = 0.01) -> KSReport:
    """KS-test ``Y1 + Y2`` (two independent ``K(sigma)`` batches) against ``CL(0, b)``.

    ``b`` defaults to ``sigma``: the squared Bessel ch.f. ``1/(1 + sigma^2 t^2)``
    is exactly the Laplace ch.f. with scale ``sigma``.
    """
    if n < 10_000:
        raise DomainError("use at least 10^4 draws")
    y1 = sample_bessel(sigma, n, seed)
    y2 = sample_bessel(sigma, n, seed + 1)
    scale = sigma if laplace_scale is None else laplace_scale
    target = _dist.ClassicalLaplace(scale)
    return ks_test_one_sample(y1.values + y2.values, target, alpha, _dist.format_spec(target))
