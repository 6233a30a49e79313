"""Distances between CDFs, best-fit Laplace scale, critical-value tables, pdf crossings."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import dist as _dist
from .errors import AmbiguityError, DomainError, SingularityError
from .quadrature import QuadratureConfig, integrate

KS_GRID_POINTS = 2001
KS_SPAN = 12.0  # grid covers [0, KS_SPAN * largest standard deviation]
TAIL_MASS = 1e-13
SCAN_POINTS = 50
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_W_CONFIG = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-12, max_subdivisions=4000)

DEFAULT_ALPHAS = (0.5, 0.317, 0.1, 0.05, 0.01)
DEFAULT_LAMBDAS = (1.0, math.sqrt(2.0), 1.54, 1.83, 2.0)
DEFAULT_MM_SCALES = (1.0, 1.2, 1.5)


def default_columns(sigma: float = 1.0) -> list:
    """Bessel reference followed by the Laplace and Martin-Maas approximations."""
    cols = [_dist.BesselK(sigma)]
    cols += [_dist.ClassicalLaplace.from_lambda(lam, sigma) for lam in DEFAULT_LAMBDAS]
    cols += [_dist.MartinMaas(s * sigma) for s in DEFAULT_MM_SCALES]
    return cols


# -- helpers -----------------------------------------------------------------


def _std(d):
    return math.sqrt(d.moments()[1])


def _centre(d):
    return getattr(d, "theta", 0.0)


def _symmetric(*dists):
    return all(_centre(d) == 0 for d in dists)


def _abs_gap(d1, d2, x):
    # |F1 - F2| computed from whichever tail is small, to keep digits
    if x >= 0:
        return abs(d1.sf(x) - d2.sf(x))
    return abs(d1.cdf(x) - d2.cdf(x))


@lru_cache(maxsize=512)
def _tail_on_grid(d, lo, hi, n):
    xs = np.linspace(lo, hi, n)
    return np.array([d.sf(x) if x >= 0 else d.cdf(x) for x in xs.tolist()])


def _golden_max(f, a, b, tol):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x), evaluations)``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    return (c, fc, evals) if fc >= fd else (d, fd, evals)


def _bisect_sign(g, lo, hi, g_lo):
    """Root of ``g`` bracketed by a sign change on ``[lo, hi]``, to full precision."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- distances ---------------------------------------------------------------


def ks_distance(d1, d2) -> float:
    """``sup_x |F1(x) - F2(x)|``.

    A 2001-point grid on ``[0, 12 s]`` (``s`` the larger standard deviation;
    the whole line if either law is off-centre) locates the local maxima of
    the gap, and each is polished by golden-section search.
    """
    if d1 == d2:
        return 0.0
    span = KS_SPAN * max(_std(d1), _std(d2))
    if _symmetric(d1, d2):
        lo, hi, n = 0.0, span, KS_GRID_POINTS
    else:
        shift = max(abs(_centre(d1)), abs(_centre(d2)))
        lo, hi, n = -span - shift, span + shift, 2 * KS_GRID_POINTS - 1
    xs = np.linspace(lo, hi, n)
    gap = np.abs(_tail_on_grid(d1, lo, hi, n) - _tail_on_grid(d2, lo, hi, n))
    best = float(gap.max())
    if best == 0.0:
        return 0.0
    padded = np.concatenate([[-1.0], gap, [-1.0]])
    peaks = np.flatnonzero((gap > 0) & (gap >= padded[:-2]) & (gap >= padded[2:]))
    peaks = peaks[np.argsort(gap[peaks])[::-1][:8]]
    tol = 1e-10 * span / KS_SPAN
    for i in peaks.tolist():
        a, b = xs[max(i - 1, 0)], xs[min(i + 1, n - 1)]
        _, value, _ = _golden_max(lambda x: _abs_gap(d1, d2, x), a, b, tol)
        best = max(best, value)
    return float(best)


def wasserstein_distance(d1, d2, with_error: bool = False):
    """``int |F1 - F2| dx`` over the line.

    The range is cut where both laws have tail mass below 1e-13; the gap is
    split at its sign changes so each quadrature piece is smooth. The
    discarded tails are integrated separately and only enter the error
    estimate. Returns the distance, or ``(distance, error)`` if asked.
    """
    if d1 == d2:
        return (0.0, 0.0) if with_error else 0.0
    hi = max(d.quantile(1.0 - TAIL_MASS) for d in (d1, d2))
    symmetric = _symmetric(d1, d2)
    lo = 0.0 if symmetric else min(d.quantile(TAIL_MASS) for d in (d1, d2))

    def signed(x):
        if x >= 0:
            return d1.sf(x) - d2.sf(x)
        return d2.cdf(x) - d1.cdf(x)

    n = KS_GRID_POINTS
    xs = np.linspace(lo, hi, n)
    g = _tail_on_grid(d1, lo, hi, n) - _tail_on_grid(d2, lo, hi, n)
    g[xs < 0] *= -1.0
    cuts = []
    last = None
    for i in range(n):
        if g[i] == 0.0:
            continue
        if last is not None and (g[i] > 0) != (g[last] > 0):
            cuts.append(_bisect_sign(signed, xs[last], xs[i], g[last]))
        last = i
    total = 0.0
    err = 0.0
    edges = [lo, *cuts, hi]
    for a, b in zip(edges[:-1], edges[1:]):
        value, e = integrate(lambda x: abs(signed(x)), a, b, _W_CONFIG)
        total += value
        err += e
    tails, tail_err = integrate(lambda x: d1.sf(x) + d2.sf(x), hi, math.inf, _W_CONFIG)
    err += tails + tail_err
    if not symmetric:
        left, left_err = integrate(lambda x: d1.cdf(x) + d2.cdf(x), -math.inf, lo, _W_CONFIG)
        err += left + left_err
    if symmetric:
        total *= 2.0
        err *= 2.0
    total, err = float(total), float(err)
    return (total, err) if with_error else total


# -- fitting -----------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    lambda_star: float
    distance_star: float
    metric: str
    sigma: float
    iterations: int
    bracket: tuple

    def as_dict(self) -> dict:
        return {
            "lambda_star": self.lambda_star,
            "distance_star": self.distance_star,
            "metric": self.metric,
            "sigma": self.sigma,
            "iterations": self.iterations,
            "bracket": list(self.bracket),
        }


_METRICS = {"ks": ks_distance, "wasserstein": wasserstein_distance}


def _is_unimodal(values, flat):
    """True if ``values`` falls then rises, ignoring steps smaller than ``flat``."""
    rising = False
    for prev, cur in zip(values[:-1], values[1:]):
        step = cur - prev
        if step > flat:
            rising = True
        elif step < -flat and rising:
            return False
    return True


def fit_lambda(sigma: float, metric: str = "ks", bracket=(1.0, 2.5), tol: float = 1e-5) -> FitResult:
    """Best ``lam`` for ``CL(0, sigma/lam)`` as an approximation of ``K(sigma)``.

    A 50-point scan over ``bracket`` checks the distance is unimodal; golden
    section then narrows the scan's best cell to ``tol``.

    Raises
    ------
    AmbiguityError
        If the scan is not unimodal or its minimum sits on a bracket end.
        ``exc.scan`` holds the ``(lam, distance)`` pairs.
    """
    if metric not in _METRICS:
        raise DomainError(f"metric must be one of {sorted(_METRICS)}, got {metric!r}")
    lo, hi = (float(v) for v in bracket)
    if not 0 < lo < hi:
        raise DomainError(f"bracket must satisfy 0 < lo < hi, got {bracket!r}")
    bessel = _dist.BesselK(sigma)
    distance = _METRICS[metric]

    def objective(lam):
        return distance(bessel, _dist.ClassicalLaplace.from_lambda(lam, bessel.sigma))

    lams = np.linspace(lo, hi, SCAN_POINTS).tolist()
    values = [objective(lam) for lam in lams]
    scan = list(zip(lams, values))
    best = int(np.argmin(values))
    flat = 1e-12 * max(values)
    if not _is_unimodal(values, flat):
        raise AmbiguityError(f"{metric} distance is not unimodal on {bracket!r}", scan=scan)
    if best in (0, SCAN_POINTS - 1):
        raise AmbiguityError(f"{metric} minimum lies on the bracket edge {lams[best]!r}", scan=scan)
    lam, neg, evals = _golden_max(lambda x: -objective(x), lams[best - 1], lams[best + 1], tol)
    return FitResult(float(lam), float(-neg), metric, bessel.sigma, SCAN_POINTS + evals, (lo, hi))


# -- critical values ---------------------------------------------------------


@dataclass(frozen=True)
class QuantileTable:
    alphas: tuple
    columns: tuple
    values: tuple
    deviations_pct: tuple
    reference: int = 0

    def header(self) -> list:
        specs = [_dist.format_spec(c) for c in self.columns]
        return ["alpha", *specs, *(f"dev_pct:{s}" for s in specs)]

    def rows(self) -> list:
        return [
            [alpha, *vals, *devs]
            for alpha, vals, devs in zip(self.alphas, self.values, self.deviations_pct)
        ]

    def as_dict(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "columns": [_dist.format_spec(c) for c in self.columns],
            "values": [list(r) for r in self.values],
            "deviations_pct": [list(r) for r in self.deviations_pct],
        }

    def to_text(self, digits: int = 2) -> str:
        """Human-readable layout: value with the rounded percent deviation in brackets."""
        head = ["alpha"] + [_dist.format_spec(c) for c in self.columns]
        lines = ["  ".join(head)]
        for alpha, vals, devs in zip(self.alphas, self.values, self.deviations_pct):
            cells = [f"{alpha:g}"] + [f"{v:.{digits}f} ({d:+.0f})" for v, d in zip(vals, devs)]
            lines.append("  ".join(cells))
        return "\n".join(lines)


def quantile_table(alphas=DEFAULT_ALPHAS, columns=None, reference: int = 0) -> QuantileTable:
    """One-sided critical values ``quantile(col, 1 - alpha)`` and percent deviations."""
    columns = tuple(default_columns() if columns is None else columns)
    alphas = tuple(float(a) for a in alphas)
    if not columns:
        raise DomainError("at least one column is required")
    if not 0 <= reference < len(columns):
        raise DomainError(f"reference index {reference} out of range")
    for a in alphas:
        if not 0 < a < 1:
            raise DomainError(f"alpha must lie in (0, 1), got {a!r}")
    values = []
    devs = []
    for a in alphas:
        row = [c.quantile(1.0 - a) for c in columns]
        ref = row[reference]
        if ref == 0.0:
            dev = [0.0] * len(row)
        else:
            dev = [100.0 * (v / ref - 1.0) for v in row]
        values.append(tuple(row))
        devs.append(tuple(dev))
    return QuantileTable(alphas, columns, tuple(values), tuple(devs), reference)


# -- pdf crossings -----------------------------------------------------------


def pdf_crossings(d1, d2, domain, points: int = 1001) -> list:
    """Points in ``domain`` where ``pdf1 - pdf2`` changes sign.

    Grid points where either density is singular are dropped; exact ties are
    skipped, so identical densities give no crossings. Each bracket is
    bisected to full double precision.
    """
    lo, hi = (float(v) for v in domain)
    if not lo < hi:
        raise DomainError(f"domain must satisfy lo < hi, got {domain!r}")

    def gap(x):
        return d1.pdf(x) - d2.pdf(x)

    xs = []
    gs = []
    for x in np.linspace(lo, hi, points).tolist():
        try:
            gs.append(gap(x))
        except SingularityError:
            continue
        xs.append(x)
    roots = []
    last = None
    for i, g in enumerate(gs):
        if g == 0.0 or math.isnan(g):
            continue
        if last is not None and (g > 0) != (gs[last] > 0):
            roots.append(float(_bisect_sign(gap, xs[last], xs[i], gs[last])))
        last = i
    return roots
