"""Built-in verification suites run by ``besseldist check``.

``parity`` compares every closed-form pdf, CDF and variance against the
quadrature oracles; ``representations`` compares samplers built on different
representations of the same law by Kolmogorov-Smirnov tests.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import dist as D
from . import oracle as O
from . import sampling as S
from .errors import SingularityError

PARITY_TOL = 1e-8
GRID_POINTS = 41
REPRESENTATION_N = 100_000
SUITES = ("parity", "representations")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _exp_variance(u):
    # U = 2W with W ~ Exp(1), so that sqrt(U) Z is standard Laplace
    return 0.5 * math.exp(-0.5 * u) if u > 0 else 0.0


def parity_cases():
    """``(dist, independent pdf route)`` for one member of each family."""
    bessel = D.BesselK(1.3)
    laplace = D.ClassicalLaplace(0.8)
    mm = D.MartinMaas(1.2)
    gal = D.SymmetricGAL(1.1, 1.5)
    mean = D.LaplaceMean(3, 0.9)
    normal = D.ZeroMeanNormal(1.4)
    return [
        (bessel, lambda y: O.compound_density(bessel.sigma, y)),
        (laplace, lambda y: O.compound_normal_density(_exp_variance, y, laplace.s)),
        (mm, lambda y: O.martin_maas_density(mm.s, y)),
        (gal, lambda y: O.gal_density(gal.sigma, gal.tau, y)),
        (mean, lambda y: O.compound_normal_density(O.gamma_pdf(mean.n), y, math.sqrt(2.0) * mean.s / mean.n)),
        (normal, lambda y: O.density_by_chf_inversion(normal.chf, y)),
    ]


def parity_grid(d) -> list:
    """41 points spread over +-6 standard deviations, including 0."""
    half = 6.0 * math.sqrt(d.moments()[1])
    return np.linspace(-half, half, GRID_POINTS).tolist()


def _close(a, b):
    return abs(a - b) / max(1.0, abs(b))


def run_parity() -> list:
    results = []
    for d, oracle_pdf in parity_cases():
        name = D.format_spec(d)
        pdf_err = 0.0
        cdf_err = 0.0
        singular_ok = True
        for y in parity_grid(d):
            try:
                closed = d.pdf(y)
            except SingularityError:
                # must agree with the oracle that the density is unbounded here
                try:
                    oracle_pdf(y)
                    singular_ok = False
                except SingularityError:
                    pass
            else:
                pdf_err = max(pdf_err, _close(closed, oracle_pdf(y)))
            cdf_err = max(cdf_err, _close(d.cdf(y), O.cdf_by_quadrature(d.pdf, y)))
        var = d.moments()[1]
        var_err = abs(O.moment_by_quadrature(d.pdf, 2) / var - 1.0)
        results.append(CheckResult("parity", f"pdf {name}", pdf_err <= PARITY_TOL and singular_ok, pdf_err, PARITY_TOL))
        results.append(CheckResult("parity", f"cdf {name}", cdf_err <= PARITY_TOL, cdf_err, PARITY_TOL))
        results.append(CheckResult("parity", f"variance {name}", var_err <= PARITY_TOL, var_err, PARITY_TOL))
    return results


def _ks_result(name, report):
    return CheckResult("representations", name, report.passed, report.statistic, report.critical_value, report.reference)


def run_representations(n: int = REPRESENTATION_N, seed: int = 20240601) -> list:
    r = []
    r.append(_ks_result(
        "bessel product vs chi_mixture",
        S.ks_test_two_sample(S.sample_bessel(1.0, n, seed), S.sample_bessel(1.0, n, seed + 1, "chi_mixture")),
    ))
    r.append(_ks_result(
        "laplace difference vs compound",
        S.ks_test_two_sample(S.sample_laplace(1.0, n, seed + 2), S.sample_laplace(1.0, n, seed + 3, "compound")),
    ))
    r.append(_ks_result(
        "gal(sqrt2, 1/2) vs bessel(1) cdf",
        S.ks_test_one_sample(S.sample_gal(math.sqrt(2.0), 0.5, n, seed + 4), D.BesselK(1.0)),
    ))
    r.append(_ks_result(
        "gal(sqrt2, 1) vs laplace(1) cdf",
        S.ks_test_one_sample(S.sample_gal(math.sqrt(2.0), 1.0, n, seed + 5), D.ClassicalLaplace(1.0)),
    ))
    direct = S.sample_laplace_sum(3, 1.0, n, seed + 6)
    r.append(_ks_result(
        "laplace sum direct vs gamma_difference",
        S.ks_test_two_sample(direct, S.sample_laplace_sum(3, 1.0, n, seed + 7, "gamma_difference")),
    ))
    r.append(_ks_result(
        "laplace sum direct vs compound",
        S.ks_test_two_sample(direct, S.sample_laplace_sum(3, 1.0, n, seed + 8, "compound")),
    ))
    r.append(_ks_result(
        "laplace mean vs laplacemean cdf",
        S.ks_test_one_sample(direct.values / 3.0, D.LaplaceMean(3, 1.0)),
    ))
    for k, a in enumerate((0.5, 2.0, 10.0)):
        r.append(_ks_result(
            f"bessel divided a={a:g}",
            S.ks_test_two_sample(
                S.sample_bessel(1.0, n, seed + 10 + k, "chi_mixture"),
                S.sample_bessel_divided(1.0, a, n, seed + 20 + k),
            ),
        ))
    r.append(_ks_result("bessel sum vs laplace", S.verify_bessel_sum_is_laplace(1.0, n, seed + 30)))
    batch = S.sample_bessel(1.0, n, seed + 40)
    for t in (0.5, 1.0, 2.0):
        est = O.chf_by_monte_carlo(batch, t)
        z = abs(est.estimate - D.BesselK(1.0).chf(t)) / est.std_error
        r.append(CheckResult("representations", f"bessel chf t={t:g}", z <= 3.0, z, 3.0, "standard errors"))
    return r


def run(suite: str = "all") -> list:
    if suite not in (*SUITES, "all"):
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    if suite in ("parity", "all"):
        results += run_parity()
    if suite in ("representations", "all"):
        results += run_representations()
    return results
