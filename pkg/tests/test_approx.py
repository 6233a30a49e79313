import math

import pytest

from besseldist import approx as A
from besseldist import dist as D
from besseldist.errors import AmbiguityError, DomainError

SQRT2 = math.sqrt(2.0)


def laplace(lam, sigma=1.0):
    return D.ClassicalLaplace.from_lambda(lam, sigma)


def test_identical_laws_have_zero_distance():
    for d in (D.BesselK(1.0), laplace(1.83), D.MartinMaas(1.2)):
        assert A.ks_distance(d, d) == 0.0
        assert A.wasserstein_distance(d, d) == 0.0
    # equal but distinct objects
    assert A.ks_distance(D.BesselK(1.0), D.BesselK(1.0)) < 1e-12


def test_ks_distance_at_best_lambda():
    assert A.ks_distance(D.BesselK(1.0), laplace(1.83)) == pytest.approx(0.0253, abs=5e-4)


@pytest.mark.parametrize("sigma", [0.1, 10.0])
def test_ks_distance_is_scale_free(sigma):
    base = A.ks_distance(D.BesselK(1.0), laplace(1.83))
    assert A.ks_distance(D.BesselK(sigma), laplace(1.83, sigma)) == pytest.approx(base, abs=1e-6)


def test_ks_distance_of_two_laplace_laws():
    # sup |F1 - F2| between CL(0,1) and CL(0,2) is attained at x = 2 ln 2
    x = 2 * math.log(2.0)
    expected = 0.5 * (math.exp(-x / 2) - math.exp(-x))
    assert A.ks_distance(D.ClassicalLaplace(1.0), D.ClassicalLaplace(2.0)) == pytest.approx(expected, abs=1e-12)


def test_ks_distance_for_shifted_laws():
    # location shift by theta: the gap peaks at the midpoint
    d = A.ks_distance(D.ClassicalLaplace(1.0), D.ClassicalLaplace(1.0, theta=1.0))
    assert d == pytest.approx(1 - math.exp(-0.5), abs=1e-10)


def test_wasserstein_at_best_lambda():
    assert A.wasserstein_distance(D.BesselK(1.0), laplace(1.54)) == pytest.approx(0.083, abs=1e-3)


def test_wasserstein_scales_with_sigma():
    one = A.wasserstein_distance(D.BesselK(1.0), laplace(1.54))
    two = A.wasserstein_distance(D.BesselK(2.0), laplace(1.54, 2.0))
    assert two == pytest.approx(2 * one, abs=1e-6)


def test_wasserstein_closed_forms():
    # location shift: W1 equals the shift
    assert A.wasserstein_distance(D.ClassicalLaplace(1.0), D.ClassicalLaplace(1.0, theta=0.7)) == pytest.approx(0.7, abs=1e-8)
    # same family, different scale: W1 = E|X| difference = |s1 - s2|
    value, err = A.wasserstein_distance(D.ClassicalLaplace(1.0), D.ClassicalLaplace(1.5), with_error=True)
    assert value == pytest.approx(0.5, abs=1e-8)
    assert 0 <= err < 1e-8


TRIPLES = [
    (D.BesselK(1.0), laplace(1.83), D.ZeroMeanNormal(1.0)),
    (D.BesselK(1.0), D.MartinMaas(1.2), laplace(SQRT2)),
    (D.LaplaceMean(3, 1.0), D.SymmetricGAL(1.0, 2.5), D.BesselK(0.7)),
]


@pytest.mark.parametrize("a,b,c", TRIPLES)
def test_distances_symmetric_and_triangle(a, b, c):
    for x, y in ((a, b), (b, c), (a, c)):
        assert abs(A.ks_distance(x, y) - A.ks_distance(y, x)) <= 1e-12
        assert abs(A.wasserstein_distance(x, y) - A.wasserstein_distance(y, x)) <= 1e-12
    assert A.ks_distance(a, c) <= A.ks_distance(a, b) + A.ks_distance(b, c) + 1e-9
    assert A.wasserstein_distance(a, c) <= A.wasserstein_distance(a, b) + A.wasserstein_distance(b, c) + 1e-9


def test_fit_ks():
    fit = A.fit_lambda(1.0, "ks")
    assert fit.lambda_star == pytest.approx(1.83, abs=0.01)
    assert fit.distance_star == pytest.approx(0.0253, abs=5e-4)
    assert fit.bracket[0] < fit.lambda_star < fit.bracket[1]
    assert fit.iterations > A.SCAN_POINTS
    assert fit.as_dict()["metric"] == "ks"


def test_fit_wasserstein_scale_invariance():
    fits = {s: A.fit_lambda(s, "wasserstein") for s in (0.1, 1.0, 10.0)}
    assert fits[1.0].lambda_star == pytest.approx(1.54, abs=0.01)
    for s, fit in fits.items():
        assert abs(fit.lambda_star - fits[1.0].lambda_star) < 1e-3
        assert fit.distance_star / s == pytest.approx(fits[1.0].distance_star, abs=1e-4)


def test_fit_ks_scale_invariance():
    base = A.fit_lambda(1.0, "ks").lambda_star
    for s in (0.1, 10.0):
        assert abs(A.fit_lambda(s, "ks").lambda_star - base) < 1e-3


def test_fit_minimum_on_edge_is_ambiguous():
    with pytest.raises(AmbiguityError) as info:
        A.fit_lambda(1.0, "ks", bracket=(1.9, 2.5))
    assert len(info.value.scan) == A.SCAN_POINTS


def test_fit_rejects_bad_input():
    with pytest.raises(DomainError):
        A.fit_lambda(1.0, "ad")
    with pytest.raises(DomainError):
        A.fit_lambda(1.0, "ks", bracket=(2.0, 1.0))


def test_unimodality_check():
    assert A._is_unimodal([3, 2, 1, 1, 2, 3], 0.0)
    assert not A._is_unimodal([3, 1, 2, 1, 3], 0.0)


# reference cells to two decimals, row by alpha; columns follow approx.default_columns()
REFERENCE_CRITICAL_VALUES = {
    0.5: [0.0] * 9,
    0.317: [0.22, 0.46, 0.32, 0.30, 0.25, 0.23, 0.11, 0.14, 0.17],
    0.1: [1.03, 1.61, 1.14, 1.05, 0.88, 0.80, 0.82, 0.99, 1.23],
    0.05: [1.60, 2.30, 1.63, 1.50, 1.26, 1.15, 1.35, 1.62, 2.03],
    0.01: [2.98, 3.91, 2.77, 2.54, 2.14, 1.96, 2.71, 3.25, 4.06],
}
REFERENCE_DEVIATIONS = {
    0.5: [0] * 9,
    0.317: [0, 111, 49, 37, 15, 5, -48, -37, -21],
    0.1: [0, 56, 10, 1, -15, -22, -21, -5, 19],
    0.05: [0, 44, 2, -6, -21, -28, -15, 2, 27],
    0.01: [0, 31, -7, -15, -28, -34, -9, 9, 36],
}


@pytest.fixture(scope="module")
def default_table():
    return A.quantile_table()


def test_default_table_cells(default_table):
    for alpha, vals, devs in zip(default_table.alphas, default_table.values, default_table.deviations_pct):
        for got, want in zip(vals, REFERENCE_CRITICAL_VALUES[alpha]):
            assert got == pytest.approx(want, abs=0.01)
        for got, want in zip(devs, REFERENCE_DEVIATIONS[alpha]):
            assert got == pytest.approx(want, abs=1.0)


def test_table_invariants(default_table):
    for j in range(len(default_table.columns)):
        column = [row[j] for row in default_table.values]
        assert column == sorted(column)
    assert all(row[0] == 0.0 for row in default_table.deviations_pct)


def test_laplace_columns_use_closed_form(default_table):
    for j, col in enumerate(default_table.columns):
        if not isinstance(col, D.ClassicalLaplace):
            continue
        for i, alpha in enumerate(default_table.alphas):
            closed = -col.s * math.log(2 * alpha)
            assert default_table.values[i][j] == pytest.approx(closed, abs=1e-10)
            assert D.quantile_by_root(col, 1 - alpha) == pytest.approx(closed, abs=1e-10)


def test_table_serialisations(default_table):
    header = default_table.header()
    assert header[0] == "alpha"
    assert len(header) == 1 + 2 * len(default_table.columns)
    assert header[1] == "bessel:sigma=1.0"
    assert header[10] == "dev_pct:bessel:sigma=1.0"
    assert set(default_table.as_dict()) == {"alphas", "columns", "values", "deviations_pct"}
    text = default_table.to_text()
    assert "2.98 (+0)" in text and "4.06 (+36)" in text


def test_table_custom_reference():
    table = A.quantile_table([0.1], [D.BesselK(1.0), D.MartinMaas(1.5)], reference=1)
    assert table.deviations_pct[0][1] == 0.0
    assert table.values[0][0] == pytest.approx(1.03, abs=0.01)
    with pytest.raises(DomainError):
        A.quantile_table([0.1], [D.BesselK(1.0)], reference=3)
    with pytest.raises(DomainError):
        A.quantile_table([1.0], [D.BesselK(1.0)])


def test_bessel_normal_crossings():
    xs = A.pdf_crossings(D.BesselK(1.0), D.ZeroMeanNormal(1.0), (0.0, 10.0))
    assert len(xs) == 2
    outer = xs[-1]
    for y in (outer + 0.1, 5.0, 9.0):
        assert D.BesselK(1.0).pdf(y) > D.ZeroMeanNormal(1.0).pdf(y)
    mirrored = A.pdf_crossings(D.BesselK(1.0), D.ZeroMeanNormal(1.0), (-10.0, 0.0))
    assert mirrored == pytest.approx([-x for x in reversed(xs)], abs=1e-10)


def test_crossings_of_identical_pdfs_are_empty():
    d = D.ClassicalLaplace(1.0)
    assert A.pdf_crossings(d, d, (-5.0, 5.0)) == []


def test_crossings_stable_under_refinement():
    pair = (D.BesselK(1.0), laplace(SQRT2))
    coarse = A.pdf_crossings(*pair, (0.0, 10.0), points=1000)
    fine = A.pdf_crossings(*pair, (0.0, 10.0), points=10_000)
    assert len(coarse) == len(fine) > 0
    assert all(abs(a - b) < 1e-8 for a, b in zip(coarse, fine))


def test_crossings_skip_singular_points():
    # the grid hits y=0 where the Bessel pdf is infinite
    xs = A.pdf_crossings(D.BesselK(1.0), D.ZeroMeanNormal(1.0), (-3.0, 3.0), points=601)
    assert len(xs) == 4
    assert xs == pytest.approx([-x for x in reversed(xs)], abs=1e-10)
    with pytest.raises(DomainError):
        A.pdf_crossings(D.BesselK(1.0), D.ZeroMeanNormal(1.0), (1.0, 1.0))
