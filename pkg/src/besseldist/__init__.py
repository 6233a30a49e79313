"""The zero-order Bessel distribution, its Laplace and Martin-Maas approximations,
seeded samplers, distances and critical-value tables."""

__version__ = "0.1.0"

from .dist import (
    BesselK,
    ClassicalLaplace,
    LaplaceMean,
    MartinMaas,
    SymmetricGAL,
    ZeroMeanNormal,
    cdf,
    chf,
    format_spec,
    mgf,
    moments,
    parse_spec,
    pdf,
    quantile,
    sf,
)
from .errors import (
    AmbiguityError,
    DomainError,
    QuadratureError,
    SingularityError,
    UnsupportedClosedForm,
)
from .approx import fit_lambda, ks_distance, pdf_crossings, quantile_table, wasserstein_distance
from .sampling import SampleBatch, sample

__all__ = [
    "AmbiguityError",
    "BesselK",
    "ClassicalLaplace",
    "DomainError",
    "LaplaceMean",
    "MartinMaas",
    "QuadratureError",
    "SampleBatch",
    "SingularityError",
    "SymmetricGAL",
    "UnsupportedClosedForm",
    "ZeroMeanNormal",
    "cdf",
    "chf",
    "fit_lambda",
    "format_spec",
    "ks_distance",
    "mgf",
    "moments",
    "parse_spec",
    "pdf",
    "pdf_crossings",
    "quantile",
    "quantile_table",
    "sample",
    "sf",
    "wasserstein_distance",
]
