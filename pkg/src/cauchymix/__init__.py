"""Analytic dually flat geometry of mixtures of two prescribed Cauchy densities."""

from .bregman import (
    DualPair,
    Generator,
    bregman_divergence,
    dual_coord,
    eguchi_metric_fd,
    fenchel_young,
    jensen_divergence,
    jensen_diversity,
    legendre_dual_value,
    primal_coord,
    separable_riemannian_distance,
)
from .cauchy import CauchyParam, entropy, js_half_cauchy, js_skewed_cauchy, kl_cauchy_to_mixture, pdf
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    GeometryError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    OutOfRangeError,
    ParamError,
    WeightError,
)
from .mixture import (
    CANONICAL,
    CauchyMixtureFamily,
    cross_entropy_p0_to_mixture,
    dual_value_in_theta,
    generator,
    jeffreys_between_mixtures,
    js_between_mixtures,
    kl_between_mixtures,
    metric,
    mixture_entropy,
    mixture_pdf,
)

__version__ = "0.1.0"
