"""Exact invariants of rank-metric codes: generalized weights, binomial
moments, zeta functions, MacWilliams transforms and classification."""

from .budget import EnumerationBudgetError
from .classify import ClassificationReport, classify, minimal_bmd_index, wei_dual_weights
from .gflinalg import FieldSpec, Subspace, gf
from .invariants import InvariantProfile, binomial_moments, profile, rank_distribution, weight_enumerator
from .qcombinat import HomogeneousPoly, TruncatedSeries, qbin
from .rmcode import RankMetricCode, dual, generalized_weights, load_code, make_code
from .zeta import ZetaProfile, beta_coefficients, zeta_polynomial, zeta_series

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "EnumerationBudgetError",
    "FieldSpec",
    "HomogeneousPoly",
    "InvariantProfile",
    "RankMetricCode",
    "Subspace",
    "TruncatedSeries",
    "ZetaProfile",
    "beta_coefficients",
    "binomial_moments",
    "classify",
    "dual",
    "generalized_weights",
    "gf",
    "load_code",
    "make_code",
    "minimal_bmd_index",
    "profile",
    "qbin",
    "rank_distribution",
    "wei_dual_weights",
    "weight_enumerator",
    "zeta_polynomial",
    "zeta_series",
]
