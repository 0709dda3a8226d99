"""Ferrers functions of the first kind via Gauss hypergeometric series.

Evaluation routes (u/v representation, angle form, Fourier sine series),
convergence classification of the Fourier series, trigonometric lemma
diagnostics and an mpmath-backed reference oracle.
"""

from .errors import DomainError, ParseError
from .ferrers import (
    ConvergenceClass,
    CutPlanePoint,
    DegreeOrder,
    SeriesTrace,
    ThetaPoint,
    accelerated_fourier_sum,
    classify_convergence,
    coefficient_asymptotic,
    eval_theorem1,
    eval_theta,
    ferrers_p,
    fourier_coefficient,
    fourier_coefficients,
    fourier_partial_sum,
)
from .hyp2f1 import (
    CircleRegime,
    HypParams,
    Method,
    ValueWithError,
    circle_2f1,
    circle_regime,
    gauss_2f1,
)
from .special import gamma, gamma_ratio, log_gamma, pochhammer, rgamma

__all__ = [
    "CircleRegime", "ConvergenceClass", "CutPlanePoint", "DegreeOrder", "DomainError",
    "HypParams", "Method", "ParseError", "SeriesTrace", "ThetaPoint", "ValueWithError",
    "accelerated_fourier_sum", "circle_2f1", "circle_regime", "classify_convergence",
    "coefficient_asymptotic", "eval_theorem1", "eval_theta", "ferrers_p",
    "fourier_coefficient", "fourier_coefficients", "fourier_partial_sum", "gamma",
    "gamma_ratio", "gauss_2f1", "log_gamma", "pochhammer", "rgamma",
]
