"""Bayesian inference of a sign-constrained quantity from Gaussian measurements."""

from .errors import CampaignParseError, ConvergenceError, EmptyCampaignError, InvalidMeasurementError
from .estimators import CredibleSummary, LossKind, PointEstimate, estimate, minimize_expected_loss, summarize
from .fusion import Campaign, FusionResult, fuse_to_posterior, weighted_mean
from .posterior import (
    NON_NEGATIVE,
    NON_POSITIVE,
    Measurement,
    Side,
    SignConstraint,
    TruncatedGaussianPosterior,
    make_posterior,
)

__version__ = "0.1.0"

__all__ = [
    "Campaign",
    "CampaignParseError",
    "ConvergenceError",
    "CredibleSummary",
    "EmptyCampaignError",
    "FusionResult",
    "InvalidMeasurementError",
    "LossKind",
    "Measurement",
    "NON_NEGATIVE",
    "NON_POSITIVE",
    "PointEstimate",
    "Side",
    "SignConstraint",
    "TruncatedGaussianPosterior",
    "estimate",
    "fuse_to_posterior",
    "make_posterior",
    "minimize_expected_loss",
    "summarize",
    "weighted_mean",
]
