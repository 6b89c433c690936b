"""Inverse-variance weighted mean of independent Gaussian measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyCampaignError
from .posterior import NON_POSITIVE, Measurement, SignConstraint, TruncatedGaussianPosterior


@dataclass(frozen=True)
class Campaign:
    """Ordered measurements of one quantity; entries may be ``(value, sigma)`` pairs."""

    measurements: tuple
    label: str = ""

    def __post_init__(self):
        items = tuple(m if isinstance(m, Measurement) else Measurement(*m) for m in self.measurements)
        if not items:
            raise EmptyCampaignError("campaign has no measurements")
        object.__setattr__(self, "measurements", items)

    def __len__(self):
        return len(self.measurements)

    def __iter__(self):
        return iter(self.measurements)


@dataclass(frozen=True)
class FusionResult:
    ybar: float
    sigma_ybar: float
    n: int
    chi2: float

    def as_measurement(self) -> Measurement:
        return Measurement(self.ybar, self.sigma_ybar)


def weighted_mean(c: Campaign) -> FusionResult:
    """Weighted sample mean, its standard deviation and the residual chi-square.

    Sums use :func:`math.fsum`, so the result does not depend on the order
    of the measurements. ``chi2`` is reported only; it never rescales sigma.
    """
    if not isinstance(c, Campaign):
        c = Campaign(c)
    weights = [1.0 / (m.sigma * m.sigma) for m in c]
    wsum = math.fsum(weights)
    var = 1.0 / wsum
    # offsets from the smallest value keep identical inputs exact
    ref = min(m.value for m in c)
    ybar = ref + math.fsum(w * (m.value - ref) for w, m in zip(weights, c)) / wsum
    chi2 = math.fsum(((m.value - ybar) / m.sigma) ** 2 for m in c)
    return FusionResult(ybar=ybar, sigma_ybar=math.sqrt(var), n=len(c), chi2=chi2)


def fuse_to_posterior(c: Campaign, constraint: SignConstraint = NON_POSITIVE) -> TruncatedGaussianPosterior:
    """Posterior of the measurand given every measurement in ``c``.

    The product of Gaussian likelihoods depends on the data only through
    the weighted mean and its variance.
    """
    res = weighted_mean(c)
    return TruncatedGaussianPosterior(res.ybar, res.sigma_ybar, constraint)
