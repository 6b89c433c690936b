"""Sampling-distribution studies and estimator curve tables."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _rng
from .posterior import NON_POSITIVE, Measurement, SignConstraint, TruncatedGaussianPosterior, make_posterior


@dataclass(frozen=True)
class CoverageReport:
    true_value: float
    sigma: float
    n_trials: int
    frac_positive: float
    frac_ci_all_positive: float
    seed: int

    FIELDS = ("true_value", "sigma", "n_trials", "frac_positive", "frac_ci_all_positive", "seed")


def coverage(true_value: float, sigma: float, n: int, seed: int, workers: int = 1) -> CoverageReport:
    """Simulate ``n`` results ``y ~ N(true_value, sigma^2)``.

    Counts how often the result is positive and how often the whole
    interval ``y +/- sigma`` lies above zero.
    """
    true_value, sigma, n = float(true_value), float(sigma), int(n)
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not math.isfinite(true_value):
        raise ValueError("true value must be finite")
    if n < 1:
        raise ValueError("number of trials must be at least 1")
    if true_value > 0.0:
        warnings.warn("coverage study of a positive true value; the measurand is assumed non-positive", stacklevel=2)

    def count(rng, size):
        y = true_value + sigma * rng.standard_normal(size)
        return int(np.count_nonzero(y > 0.0)), int(np.count_nonzero(y - sigma > 0.0))

    counts = _rng.map_chunks(count, seed, n, workers)
    pos = sum(c[0] for c in counts)
    ci_pos = sum(c[1] for c in counts)
    return CoverageReport(true_value, sigma, n, pos / n, ci_pos / n, int(seed))


class CurveKind(enum.Enum):
    MEAN_BAND = "mean"
    MEDIAN_QUARTILES = "median"


@dataclass(frozen=True)
class CurveRow:
    y1: float
    estimate: float
    band_lo: float
    band_hi: float
    orthodox: float


CURVE_COLUMNS = ("y1", "estimate", "band_lo", "band_hi", "orthodox")
POSTERIOR_COLUMNS = ("y0", "pdf", "cdf")


def _grid(start, stop, step):
    if not (math.isfinite(start) and math.isfinite(stop) and start < stop):
        raise ValueError(f"need start < stop, got {start}, {stop}")
    if not (math.isfinite(step) and step > 0.0):
        raise ValueError(f"step must be positive, got {step}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def estimator_curve(kind, start: float = -4.0, stop: float = 4.0, step: float = 0.05):
    """Bayesian estimate and band versus the measured value (unit sigma, y <= 0).

    ``mean`` gives mean and mean +/- sd, ``median`` the median and
    quartiles. The upper band is clipped at the bound.
    """
    if not isinstance(kind, CurveKind):
        kind = CurveKind(str(kind).lower())
    rows = []
    for y1 in _grid(start, stop, step):
        y1 = round(float(y1), 12)
        p = TruncatedGaussianPosterior(y1, 1.0, NON_POSITIVE)
        if kind is CurveKind.MEAN_BAND:
            est, sd = p.mean(), p.sd()
            lo, hi = est - sd, est + sd
        else:
            est = p.median()
            lo, hi = p.quantile(0.25), p.quantile(0.75)
        rows.append(CurveRow(y1, est, lo, min(hi, p.bound), y1))
    return rows


def parse_grid(text: str):
    """Parse ``lo:hi:n`` into ``(lo, hi, n)``."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like lo:hi:n, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    n = int(parts[2])
    return lo, hi, n


def posterior_curve(m: Measurement, c: SignConstraint = NON_POSITIVE, grid=(-15.0, 0.0, 301)):
    """Rows ``(y0, pdf, cdf)`` on ``n`` equally spaced points of ``[lo, hi]``."""
    lo, hi, n = grid
    lo, hi, n = float(lo), float(hi), int(n)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi) or n < 2:
        raise ValueError(f"invalid grid {grid!r}")
    p = m if isinstance(m, TruncatedGaussianPosterior) else make_posterior(m, c)
    y0 = np.linspace(lo, hi, n)
    pdf = p.pdf(y0)
    cdf = p.cdf(y0)
    return [(float(a), float(b), float(d)) for a, b, d in zip(y0, pdf, cdf)]
