"""Brute-force checks for the closed-form posterior summaries.

Quadrature integrates the posterior density directly and never calls the
moment or quantile formulas it is meant to check. Sampling maps seeded
uniforms through the quantile function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import _rng
from .errors import ConvergenceError
from .posterior import TruncatedGaussianPosterior

QUAD_TOL = 1e-11
QUAD_LIMIT = 500
# integration stops 12 standard units below min(location, bound); the mass
# left out is below exp(-72) relative
_CUTOFF = 12.0
_TAIL_MASS = 1e-31


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class SampleSet:
    draws: np.ndarray
    seed: int
    n: int


def _integration_range(p: TruncatedGaussianPosterior):
    u = p.standardized_location
    z_far = min(u, 0.0) - _CUTOFF
    far = p.bound + p.constraint.side.sign * p.scale * z_far
    lo, hi = sorted((far, p.bound))
    pts = [x for x in (p.location, p.bound - p.constraint.side.sign * p.scale) if lo < x < hi]
    return lo, hi, pts


def _integrate(p, fn, tol):
    lo, hi, pts = _integration_range(p)
    value, err, info = quad(
        fn,
        lo,
        hi,
        points=pts or None,
        epsabs=tol * 1e-2,
        epsrel=1e-14,
        limit=QUAD_LIMIT,
        full_output=1,
    )[:3]
    err += _TAIL_MASS * (1.0 + abs(lo)) ** 2
    if err > tol:
        raise ConvergenceError(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return QuadratureResult(value, err, int(info["neval"]))


def quad_moment(p: TruncatedGaussianPosterior, k: int, tol: float = QUAD_TOL) -> QuadratureResult:
    """k-th raw moment (k = 0, 1, 2) of the posterior by adaptive quadrature."""
    if k not in (0, 1, 2):
        raise ValueError(f"moment order must be 0, 1 or 2, got {k}")
    return _integrate(p, lambda y: y**k * p.pdf(y), tol)


def quad_central_moment(p: TruncatedGaussianPosterior, center: float, k: int = 2, tol: float = QUAD_TOL):
    return _integrate(p, lambda y: (y - center) ** k * p.pdf(y), tol)


def quad_mean_sd(p: TruncatedGaussianPosterior):
    """Posterior mean and standard deviation, both from quadrature."""
    mean = quad_moment(p, 1).value
    var = quad_central_moment(p, mean, 2).value
    return mean, math.sqrt(var)


def sample(p: TruncatedGaussianPosterior, n: int, seed: int, workers: int = 1) -> SampleSet:
    """``n`` inverse-CDF draws from the posterior, reproducible from ``(n, seed)``."""
    n = int(n)
    if n < 1:
        raise ValueError("sample size must be at least 1")
    parts = _rng.map_chunks(lambda rng, size: p.quantile(_rng.open_uniform(rng, size)), seed, n, workers)
    return SampleSet(np.concatenate(parts), int(seed), n)


def ks_distance(p: TruncatedGaussianPosterior, draws) -> float:
    """Kolmogorov-Smirnov distance between the draws and the posterior cdf."""
    x = np.sort(np.asarray(draws, dtype=float))
    n = x.size
    f = np.asarray(p.cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
