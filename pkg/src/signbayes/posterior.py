"""Post-data density of a sign-constrained measurand.

A measurement ``y1 +/- sigma`` with Gaussian sampling density, combined
with a flat prior restricted to one side of a known bound, gives a
Gaussian truncated at that bound. Every summary is computed on a
standardized variable

    z = s * (y0 - bound) / scale,      u = s * (location - bound) / scale,

with ``s = +1`` for a non-positive and ``s = -1`` for a non-negative
measurand, so that internally the support is always ``z <= 0`` and the
untruncated density is N(u, 1).

For ``u >= 0`` the normalizer ``erfc(u/sqrt2)/2`` underflows quickly, so
those branches are written through ``erfcx`` and, for the moments, through
the continued-fraction tails of erfc, which avoids the cancellation in
``u - lambda(u)`` for large ``u``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidMeasurementError
from .specfun import (
    SQRT2,
    _CF_SWITCH,
    erf,
    erfc,
    erfc_cf_tails,
    erfcx,
    gaussian_pdf,
    inv_erfc,
)

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
# below this the closed-form quantile target is too close to underflow
_TINY_TARGET = 1e-280


class Side(enum.Enum):
    NON_POSITIVE = "negative"
    NON_NEGATIVE = "positive"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower().replace("_", "-")
        aliases = {
            "negative": cls.NON_POSITIVE,
            "non-positive": cls.NON_POSITIVE,
            "nonpositive": cls.NON_POSITIVE,
            "positive": cls.NON_NEGATIVE,
            "non-negative": cls.NON_NEGATIVE,
            "nonnegative": cls.NON_NEGATIVE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown sign {text!r}; use 'negative' or 'positive'") from None

    @property
    def sign(self):
        return 1.0 if self is Side.NON_POSITIVE else -1.0


@dataclass(frozen=True)
class Measurement:
    """One measurement result ``value +/- sigma`` (standard uncertainty)."""

    value: float
    sigma: float

    def __post_init__(self):
        value, sigma = float(self.value), float(self.sigma)
        if not math.isfinite(value):
            raise InvalidMeasurementError(f"measurement value must be finite, got {self.value!r}")
        if not (math.isfinite(sigma) and sigma > 0.0):
            raise InvalidMeasurementError(f"sigma must be positive and finite, got {self.sigma!r}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "sigma", sigma)


@dataclass(frozen=True)
class SignConstraint:
    """Prior support: the half-line on one side of ``bound``."""

    side: Side = Side.NON_POSITIVE
    bound: float = 0.0

    def __post_init__(self):
        if not isinstance(self.side, Side):
            object.__setattr__(self, "side", Side.parse(self.side))
        bound = float(self.bound)
        if not math.isfinite(bound):
            raise ValueError(f"constraint bound must be finite, got {self.bound!r}")
        object.__setattr__(self, "bound", bound)

    def contains(self, y0):
        y0 = np.asarray(y0, dtype=float)
        if self.side is Side.NON_POSITIVE:
            return y0 <= self.bound
        return y0 >= self.bound

    def describe(self):
        op = "<=" if self.side is Side.NON_POSITIVE else ">="
        return f"y {op} {self.bound:g}"


NON_POSITIVE = SignConstraint(Side.NON_POSITIVE, 0.0)
NON_NEGATIVE = SignConstraint(Side.NON_NEGATIVE, 0.0)


# --- standardized half-line (support z <= 0, untruncated N(u, 1)) ---------


def _log_mass(u):
    """log P(Z <= 0) for Z ~ N(u, 1)."""
    x = u / SQRT2
    if u >= 0.0:
        return math.log(erfcx(x)) - x * x - math.log(2.0)
    return math.log(0.5 * erfc(x))


def _pdf_z(z, u):
    z = np.asarray(z, dtype=float)
    inside = z <= 0.0
    zc = np.where(inside, z, 0.0)
    if u >= 0.0:
        with np.errstate(under="ignore"):
            dens = _SQRT_2_OVER_PI * np.exp(zc * u - 0.5 * zc * zc) / erfcx(u / SQRT2)
    else:
        dens = 2.0 * gaussian_pdf(zc - u) / erfc(u / SQRT2)
    return np.where(inside, dens, 0.0)


def _log_cdf_z(z, u):
    """log P(Z <= z | Z <= 0) for scalar z < 0 and u >= 0."""
    a = (u - z) / SQRT2
    b = u / SQRT2
    return z * u - 0.5 * z * z + math.log(erfcx(a)) - math.log(erfcx(b))


def _cdf_z(z, u):
    z = np.asarray(z, dtype=float)
    below = z < 0.0
    zc = np.where(below, z, 0.0)
    if u >= 0.0:
        a = (u - zc) / SQRT2
        with np.errstate(under="ignore"):
            val = np.exp(zc * u - 0.5 * zc * zc) * erfcx(a) / erfcx(u / SQRT2)
    else:
        val = erfc((u - zc) / SQRT2) / erfc(u / SQRT2)
    return np.where(below, np.clip(val, 0.0, 1.0), 1.0)


def _sf_z(z, u):
    """P(Z > z | Z <= 0), computed without forming 1 - cdf where avoidable."""
    z = np.asarray(z, dtype=float)
    below = z < 0.0
    zc = np.where(below, z, 0.0)
    if u >= 0.0:
        a = (u - zc) / SQRT2
        with np.errstate(under="ignore"):
            log_ratio = np.log(erfcx(a)) - math.log(erfcx(u / SQRT2))
            val = -np.expm1(zc * u - 0.5 * zc * zc + log_ratio)
    else:
        hi = (u - zc) / SQRT2  # >= lo
        lo = u / SQRT2
        both_neg = hi <= 0.0
        # erfc(lo) - erfc(hi), arranged to avoid cancellation
        diff = np.where(
            lo >= 0.0,
            erfc(lo) - erfc(hi),
            np.where(both_neg, erfc(-hi) - erfc(-lo), erf(hi) - erf(lo)),
        )
        val = diff / erfc(lo)
    return np.where(below, np.clip(val, 0.0, 1.0), 0.0)


def _ppf_z_fallback(p, u):
    # u >= 0 deep tail: solve log F(z) = log p on z < 0
    target = math.log(p)
    hi = 0.0
    lo = 2.0 * target / max(u, 1.0) - 1.0
    while _log_cdf_z(lo, u) > target:
        hi, lo = lo, 2.0 * lo
    return brentq(lambda z: _log_cdf_z(z, u) - target, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=500)


def _ppf_z(p, u):
    p = np.asarray(p, dtype=float)
    out = np.empty_like(p)
    lo_mass = erfc(u / SQRT2)
    if u < 0.0:
        upper = p > 0.5
        q = 1.0 - p[upper]
        out[upper] = u + SQRT2 * inv_erfc(erfc(-u / SQRT2) + q * lo_mass)
        out[~upper] = u - SQRT2 * inv_erfc(p[~upper] * lo_mass)
        return np.minimum(out, 0.0)
    target = p * lo_mass
    closed = target > _TINY_TARGET
    out[closed] = u - SQRT2 * inv_erfc(target[closed])
    for idx in np.flatnonzero(~closed):
        out.flat[idx] = _ppf_z_fallback(float(p.flat[idx]), u)
    return np.minimum(out, 0.0)


def _moments_z(u):
    """Mean and variance of N(u, 1) truncated to z <= 0."""
    x = u / SQRT2
    if x >= _CF_SWITCH:
        t1, t2 = erfc_cf_tails(x)
        t1, t2 = float(t1), float(t2)
        return -SQRT2 * t1, 2.0 * t1 * (t2 - t1)
    if u >= 0.0:
        lam = _SQRT_2_OVER_PI / erfcx(x)
    else:
        lam = 2.0 * gaussian_pdf(u) / erfc(x)
    return u - lam, 1.0 + u * lam - lam * lam


def _scalar_or_array(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


@dataclass(frozen=True)
class TruncatedGaussianPosterior:
    """Gaussian ``N(location, scale^2)`` restricted to the constraint's half-line."""

    location: float
    scale: float
    constraint: SignConstraint = field(default_factory=lambda: NON_POSITIVE)

    def __post_init__(self):
        location, scale = float(self.location), float(self.scale)
        if not math.isfinite(location):
            raise InvalidMeasurementError(f"location must be finite, got {self.location!r}")
        if not (math.isfinite(scale) and scale > 0.0):
            raise InvalidMeasurementError(f"scale must be positive and finite, got {self.scale!r}")
        object.__setattr__(self, "location", location)
        object.__setattr__(self, "scale", scale)
        if not math.isfinite(self.log_normalizer):
            raise ArithmeticError("posterior normalizer is not representable")

    @property
    def bound(self):
        return self.constraint.bound

    @property
    def _s(self):
        return self.constraint.side.sign

    @property
    def standardized_location(self):
        """``u``: signed distance of the location from the bound, in scale units."""
        return self._s * (self.location - self.bound) / self.scale

    @property
    def log_normalizer(self):
        """log of the Gaussian mass lying inside the support."""
        return _log_mass(self.standardized_location)

    def _to_z(self, y0):
        return self._s * (np.asarray(y0, dtype=float) - self.bound) / self.scale

    def _from_z(self, z):
        return self.bound + self._s * self.scale * z

    @cached_property
    def _pdf_prefactor(self):
        u = self.standardized_location
        if u >= 0.0:
            return _SQRT_2_OVER_PI / erfcx(u / SQRT2) / self.scale
        return _SQRT_2_OVER_PI / erfc(u / SQRT2) / self.scale

    def pdf(self, y0):
        """Density at ``y0``; zero outside the support."""
        if np.ndim(y0) == 0:
            # scalar path for quadrature integrands
            z = self._s * (float(y0) - self.bound) / self.scale
            if z > 0.0:
                return 0.0
            u = self.standardized_location
            expo = z * u - 0.5 * z * z if u >= 0.0 else -0.5 * (z - u) ** 2
            return self._pdf_prefactor * math.exp(expo)
        val = _pdf_z(self._to_z(y0), self.standardized_location) / self.scale
        return val

    def cdf(self, q):
        """P(y <= q)."""
        z = self._to_z(q)
        u = self.standardized_location
        val = _cdf_z(z, u) if self._s > 0 else _sf_z(z, u)
        return _scalar_or_array(val, q)

    def quantile(self, prob):
        """Inverse of :meth:`cdf` for ``0 < prob < 1``."""
        p = np.asarray(prob, dtype=float)
        if np.any(~((p > 0.0) & (p < 1.0))):
            raise ValueError(f"quantile probability must lie in (0, 1), got {prob!r}")
        u = self.standardized_location
        z = _ppf_z(p, u) if self._s > 0 else _ppf_z(1.0 - p, u)
        return _scalar_or_array(self._from_z(z), prob)

    def mean(self):
        m, _ = _moments_z(self.standardized_location)
        return float(self._from_z(m))

    def var(self):
        _, v = _moments_z(self.standardized_location)
        return self.scale * self.scale * v

    def sd(self):
        _, v = _moments_z(self.standardized_location)
        return self.scale * math.sqrt(v)

    def median(self):
        return self.quantile(0.5)

    def mode(self):
        """Location if it lies inside the support, otherwise the bound."""
        if self.standardized_location < 0.0:
            return self.location
        return self.bound

    def median_residual(self, value):
        """Residual of the implicit median equation at ``value``.

        In standardized units ``-2 erf((z - u)/sqrt2) - (1 + erf(u/sqrt2))``,
        which vanishes at the median.
        """
        u = self.standardized_location
        z = float(self._to_z(value))
        return -2.0 * erf((z - u) / SQRT2) - (1.0 + erf(u / SQRT2))

    def support_interval(self):
        if self._s > 0:
            return (-math.inf, self.bound)
        return (self.bound, math.inf)


def make_posterior(m: Measurement, c: SignConstraint = NON_POSITIVE) -> TruncatedGaussianPosterior:
    """Post-data density of the measurand given one measurement and a sign constraint."""
    if not isinstance(m, Measurement):
        m = Measurement(*m)
    return TruncatedGaussianPosterior(m.value, m.sigma, c)
