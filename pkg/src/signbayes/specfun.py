"""Error-function family used by the truncated-Gaussian posterior.

All functions accept a float or a numpy array and return the same kind.
``erf``/``erfc`` delegate to :mod:`scipy.special`; ``erfcx`` is evaluated
here so that the continued-fraction tail terms are also available to the
moment formulas (see :func:`erfc_cf_tails`).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

SQRT_PI = math.sqrt(math.pi)
SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# exp(x*x) overflows beyond this
_ERFCX_NEG_LIMIT = -math.sqrt(math.log(np.finfo(float).max))
_CF_SWITCH = 2.0
_CF_TERMS = 64
_ASYMPTOTIC_SWITCH = 1.0e4


def _as_output(result, scalar):
    if scalar:
        return float(np.asarray(result).reshape(()))
    return result


def _prepare(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def erf(x):
    """Error function."""
    arr, scalar = _prepare(x)
    return _as_output(special.erf(arr), scalar)


def erfc(x):
    """Complementary error function; underflows silently to 0 for x > ~26.5."""
    arr, scalar = _prepare(x)
    return _as_output(special.erfc(arr), scalar)


def erfc_cf_tails(x):
    """Tail terms ``(t1, t2)`` of the Laplace continued fraction for erfc.

    With ``t_n = (n/2) / (x + t_{n+1})``, erfc(x) = exp(-x^2) / (sqrt(pi) (x + t1)).
    Accurate to full double precision for x >= 2.
    """
    x = np.asarray(x, dtype=float)
    t = np.zeros_like(x)
    t2 = t
    for n in range(_CF_TERMS, 0, -1):
        t = (0.5 * n) / (x + t)
        if n == 2:
            t2 = t
    return t, t2


def _erfcx_asymptotic(x):
    # 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
    inv = 1.0 / (2.0 * x * x)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 6):
        term = -term * (2 * k - 1) * inv
        total = total + term
    return total / (x * SQRT_PI)


def _erfcx_nonneg(x):
    out = np.empty_like(x)
    small = x < _CF_SWITCH
    huge = x >= _ASYMPTOTIC_SWITCH
    mid = ~(small | huge)
    xs = x[small]
    out[small] = np.exp(xs * xs) * special.erfc(xs)
    t1, _ = erfc_cf_tails(x[mid])
    out[mid] = 1.0 / (SQRT_PI * (x[mid] + t1))
    out[huge] = _erfcx_asymptotic(x[huge])
    return out


def erfcx(x):
    """Scaled complementary error function ``exp(x^2) * erfc(x)``.

    Raises
    ------
    OverflowError
        If any argument is so negative that ``exp(x^2)`` overflows.
    """
    arr, scalar = _prepare(x)
    if np.any(np.isnan(arr)):
        raise ValueError("erfcx: argument must not be NaN")
    if np.any(arr < _ERFCX_NEG_LIMIT):
        raise OverflowError("erfcx: exp(x^2) overflows for x < %.4f" % _ERFCX_NEG_LIMIT)
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    neg = flat < 0
    out[~neg] = _erfcx_nonneg(flat[~neg])
    xn = flat[neg]
    out[neg] = 2.0 * np.exp(xn * xn) - _erfcx_nonneg(-xn)
    return _as_output(out.reshape(arr.shape), scalar)


def inv_erfc(p):
    """Inverse of :func:`erfc` on the open interval (0, 2).

    Starts from :func:`scipy.special.erfcinv` and applies one Newton step on
    erfc, which keeps the roundtrip at the rounding level of erfc itself.
    """
    arr, scalar = _prepare(p)
    if np.any(~((arr > 0.0) & (arr < 2.0))):
        raise ValueError("inv_erfc: argument must lie in the open interval (0, 2)")
    x = special.erfcinv(arr)
    # erfc'(x) = -2/sqrt(pi) exp(-x^2)
    with np.errstate(over="ignore", invalid="ignore"):
        deriv = -2.0 / SQRT_PI * np.exp(-x * x)
        step = (special.erfc(x) - arr) / deriv
    step = np.where(np.isfinite(step), step, 0.0)
    return _as_output(x - step, scalar)


def gaussian_pdf(x):
    """Standard normal density; 0 once exp(-x^2/2) underflows."""
    arr, scalar = _prepare(x)
    return _as_output(INV_SQRT_2PI * np.exp(-0.5 * arr * arr), scalar)
