"""Point estimates as minimizers of posterior expected loss."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy.integrate import quad

from .errors import ConvergenceError
from .posterior import TruncatedGaussianPosterior

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_GOLDEN_ITERATIONS = 500


class LossKind(enum.Enum):
    SQUARED_ERROR = "squared"
    ABSOLUTE_DIFFERENCE = "absolute"
    ZERO_ONE = "zero-one"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower().replace("_", "-")
        aliases = {
            "squared": cls.SQUARED_ERROR,
            "squared-error": cls.SQUARED_ERROR,
            "quadratic": cls.SQUARED_ERROR,
            "mean": cls.SQUARED_ERROR,
            "absolute": cls.ABSOLUTE_DIFFERENCE,
            "absolute-difference": cls.ABSOLUTE_DIFFERENCE,
            "median": cls.ABSOLUTE_DIFFERENCE,
            "zero-one": cls.ZERO_ONE,
            "zeroone": cls.ZERO_ONE,
            "0-1": cls.ZERO_ONE,
            "mode": cls.ZERO_ONE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown loss {text!r}") from None


@dataclass(frozen=True)
class PointEstimate:
    value: float
    loss: LossKind
    posterior: TruncatedGaussianPosterior


@dataclass(frozen=True)
class CredibleSummary:
    mean: float
    sd: float
    median: float
    q_lo: float
    q_hi: float
    prob_lo: float
    prob_hi: float

    def as_dict(self):
        return {
            "mean": self.mean,
            "sd": self.sd,
            "median": self.median,
            "q_lo": self.q_lo,
            "q_hi": self.q_hi,
            "prob_lo": self.prob_lo,
            "prob_hi": self.prob_hi,
        }


def squared_loss(err):
    return err * err


def absolute_loss(err):
    return abs(err)


def expected_loss(p: TruncatedGaussianPosterior, estimate: float, loss: Callable[[float], float]) -> float:
    """Posterior expectation of ``loss(estimate - y0)``, by adaptive quadrature."""
    # the far end leaves out posterior mass 1e-16
    if p.constraint.side.sign > 0:
        lo, hi = p.quantile(1e-16), p.bound
    else:
        lo, hi = p.bound, p.quantile(1.0 - 1e-16)
    pts = [x for x in (estimate, p.median()) if lo < x < hi]
    val, _ = quad(
        lambda y0: loss(estimate - y0) * p.pdf(y0),
        lo,
        hi,
        points=pts or None,
        epsabs=1e-15,
        epsrel=1e-13,
        limit=400,
    )
    return val


def golden_section(f, a, b, tol, max_iter=MAX_GOLDEN_ITERATIONS):
    """Minimize a unimodal ``f`` on ``[a, b]`` to bracket width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            return 0.5 * (a + b)
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    raise ConvergenceError(f"golden-section search did not reach tol={tol:g} in {max_iter} iterations")


def minimize_expected_loss(p: TruncatedGaussianPosterior, loss: Callable[[float], float]) -> float:
    """Estimate minimizing the expected ``loss`` over the posterior.

    The search bracket runs from the 1e-6 quantile (the 1 - 1e-6 quantile
    for a non-negative measurand) to the bound.
    """
    if p.constraint.side.sign > 0:
        a, b = p.quantile(1e-6), p.bound
    else:
        a, b = p.bound, p.quantile(1.0 - 1e-6)
    return golden_section(lambda e: expected_loss(p, e, loss), a, b, tol=1e-8 * p.scale)


def estimate(
    p: TruncatedGaussianPosterior,
    loss: LossKind | str,
    custom: Optional[Callable[[float], float]] = None,
) -> PointEstimate:
    """Optimal estimate under ``loss``; ``custom`` supplies the handle for ``LossKind.CUSTOM``."""
    if callable(loss):
        custom, loss = loss, LossKind.CUSTOM
    if not isinstance(loss, LossKind):
        loss = LossKind.parse(loss)
    if loss is LossKind.SQUARED_ERROR:
        value = p.mean()
    elif loss is LossKind.ABSOLUTE_DIFFERENCE:
        value = p.median()
    elif loss is LossKind.ZERO_ONE:
        value = p.mode()
    else:
        if custom is None:
            raise ValueError("LossKind.CUSTOM needs a loss-function handle")
        value = minimize_expected_loss(p, custom)
    return PointEstimate(value, loss, p)


def summarize(p: TruncatedGaussianPosterior, prob_lo: float = 0.25, prob_hi: float = 0.75) -> CredibleSummary:
    if not (0.0 < prob_lo < 0.5 < prob_hi < 1.0):
        raise ValueError(f"need 0 < prob_lo < 0.5 < prob_hi < 1, got ({prob_lo}, {prob_hi})")
    return CredibleSummary(
        mean=p.mean(),
        sd=p.sd(),
        median=p.median(),
        q_lo=p.quantile(prob_lo),
        q_hi=p.quantile(prob_hi),
        prob_lo=float(prob_lo),
        prob_hi=float(prob_hi),
    )
