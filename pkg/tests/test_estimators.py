
import numpy as np
import pytest

from signbayes import ConvergenceError
from signbayes.estimators import (
    LossKind,
    absolute_loss,
    estimate,
    expected_loss,
    golden_section,
    minimize_expected_loss,
    squared_loss,
    summarize,
)
from signbayes.posterior import NON_NEGATIVE, TruncatedGaussianPosterior


def post(loc, scale=1.0, c=None):
    return TruncatedGaussianPosterior(loc, scale) if c is None else TruncatedGaussianPosterior(loc, scale, c)


def asymmetric(err):
    return err * err if err > 0 else 2 * err * err


def brute_force_argmin(loc, loss, n_y=200_001):
    """Minimize expected loss on candidate grids (coarse, then fine), integrating on a dense y-grid."""
    y = np.linspace(min(loc, 0) - 12, 0, n_y)
    w = np.exp(-0.5 * (y - loc) ** 2)
    w[0] *= 0.5
    w[-1] *= 0.5
    w /= w.sum()

    def best(cands):
        risks = [np.dot(w, loss(e - y)) for e in cands]
        return cands[int(np.argmin(risks))]

    coarse = best(np.linspace(-3, 0, 301))
    fine = np.linspace(coarse - 0.01, min(coarse + 0.01, 0.0), 201)
    return best(fine), fine[1] - fine[0]


def test_dispatch_to_closed_forms():
    p = post(4.31, 3.76)
    assert estimate(p, LossKind.SQUARED_ERROR).value == p.mean()
    assert estimate(p, LossKind.ABSOLUTE_DIFFERENCE).value == p.median()
    assert estimate(p, LossKind.ZERO_ONE).value == p.mode()
    assert estimate(p, "absolute").value == pytest.approx(-1.45, abs=0.02)
    assert estimate(post(0.0), "squared").value == pytest.approx(-0.7978845608, abs=1e-10)
    assert estimate(post(-5.0), "zero-one").value == -5.0


@pytest.mark.parametrize("loc", np.linspace(-4, 4, 9))
def test_generic_minimizer_matches_closed_forms(loc):
    p = post(loc)
    assert minimize_expected_loss(p, squared_loss) == pytest.approx(p.mean(), abs=1e-6)
    assert minimize_expected_loss(p, absolute_loss) == pytest.approx(p.median(), abs=1e-6)


def test_generic_minimizer_scaled_and_mirrored():
    p = post(4.31, 3.76)
    assert minimize_expected_loss(p, absolute_loss) == pytest.approx(p.median(), abs=1e-6 * 3.76)
    q = post(1.0, 2.0, NON_NEGATIVE)
    assert minimize_expected_loss(q, squared_loss) == pytest.approx(q.mean(), abs=1e-6 * 2)


def test_asymmetric_loss_against_brute_force():
    p = post(0.0)
    got = estimate(p, asymmetric).value
    ref, h = brute_force_argmin(0.0, lambda e: np.where(e > 0, e * e, 2 * e * e))
    assert abs(got - ref) <= h
    assert p.mean() < got < 0


def test_expected_loss_of_mean_is_variance():
    p = post(1.5, 2.0)
    assert expected_loss(p, p.mean(), squared_loss) == pytest.approx(p.var(), rel=1e-10)


def test_custom_requires_handle():
    with pytest.raises(ValueError):
        estimate(post(0.0), LossKind.CUSTOM)


def test_golden_section_cap():
    with pytest.raises(ConvergenceError):
        golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0, tol=0.0, max_iter=20)
    assert golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0, tol=1e-10) == pytest.approx(0.3, abs=1e-9)


class TestSummarize:
    def test_positive_datum_20_80(self):
        s = summarize(post(4.31, 3.76), 0.20, 0.80)
        assert s.median == pytest.approx(-1.45, abs=0.03)
        assert s.q_lo == pytest.approx(-3.05, abs=0.03)
        assert s.q_hi == pytest.approx(-0.49, abs=0.03)

    def test_negative_datum_20_80(self):
        s = summarize(post(-2.90, 4.82), 0.20, 0.80)
        assert (s.median, s.q_lo, s.q_hi) == pytest.approx((-4.59, -7.99, -1.91), abs=0.03)

    def test_half_normal_quartiles(self):
        p = post(0.0)
        s = summarize(p, 0.25, 0.75)
        assert s.median == pytest.approx(-0.6744897502, abs=1e-9)
        assert (s.q_lo, s.q_hi) == (p.quantile(0.25), p.quantile(0.75))
        assert s.q_lo <= s.median <= s.q_hi

    @pytest.mark.parametrize("lo,hi", [(0.5, 0.8), (0.2, 0.5), (0.0, 0.8), (0.2, 1.0), (0.8, 0.2)])
    def test_bad_probabilities(self, lo, hi):
        with pytest.raises(ValueError):
            summarize(post(0.0), lo, hi)


@pytest.mark.parametrize("loc", np.linspace(-4, 4, 17))
def test_estimates_in_support(loc):
    p = post(loc)
    vals = [estimate(p, k).value for k in ("squared", "absolute", "zero-one")]
    assert all(v <= 0 for v in vals)
    if loc >= 0:
        assert p.mean() <= p.mode()


def test_uncertainty_shrinks_past_zero():
    assert post(2.0).sd() < post(0.0).sd() < post(-4.0).sd()
    widths = [summarize(post(l), 0.25, 0.75) for l in (2.0, 0.0, -4.0)]
    w = [s.q_hi - s.q_lo for s in widths]
    assert w[0] < w[1] < w[2]
