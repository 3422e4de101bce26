"""Dyadic CDF bounds in point and interval mode."""

from fractions import Fraction

import numpy as np
import pytest

from bctent import (
    DyadicProb,
    LambdaInterval,
    ParameterError,
    build_half_sum_table,
    exact_F_sqrt2,
    f_lower,
    f_lower_interval,
    f_upper,
    f_upper_interval,
    lipschitz_D,
)

SQRT2_INV = 2.0 ** -0.5


def test_dyadic_prob_value_and_fraction():
    p = DyadicProb(3, 4)
    assert p.value == 3.0 / 16.0
    assert p.as_fraction() == Fraction(3, 16)


def test_dyadic_prob_rejects_out_of_range():
    with pytest.raises(ParameterError):
        DyadicProb(-1, 4)
    with pytest.raises(ParameterError):
        DyadicProb(17, 4)


def test_bounds_sandwich_exact_distribution():
    t = build_half_sum_table(SQRT2_INV, 28)
    for x in np.linspace(0.0, 1.0, 101):
        x = float(x)
        truth = exact_F_sqrt2(x)
        assert f_lower(t, x).value <= truth <= f_upper(t, x).value


def test_bounds_tight_at_moderate_depth():
    t = build_half_sum_table(SQRT2_INV, 36)
    for x in (0.1, 0.3, 0.5, 0.7, 0.9):
        gap = f_upper(t, x).value - f_lower(t, x).value
        assert gap < 1e-4


def test_bounds_monotone_in_x():
    t = build_half_sum_table(0.77, 20)
    xs = np.linspace(0.0, 1.0, 41)
    lo = [f_lower(t, float(x)).count for x in xs]
    hi = [f_upper(t, float(x)).count for x in xs]
    assert lo == sorted(lo)
    assert hi == sorted(hi)


def test_lower_never_exceeds_upper():
    t = build_half_sum_table(0.64, 18)
    for x in np.linspace(-0.1, 1.1, 61):
        assert f_lower(t, float(x)).count <= f_upper(t, float(x)).count


def test_endpoints():
    t = build_half_sum_table(0.7, 16)
    assert f_lower(t, 0.0).count == 0
    assert f_upper(t, 1.0).count == 1 << 16


def test_lipschitz_D_value():
    # sup of 1/(lam(1-lam)) over [0.75 - 1e-5, 0.75 + 1e-5] sits at the
    # right endpoint
    hi = 0.75 + 1e-5
    assert lipschitz_D(0.75, 1e-5) == 1.0 / (hi * (1.0 - hi))


def test_lipschitz_D_rejects_escape():
    with pytest.raises(ParameterError):
        lipschitz_D(0.5, 0.0)
    with pytest.raises(ParameterError):
        lipschitz_D(0.51, 0.02)
    with pytest.raises(ParameterError):
        lipschitz_D(0.99, 0.02)
    with pytest.raises(ParameterError):
        lipschitz_D(0.75, -1e-6)


def test_lambda_interval_validates_dominating_D():
    with pytest.raises(ParameterError):
        LambdaInterval(center=0.75, radius=1e-3, D=1.0)
    LambdaInterval.around(0.75, 1e-3)  # should not raise


def test_interval_bounds_contain_point_bounds():
    lam0, eps = 0.75, 1e-4
    t = build_half_sum_table(lam0, 20)
    interval = LambdaInterval.around(lam0, eps)
    for x in (0.1, 0.3, 0.5, 0.8):
        assert f_lower_interval(t, interval, x).count <= f_lower(t, x).count
        assert f_upper_interval(t, interval, x).count >= f_upper(t, x).count


def test_interval_bounds_cover_shifted_lambdas():
    # Bounds from a table at lam0 must bracket the true F at every lambda
    # in the interval; cross-check against point bounds at the endpoints.
    lam0, eps = 0.75, 1e-4
    t0 = build_half_sum_table(lam0, 24)
    interval = LambdaInterval.around(lam0, eps)
    for lam in (lam0 - eps, lam0 + eps):
        t = build_half_sum_table(lam, 24)
        for x in np.linspace(0.05, 0.95, 19):
            x = float(x)
            # F_lam(x) lies in [f_lower(t,x), f_upper(t,x)], so the
            # interval bounds must not cross the opposite point bound.
            assert f_lower_interval(t0, interval, x).value <= f_upper(t, x).value
            assert f_upper_interval(t0, interval, x).value >= f_lower(t, x).value


def test_interval_requires_matching_center():
    t = build_half_sum_table(0.75, 12)
    other = LambdaInterval.around(0.76, 1e-4)
    with pytest.raises(ParameterError):
        f_lower_interval(t, other, 0.5)
    with pytest.raises(ParameterError):
        f_upper_interval(t, other, 0.5)
