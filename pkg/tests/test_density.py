"""Cylinder lengths and invariant-density bounds."""

import math

import pytest

from bctent import (
    BoundsContext,
    ExactMap,
    ParameterError,
    PrecisionError,
    build_half_sum_table,
    min_cylinder_length,
    minimal_admissible_n,
    rychlik_bounds,
    sup_density_pipeline,
)

LAM = 2.0 ** -0.5

# Closed form at lam = 1/sqrt(2): F(1/2) = 1/2, so the depth-2 partition
# point is F^-1(1/4) = 1/(2 sqrt(A)) with A = 1 + 3 sqrt(2)/4, and the
# shortest cylinder is 1/2 - F^-1(1/4).
MIN_CYL_2 = 0.5 - 0.5 / math.sqrt(1.0 + 0.75 * math.sqrt(2.0))


def test_minimal_admissible_n_values():
    assert minimal_admissible_n(LAM) == 3
    assert minimal_admissible_n(0.8) == 4
    assert minimal_admissible_n(0.6) == 2
    assert minimal_admissible_n(0.95) == 14
    with pytest.raises(ParameterError):
        minimal_admissible_n(1.0)


def test_min_cylinder_generation_one():
    # the base partition {[0,1/2], (1/2,1]} has shortest piece 1/2
    assert min_cylinder_length(ExactMap.sqrt2(), 1) == 0.5


def test_min_cylinder_exact_sqrt2_generation_two():
    got = min_cylinder_length(ExactMap.sqrt2(), 2)
    assert got == pytest.approx(MIN_CYL_2, abs=1e-12)


def test_min_cylinder_small_tent():
    # increasing branch preimage of 1/2 at lam=0.4 is 0.2; partition
    # {0, 0.2, 0.5, 0.8, 1} has shortest piece 0.2
    assert min_cylinder_length(ExactMap.small_tent(0.4), 2) == pytest.approx(0.2)


def test_min_cylinder_bounds_context_brackets_exact():
    ctx = BoundsContext.point(build_half_sum_table(LAM, 28))
    got = min_cylinder_length(ctx, 2, rho=2.0 ** -24)
    # certified lower bound: never above the true value, and close to it
    assert got <= MIN_CYL_2 + 1e-12
    assert got >= MIN_CYL_2 - 1e-4


def test_min_cylinder_requires_point_mode():
    ctx = BoundsContext.around(build_half_sum_table(0.8, 16), 1e-5)
    with pytest.raises(ParameterError):
        min_cylinder_length(ctx, 2)


def test_min_cylinder_rejects_bad_generation():
    with pytest.raises(ParameterError):
        min_cylinder_length(ExactMap.sqrt2(), 0)


def test_min_cylinder_overlapping_brackets_raise_precision_error():
    # a shallow table cannot separate deep preimage brackets
    ctx = BoundsContext.point(build_half_sum_table(0.9, 8))
    with pytest.raises(PrecisionError):
        min_cylinder_length(ctx, 8)


def test_rychlik_formula():
    # var bound = 2^(n-1) lam^n / (min_cyl (1 - 2 lam^n))
    b = rychlik_bounds(0.6, 2, 0.25)
    expected = (2.0 * 0.36) / (0.25 * (1.0 - 0.72))
    assert b.var_bound == pytest.approx(expected)
    assert b.sup_bound == pytest.approx(1.0 + expected)
    assert b.hypothesis == "piecewise-convex"


def test_rychlik_requires_contracting_iterate():
    with pytest.raises(ParameterError) as exc:
        rychlik_bounds(0.8, 2, 0.1)
    assert "minimal admissible n is 4" in str(exc.value)


def test_rychlik_rejects_bad_inputs():
    with pytest.raises(ParameterError):
        rychlik_bounds(0.6, 2, 0.0)
    with pytest.raises(ParameterError):
        rychlik_bounds(1.2, 2, 0.1)


def test_pipeline_dominates_true_sup_at_sqrt2():
    # the true invariant density at lam = 1/sqrt(2) has sup 1 + 1/sqrt(2)
    bound = sup_density_pipeline(LAM, 36)
    assert bound.sup_bound >= 1.0 + LAM
    assert bound.n == 3
    assert bound.min_cyl > 0.0


def test_pipeline_honors_explicit_n():
    bound = sup_density_pipeline(LAM, 32, n=4)
    assert bound.n == 4
    assert bound.sup_bound > 1.0
