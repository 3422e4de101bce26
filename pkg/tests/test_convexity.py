"""Discrete midpoint-convexity verdicts."""

import numpy as np
import pytest

from bctent import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    ParameterError,
    TentEnvelope,
    certify_envelope,
    check_interval,
    check_point,
    preset_lambda,
    recheck_refutation,
    scan,
)


def _envelope_from_values(values, grid, lam0, width=0.0, eps=0.0):
    """A synthetic envelope with the given midpoints and symmetric width."""
    half = grid // 2
    vals = np.asarray(values, dtype=np.float64)
    assert vals.shape[0] == half + 1
    return TentEnvelope(
        grid=grid,
        lo=vals - 0.5 * width,
        hi=vals + 0.5 * width,
        lam0=lam0,
        eps=eps,
        depth=24,
        eta=0.0,
        rho=2.0 ** -20,
    )


def test_certify_convex_values():
    # strictly convex values with a tight envelope certify
    grid, lam0 = 10, 0.8
    xs = np.arange(6) / 10.0
    vals = np.where(xs <= 1 - lam0, xs / lam0, xs / lam0 + 4.0 * (xs - 0.2) ** 2)
    env = _envelope_from_values(vals, grid, lam0, width=1e-6)
    cert = certify_envelope(env)
    assert cert.status == CERTIFIED
    assert cert.scale == 0.1
    assert cert.witness is None
    assert cert.min_margin > 0.0


def test_refute_concave_kink():
    grid, lam0 = 10, 0.8
    xs = np.arange(6) / 10.0
    vals = xs / lam0 + np.where(xs > 0.3, -0.05 * (xs - 0.3), 0.0)
    env = _envelope_from_values(vals, grid, lam0, width=1e-6)
    cert = certify_envelope(env)
    assert cert.status == REFUTED
    assert cert.witness is not None
    assert cert.witness_x == cert.witness / grid
    assert cert.min_margin < 0.0


def test_wide_envelope_is_inconclusive():
    grid, lam0 = 10, 0.8
    xs = np.arange(6) / 10.0
    vals = xs / lam0 + np.where(xs > 0.3, -0.001 * (xs - 0.3), 0.0)
    env = _envelope_from_values(vals, grid, lam0, width=0.01)
    cert = certify_envelope(env)
    assert cert.status == INCONCLUSIVE


def test_linear_triples_certified_analytically():
    # Midpoints in the linear region have true margin zero; they must not
    # block certification even with a nonzero envelope width.
    grid, lam0 = 8, 0.75
    xs = np.arange(5) / 8.0
    vals = np.where(xs <= 0.25, xs / lam0, xs / lam0 + 0.5 * (xs - 0.25) ** 2)
    env = _envelope_from_values(vals, grid, lam0, width=1e-7)
    cert = certify_envelope(env)
    assert cert.status == CERTIFIED


def test_trivially_certified_when_grid_misses_nonlinear_region():
    # lam close to 1/2 leaves no checkable triple on a coarse grid
    cert = check_point(0.51, 12, 2)
    assert cert.status == CERTIFIED
    assert cert.checked_range is None
    assert cert.min_margin == float("inf")


def test_check_point_known_verdicts():
    cert = check_point(2.0 ** -0.5, 28, 8)
    assert cert.status == CERTIFIED
    golden = check_point(preset_lambda("golden"), 36, 50)
    assert golden.status == REFUTED
    assert golden.exists_witness is False


def test_check_point_rejects_non_overlap_lambda():
    with pytest.raises(ParameterError):
        check_point(0.4, 12, 10)
    with pytest.raises(ParameterError):
        check_point(1.0, 12, 10)


def test_check_interval_delegates_at_zero_eps():
    a = check_interval(0.8, 0.0, 20, 10)
    b = check_point(0.8, 20, 10)
    assert a == b


def test_check_interval_sets_exists_witness_on_refutation():
    cert = check_interval(preset_lambda("golden"), 1e-9, 36, 50)
    assert cert.status == REFUTED
    assert cert.exists_witness is True


def test_check_interval_rejects_escaping_interval():
    with pytest.raises(ParameterError):
        check_interval(0.51, 0.02, 12, 10)


def test_certificate_to_dict_roundtrips_range():
    cert = check_point(0.8, 20, 10)
    d = cert.to_dict()
    assert d["status"] == cert.status
    if cert.checked_range is not None:
        assert d["checked_range"] == list(cert.checked_range)


def test_recheck_refutation_persists_at_higher_depth():
    cert = check_point(preset_lambda("golden"), 32, 50)
    assert cert.status == REFUTED
    again = recheck_refutation(cert, 40)
    assert again.status == REFUTED
    assert again.depth == 40
    assert again.witness == cert.witness
    assert again.checked_range == (cert.witness, cert.witness)


def test_recheck_requires_refuted_certificate():
    cert = check_point(2.0 ** -0.5, 28, 8)
    with pytest.raises(ParameterError):
        recheck_refutation(cert, 32)


def test_scan_orders_results_and_flags():
    certs = scan(0.56, 0.62, 0.02, 16, 10)
    assert [c.lam0 for c in certs] == pytest.approx([0.56, 0.58, 0.60, 0.62])
    assert all(c.eps == 0.0 for c in certs)


def test_scan_thread_count_invariant():
    a = scan(0.6, 0.7, 0.05, 16, 10, threads=1)
    b = scan(0.6, 0.7, 0.05, 16, 10, threads=3)
    assert a == b


def test_scan_rejects_bad_ranges():
    with pytest.raises(ParameterError):
        scan(0.7, 0.6, 0.01, 12, 10)
    with pytest.raises(ParameterError):
        scan(0.6, 0.7, 0.0, 12, 10)
    with pytest.raises(ParameterError):
        scan(0.45, 0.7, 0.05, 12, 10)
