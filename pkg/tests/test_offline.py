from fractions import Fraction as F
from math import inf

import pytest

from fogndt import (
    NetworkConfig,
    Regime,
    breakpoints,
    offline_achievable,
    offline_achievable_via_timeshare,
    offline_gap_certificate,
    offline_lower_bound,
    offline_regime,
)


def cfg(ens, users, mu, r, library=None):
    return NetworkConfig(ens, users, library or max(users, 1), F(mu), F(r), F(0))


def test_breakpoint_triples_for_reference_networks():
    bp = breakpoints(cfg(2, 2, 0, F(3, 2)))
    assert (bp.mu1, bp.mu2, bp.mu2_prime_raw) == (F(1, 11), F(1, 4), F(1, 2))
    assert bp.mu2_prime_clamped == F(1, 2)
    bp = breakpoints(cfg(2, 3, 0, 1))
    assert (bp.mu1, bp.mu2, bp.mu2_prime_raw) == (F(3, 14), F(1, 2), F(3, 4))


def test_breakpoints_collapse_when_fronthaul_is_fast():
    for r in (2, 3, F(5, 2)):
        bp = breakpoints(cfg(2, 2, 0, r))
        assert (bp.mu1, bp.mu2, bp.mu2_prime_raw, bp.mu2_prime_clamped) == (
            F(0), F(0), F(0), F(0),
        )


def test_single_user_breakpoints_have_infinite_online_span():
    bp = breakpoints(cfg(2, 1, 0, F(1, 2)))
    assert bp.mu1 == F(1, 4)
    assert bp.mu2 == F(1, 2)
    assert bp.mu2_prime_raw == inf
    assert bp.mu2_prime_clamped == F(1)
    # fast fronthaul collapses even the single-user case to zero
    assert breakpoints(cfg(2, 1, 0, 2)).mu2_prime_raw == F(0)


def test_achievable_curve_values():
    assert offline_achievable(cfg(2, 2, 0, F(3, 2))) == F(4, 3)
    assert offline_achievable(cfg(2, 2, F(1, 11), F(3, 2))) == F(12, 11)
    assert offline_achievable(cfg(2, 2, F(1, 4), F(3, 2))) == F(1)
    assert offline_achievable(cfg(2, 2, 1, F(3, 2))) == F(1)
    assert offline_achievable(cfg(2, 3, 0, 1)) == F(3)


def test_achievable_bridge_is_linear():
    mu1, mu2 = F(1, 11), F(1, 4)
    mid = (mu1 + mu2) / 2
    ends = offline_achievable(cfg(2, 2, mu1, F(3, 2))) + offline_achievable(
        cfg(2, 2, mu2, F(3, 2))
    )
    assert offline_achievable(cfg(2, 2, mid, F(3, 2))) == ends / 2


def test_fast_fronthaul_plateaus_everywhere():
    for i in range(0, 101, 10):
        assert offline_achievable(cfg(2, 2, F(i, 100), 3)) == F(1)


def test_achievable_is_nonincreasing_in_cache_fraction():
    values = [offline_achievable(cfg(2, 3, F(i, 50), 1)) for i in range(51)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_timeshare_construction_matches_closed_form_outside_bridge():
    bp = breakpoints(cfg(2, 3, 0, 1))
    for mu in (F(0), bp.mu1 / 2, bp.mu1, bp.mu2, (bp.mu2 + 1) / 2, F(1)):
        c = cfg(2, 3, mu, 1)
        assert offline_achievable_via_timeshare(c) == offline_achievable(c)


def test_timeshare_construction_rejects_bridge_interior():
    with pytest.raises(ValueError, match="no single time-share"):
        offline_achievable_via_timeshare(cfg(2, 3, F(1, 3), 1))


def test_lower_bound_reference_value():
    assert offline_lower_bound(cfg(2, 2, F(1, 4), F(3, 2))) == F(1)


def test_lower_bound_equals_achievable_outside_bridge():
    bp = breakpoints(cfg(3, 3, 0, F(3, 2)))
    for mu in (F(0), bp.mu1 / 2, bp.mu1, bp.mu2, (bp.mu2 + 1) / 2, F(1)):
        c = cfg(3, 3, mu, F(3, 2))
        assert offline_lower_bound(c) == offline_achievable(c)


def test_lower_bound_edge_term_dominates_at_full_cache():
    # per-cut terms go negative here; the edge-only bound takes over
    assert offline_lower_bound(cfg(4, 4, 1, F(1, 10))) == F(1)


def test_gap_certificate_rows():
    grid = [cfg(2, 2, F(i, 20), F(3, 2)) for i in range(21)]
    rows = offline_gap_certificate(grid)
    assert len(rows) == len(grid)
    for row in rows:
        assert row.lower_bound <= row.achievable < 2 * row.lower_bound
        assert row.ratio == row.achievable / row.lower_bound
        if row.regime is not Regime.INTERMEDIATE:
            assert row.achievable == row.lower_bound


def test_offline_regime_boundaries():
    assert offline_regime(cfg(2, 2, F(1, 11), F(3, 2))) is Regime.LOW_CACHE
    assert offline_regime(cfg(2, 2, F(1, 4), F(3, 2))) is Regime.FULL_CACHING
    assert offline_regime(cfg(2, 2, F(1, 8), F(3, 2))) is Regime.INTERMEDIATE
