"""Release gate. One test per acceptance criterion, in order, each
printing a visible PASS/FAIL line as it completes.

The closed forms are exact rationals, so every analytical criterion is
checked with equality or strict inequality rather than a tolerance; the
simulation criteria use three-standard-error intervals. Criteria 3, 6,
and 7 all read the session-wide default verification run from the
shared fixture, so the grid is swept once and each criterion checks its
own certificate tallies and the shared runtime budget.
"""

import json
import math
import time
from contextlib import contextmanager
from fractions import Fraction as F

import fogndt.cli as cli
from fogndt import (
    NetworkConfig,
    breakpoints,
    offline_achievable,
    offline_lower_bound,
    online_achievable,
    online_offline_gap,
    run_simulation,
)


def _emit(capsys, number, verdict, text):
    with capsys.disabled():
        print(f"criterion {number:>2}: {verdict}  {text}")


@contextmanager
def reported(capsys, number, text):
    try:
        yield
    except BaseException:
        _emit(capsys, number, "FAIL", text)
        raise
    _emit(capsys, number, "PASS", text)


def test_criterion_01_breakpoints_exact(capsys):
    with reported(capsys, 1, "regime breakpoints take their exact rational values"):
        start = time.perf_counter()
        two_by_two = breakpoints(NetworkConfig(2, 2, 2, F(0), F(3, 2), F(0)))
        two_by_three = breakpoints(NetworkConfig(2, 3, 3, F(0), F(1), F(0)))
        elapsed = time.perf_counter() - start
        assert (two_by_two.mu1, two_by_two.mu2, two_by_two.mu2_prime_raw) == (
            F(1, 11), F(1, 4), F(1, 2),
        )
        assert (two_by_three.mu1, two_by_three.mu2, two_by_three.mu2_prime_raw) == (
            F(3, 14), F(1, 2), F(3, 4),
        )
        assert elapsed < 0.5


def test_criterion_02_equality_outside_the_bridge(capsys):
    text = "achievable equals the lower bound outside the bridge regime"
    with reported(capsys, 2, text):
        start = time.perf_counter()
        step = F(1, 100)
        for ens, users in ((2, 2), (2, 3), (3, 3), (4, 2)):
            for r in (F(1, 2), F(1), F(3, 2)):
                assert r < min(ens, users)
                probe = NetworkConfig(ens, users, users, F(0), r, F(0))
                bp = breakpoints(probe)
                mu = F(0)
                while mu <= 1:
                    if mu <= bp.mu1 or mu >= bp.mu2:
                        cfg = NetworkConfig(ens, users, users, mu, r, F(0))
                        assert offline_achievable(cfg) == offline_lower_bound(cfg)
                    mu += step
        assert time.perf_counter() - start < 1.0


def test_criterion_03_factor_two_gap_on_the_grid(capsys, default_grid_report):
    text = "achievable stays strictly below twice the lower bound on the default grid"
    with reported(capsys, 3, text):
        report, elapsed = default_grid_report
        stat = report.stats["offline-gap"]
        assert stat.failed == 0
        assert stat.passed == report.grid_points > 0
        assert elapsed < 10.0


def test_criterion_04_cache_tradeoff_curve_anchors(capsys):
    text = "cache-tradeoff curves hit their anchor values and ordering"
    with reported(capsys, 4, text):
        start = time.perf_counter()
        r, p = F(3, 2), F(1, 2)
        step = F(1, 100)

        def cfg(ens, users, mu, churn=p):
            return NetworkConfig(ens, users, users, mu, r, churn)

        assert offline_achievable(cfg(2, 2, F(0))) == F(4, 3)
        mu = F(0)
        while mu <= 1:
            off = offline_achievable(cfg(2, 2, mu))
            on = online_achievable(cfg(2, 2, mu))
            if mu >= F(1, 4):
                assert off == 1
            if mu == 0 or mu >= F(1, 2):
                assert on == off
            elif 0 < mu < F(1, 2):
                assert on > off
            mu += step

        assert offline_achievable(cfg(3, 3, F(0))) == 2
        bp3 = breakpoints(cfg(3, 3, F(0)))
        assert offline_achievable(cfg(3, 3, bp3.mu2)) == 1
        assert offline_achievable(cfg(3, 3, F(1))) == 1

        for ens, users in ((2, 2), (3, 3)):
            bp = breakpoints(cfg(ens, users, F(0)))
            assert bp.mu2_prime_raw > bp.mu2
        assert time.perf_counter() - start < 1.0


def test_criterion_05_fronthaul_and_churn_monotonicity(capsys):
    text = "online delivery time falls with fronthaul power, rises with churn"
    with reported(capsys, 5, text):
        start = time.perf_counter()
        mu = F(2, 5)
        r_grid = []
        r = F(1, 10)
        while r < 2:
            r_grid.append(r)
            r += F(1, 20)
        curves = {}
        for p in (F(1, 2), F(9, 10)):
            values = [
                online_achievable(NetworkConfig(2, 3, 3, mu, r, p)) for r in r_grid
            ]
            for before, after in zip(values, values[1:]):
                assert after <= before
            curves[p] = values
        for low, high in zip(curves[F(1, 2)], curves[F(9, 10)]):
            assert high >= low
        assert time.perf_counter() - start < 1.0


def test_criterion_06_gap_relations_per_regime(capsys, default_grid_report):
    text = "per-regime online/offline gap relations hold on the default grid"
    with reported(capsys, 6, text):
        report, elapsed = default_grid_report
        relations = report.stats["online-gap-relations"]
        assert relations.failed == 0
        assert relations.passed == 4 * report.grid_points
        multiplicative = report.stats["multiplicative-gap"]
        assert multiplicative.failed == 0
        assert multiplicative.skipped == 0  # default grid keeps r below min(M,K)
        assert multiplicative.passed == 4 * report.grid_points
        assert elapsed < 10.0

        low = online_offline_gap(NetworkConfig(2, 2, 2, F(1, 20), F(3, 2), F(1, 2)))
        assert low.difference == low.bound == F(1, 60)
        full = online_offline_gap(NetworkConfig(2, 2, 2, F(3, 4), F(3, 2), F(1, 2)))
        assert full.difference == 0


def test_criterion_07_bound_ordering(capsys, default_grid_report):
    text = "lower bounds order below achievable for both library sizes"
    with reported(capsys, 7, text):
        report, elapsed = default_grid_report
        ordering = report.stats["bound-ordering"]
        assert ordering.failed == 0
        assert ordering.passed == 8 * report.grid_points  # 4 churn values, N in {K, 2K}
        offline = report.stats["offline-gap"]
        assert offline.failed == 0
        assert elapsed < 10.0


REFERENCE = NetworkConfig(2, 2, 4, F(1, 11), F(3, 2), F(1, 2))


def _timed_simulation(cfg, slots, seed, mode):
    start = time.perf_counter()
    result = run_simulation(cfg, slots, seed, mode)
    return result, time.perf_counter() - start


def test_criterion_08_simulation_recovers_the_closed_form(capsys):
    text = "slot simulation recovers the closed form within three standard errors"
    with reported(capsys, 8, text):
        target = F(37, 33)
        formula, elapsed = _timed_simulation(REFERENCE, 200_000, 7, "formula")
        assert abs(float(formula.mean_ndt - target)) <= 3 * formula.standard_error
        assert elapsed < 5.0

        operational, elapsed = _timed_simulation(REFERENCE, 200_000, 7, "operational")
        assert abs(float(operational.mean_ndt - target)) <= 3 * operational.standard_error
        assert elapsed < 5.0

        calm_cfg = NetworkConfig(2, 2, 4, F(1, 11), F(3, 2), F(0))
        calm, elapsed = _timed_simulation(calm_cfg, 200_000, 7, "formula")
        assert calm.mean_ndt == F(12, 11)
        assert calm.standard_error == 0.0
        assert elapsed < 5.0


def test_criterion_09_churn_process_statistics(capsys):
    text = "arrival and fresh-request rates match their probabilities"
    with reported(capsys, 9, text):
        slots = 200_000
        for library, users, p in ((4, 2, F(1, 2)), (6, 3, F(9, 10))):
            cfg = NetworkConfig(2, users, library, F(1, 5), F(1), p)
            result, elapsed = _timed_simulation(cfg, slots, 7, "formula")
            assert elapsed < 5.0

            arrival = float(result.empirical_arrival_rate)
            se = math.sqrt(arrival * (1 - arrival) / slots)
            assert abs(arrival - float(p)) <= 3 * se

            fresh = float(result.empirical_fresh_request_rate)
            se = math.sqrt(fresh * (1 - fresh) / slots)
            assert abs(fresh - float(p * users / library)) <= 3 * se


def _capture(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    assert code == 0, err
    return out


def _figure_files(directory, which):
    return {
        name: (directory / name).read_bytes()
        for name in (f"{which}.csv", f"{which}_plot.py", f"{which}.png")
    }


def test_criterion_10_byte_identical_reruns(capsys, tmp_path):
    text = "every command is byte-identical across repeated invocations"
    with reported(capsys, 10, text):
        point = [
            "--ens", "2", "--users", "2", "--library", "4",
            "--mu", "0.25", "--r", "1.5", "--p", "0.5",
        ]
        commands = [
            ["eval", *point],
            ["eval", *point, "--format", "json"],
            [
                "sweep", "--var", "mu", *point[:6], "--r", "1.5", "--p", "0.5",
                "--grid-start", "0", "--grid-stop", "1", "--grid-step", "0.1",
            ],
            [
                "simulate", *point, "--slots", "2000", "--seed", "11",
                "--mode", "operational",
            ],
            [
                "verify", "--ens-list", "2", "--users-list", "2",
                "--mu-step", "1/4", "--r-step", "1/2", "--p-list", "0,0.5",
            ],
        ]
        for argv in commands:
            assert _capture(capsys, argv) == _capture(capsys, argv)

        for run in ("a", "b"):
            trace = tmp_path / f"trace_{run}.csv"
            argv = [
                "simulate", *point, "--slots", "2000", "--seed", "11",
                "--trace", str(trace),
            ]
            _capture(capsys, argv)
        assert (tmp_path / "trace_a.csv").read_bytes() == (
            tmp_path / "trace_b.csv"
        ).read_bytes()

        for which, extra in (("fig1", []), ("fig2", ["--library", "6"])):
            first = tmp_path / f"{which}_a"
            second = tmp_path / f"{which}_b"
            for directory in (first, second):
                _capture(
                    capsys,
                    ["figures", "--which", which, "--out", str(directory), *extra],
                )
            assert _figure_files(first, which) == _figure_files(second, which)
