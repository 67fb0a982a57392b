"""Grid-sweep verification of every certified inequality.

One pass over a parameter grid drives the certificate operations from
the offline and online modules and tallies pass/fail/skip counts per
certificate, remembering the first failing configuration for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Iterator, Optional

from .model import CertificateViolation, NetworkConfig
from .offline import _breakpoints, offline_gap_certificate, offline_lower_bound
from .online import (
    multiplicative_gap_certificate,
    online_achievable,
    online_lower_bound,
    online_offline_gap,
)

_TWENTIETH = Fraction(1, 20)


@dataclass(frozen=True)
class GridSpec:
    en_counts: tuple[int, ...]
    user_counts: tuple[int, ...]
    mu_step: Fraction
    r_step: Fraction
    churn_values: tuple[Fraction, ...]
    r_max: Optional[Fraction] = None  # None: stop at min(M,K) - 1/20 per pair
    library_factors: tuple[int, ...] = (1, 2)

    def __post_init__(self) -> None:
        if not (self.en_counts and self.user_counts and self.churn_values):
            raise ValueError("grid must include edge node, user, and churn values")
        if not self.library_factors or any(f < 1 for f in self.library_factors):
            raise ValueError("library size factors must be integers >= 1")
        if self.mu_step <= 0 or self.r_step <= 0:
            raise ValueError("grid steps must be positive")

    def mu_values(self) -> Iterator[Fraction]:
        mu = Fraction(0)
        while mu <= 1:
            yield mu
            mu += self.mu_step

    def r_values(self, ens: int, users: int) -> Iterator[Fraction]:
        limit = self.r_max if self.r_max is not None else min(ens, users) - _TWENTIETH
        r = self.r_step
        while r <= limit:
            yield r
            r += self.r_step


def default_grid() -> GridSpec:
    return GridSpec(
        en_counts=(1, 2, 3, 4),
        user_counts=(1, 2, 3, 4),
        mu_step=Fraction(1, 100),
        r_step=Fraction(1, 10),
        churn_values=(Fraction(0), Fraction(1, 2), Fraction(9, 10), Fraction(1)),
    )


@dataclass
class CertificateStat:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: Optional[str] = None

    def record_pass(self) -> None:
        self.passed += 1

    def record_skip(self) -> None:
        self.skipped += 1

    def record_failure(self, message: str) -> None:
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = message


@dataclass
class VerificationReport:
    grid_points: int = 0
    stats: dict[str, CertificateStat] = field(default_factory=dict)

    def stat(self, name: str) -> CertificateStat:
        if name not in self.stats:
            self.stats[name] = CertificateStat(name)
        return self.stats[name]

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.stats.values())

    @property
    def first_failure(self) -> Optional[str]:
        for stat in self.stats.values():
            if stat.first_failure is not None:
                return stat.first_failure
        return None

    def lines(self) -> list[str]:
        out = [f"grid points: {self.grid_points}"]
        for stat in self.stats.values():
            line = f"{stat.name}: {stat.passed} passed, {stat.failed} failed"
            if stat.skipped:
                line += f", {stat.skipped} skipped (precondition)"
            out.append(line)
        if self.first_failure is not None:
            out.append(f"first failure: {self.first_failure}")
        return out


def _check(stat: CertificateStat, thunk) -> None:
    try:
        thunk()
    except CertificateViolation as exc:
        stat.record_failure(str(exc))
    else:
        stat.record_pass()


def run_verification(spec: GridSpec) -> VerificationReport:
    """Evaluate every certificate at every grid point.

    The inner sweep evaluates the same closed forms the offline and
    online modules define, with all per-(M, K, r, p) constants hoisted
    out of the cache-fraction loop; the default grid amounts to roughly
    half a million individual checks and stays interactive only this
    way. The inlined inequalities act as a screen: any point the screen
    rejects is replayed through the public certificate functions, which
    stay the authority on pass/fail and on the failure message.
    """
    report = VerificationReport()
    offline_stat = report.stat("offline-gap")
    relation_stat = report.stat("online-gap-relations")
    mult_stat = report.stat("multiplicative-gap")
    order_stat = report.stat("bound-ordering")
    calm_stat = report.stat("zero-churn-sandwich")
    mu_values = list(spec.mu_values())
    zero = Fraction(0)
    for ens in spec.en_counts:
        for users in spec.user_counts:
            m = min(ens, users)
            coop = Fraction(users, m)
            libraries = [factor * users for factor in spec.library_factors]
            for r in spec.r_values(ens, users):
                bp = _breakpoints(ens, users, r)
                mu1, mu2, raw = bp.mu1, bp.mu2, bp.mu2_prime_raw
                low_a = Fraction(users) / r
                low_b = low_a * ens
                at1_off = low_a - low_b * mu1
                slope_off = (coop - at1_off) / (mu2 - mu1) if mu2 > mu1 else zero
                slope_calm = (
                    (coop - at1_off) / (raw - mu1)
                    if raw != inf and raw > mu1
                    else zero
                )
                lb_terms = [
                    (Fraction(users) / (l + r), ((ens - l) * (users - l)) / (l + r))
                    for l in range(m + 1)
                ]
                fresh_terms = [
                    (Fraction(users) / (l + r), ((ens - l) * (users - l - 1)) / (l + r))
                    for l in range(m + 1)
                ]
                skip_mult = r >= m
                churn = []
                for p in spec.churn_values:
                    p_over_r = p / r
                    at1_on = at1_off + p_over_r * mu1
                    slope_on = (
                        (coop - at1_on) / (raw - mu1)
                        if raw != inf and raw > mu1
                        else zero
                    )
                    per_factor = [
                        # (N, (1 - q)/2, q, q*M/r) with q = K*p/N = p/factor
                        (
                            library,
                            (1 - p / factor) / 2,
                            p / factor,
                            p / factor * ens / r,
                        )
                        for factor, library in zip(spec.library_factors, libraries)
                    ]
                    churn.append((
                        p,
                        p == 0,
                        p_over_r,
                        p_over_r - low_b,
                        at1_on,
                        slope_on,
                        3 + 2 * p_over_r,
                        6 + 4 * p_over_r,
                        per_factor,
                    ))
                for mu in mu_values:
                    report.grid_points += 1
                    if mu >= mu2:
                        off = coop
                    elif mu <= mu1:
                        off = low_a - low_b * mu
                    else:
                        off = at1_off + slope_off * (mu - mu1)
                    off_lb = coop
                    for a, b in lb_terms:
                        term = a - b * mu
                        if term > off_lb:
                            off_lb = term
                    two_lb = 2 * off_lb
                    if off_lb <= off < two_lb and (mu1 < mu < mu2 or off == off_lb):
                        offline_stat.record_pass()
                    else:
                        base = NetworkConfig(ens, users, libraries[0], mu, r, zero)
                        _check(offline_stat, lambda: offline_gap_certificate([base]))
                    genie = None
                    for a, b in fresh_terms:
                        term = a - b * mu
                        if genie is None or term > genie:
                            genie = term
                    fresh = genie if genie < off_lb else off_lb
                    if raw != inf and mu >= raw:
                        calm = coop
                    elif mu <= mu1:
                        calm = low_a - low_b * mu
                    elif raw == inf:
                        calm = at1_off
                    else:
                        calm = at1_off + slope_calm * (mu - mu1)
                    for (
                        p,
                        p_is_zero,
                        p_over_r,
                        low_slope_on,
                        at1_on,
                        slope_on,
                        add_bound,
                        mult_add,
                        per_factor,
                    ) in churn:
                        if raw != inf and mu >= raw:
                            on = coop
                            full, low = True, False
                        elif mu <= mu1:
                            on = low_a + low_slope_on * mu
                            full, low = False, True
                        else:
                            on = at1_on if raw == inf else at1_on + slope_on * (mu - mu1)
                            full, low = False, False
                        diff = on - off
                        if diff < 0:
                            ok = False
                        elif full:
                            ok = diff == 0
                        elif low:
                            ok = diff == p_over_r * mu
                        elif mu <= mu2:
                            ok = on - calm <= p_over_r * mu
                        else:
                            ok = diff <= add_bound
                        if ok:
                            relation_stat.record_pass()
                        else:
                            cfg = NetworkConfig(ens, users, libraries[0], mu, r, p)
                            _check(relation_stat, lambda: online_offline_gap(cfg))
                        if skip_mult:
                            mult_stat.record_skip()
                        elif on < two_lb + mult_add:
                            mult_stat.record_pass()
                        else:
                            cfg = NetworkConfig(ens, users, libraries[0], mu, r, p)
                            _check(
                                mult_stat,
                                lambda: multiplicative_gap_certificate([cfg]),
                            )
                        if p_is_zero:
                            if off_lb <= calm < two_lb:
                                calm_stat.record_pass()
                            else:
                                cfg = NetworkConfig(
                                    ens, users, libraries[0], mu, r, p
                                )
                                _check(calm_stat, lambda: _zero_churn_sandwich(cfg))
                        for library, half, q, q_push_rate in per_factor:
                            ordinary = half * off_lb
                            qfresh = q * fresh
                            refined = ordinary + qfresh
                            push = q_push_rate * mu
                            prop3 = ordinary + (push if push < qfresh else qfresh)
                            if prop3 <= refined <= on:
                                order_stat.record_pass()
                            else:
                                cfg = NetworkConfig(ens, users, library, mu, r, p)
                                _check(order_stat, lambda: _bound_ordering(cfg))
    return report


def _zero_churn_sandwich(cfg: NetworkConfig) -> None:
    """At p = 0 the online value sits in [lb, 2*lb) like the offline one."""
    on = online_achievable(cfg)
    lb = offline_lower_bound(cfg)
    if not lb <= on < 2 * lb:
        raise CertificateViolation(
            f"zero-churn online value {on} outside [{lb}, {2 * lb}) at {cfg}"
        )


def _bound_ordering(cfg: NetworkConfig) -> None:
    """prop3 <= refined <= online achievable."""
    prop3 = online_lower_bound(cfg, "prop3")
    refined = online_lower_bound(cfg, "refined")
    on = online_achievable(cfg)
    if not prop3 <= refined <= on:
        raise CertificateViolation(
            f"bound ordering {prop3} <= {refined} <= {on} failed at {cfg}"
        )
