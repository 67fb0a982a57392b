"""Offline caching: achievable delivery time, lower bound, gap certificate.

The achievable curve is piecewise in the cache fraction: fronthaul-limited
below mu1, a linear bridge on (mu1, mu2), and the full-caching plateau
from mu2 on. The lower bound enumerates the small family of cut-set
inequalities. Both sides are exact rationals, so the factor-2 certificate
and the outer-regime equalities are checked with == rather than tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Iterable, Union

from .baselines import cran_ndt, en_cooperation_ndt, en_coordination_ndt, pipelined, time_share
from .model import CertificateViolation, NetworkConfig, Regime, RegimeBreakpoints, classify_regime


@lru_cache(maxsize=None)
def _breakpoints(ens: int, users: int, r: Fraction) -> RegimeBreakpoints:
    m = min(ens, users)
    base = max(Fraction(0), 1 - r / m)
    mu1 = users * base / (users * ens + r * (m - 1))
    if users == 1:
        raw: Union[Fraction, float] = inf if base > 0 else Fraction(0)
    else:
        raw = users * base / (users - 1)
    clamped = Fraction(1) if raw == inf else min(raw, Fraction(1))
    return RegimeBreakpoints(
        mu1=mu1, mu2=base, mu2_prime_raw=raw, mu2_prime_clamped=clamped
    )


def breakpoints(cfg: NetworkConfig) -> RegimeBreakpoints:
    """Regime thresholds mu1 <= mu2 <= mu2'; all zero once r >= min(M,K)."""
    return _breakpoints(cfg.ens, cfg.users, cfg.fronthaul_scaling)


def offline_regime(cfg: NetworkConfig) -> Regime:
    return classify_regime(cfg.cache_fraction, breakpoints(cfg), online=False)


def offline_achievable(cfg: NetworkConfig) -> Fraction:
    """Best offline delivery time over the three scheme regimes.

    Full caching is tested first so that a collapsed breakpoint triple
    (r >= min(M,K)) routes every mu, including 0, to the plateau.
    """
    return _offline_achievable(cfg.ens, cfg.users, cfg.fronthaul_scaling, cfg.cache_fraction)


@lru_cache(maxsize=None)
def _offline_achievable(ens: int, users: int, r: Fraction, mu: Fraction) -> Fraction:
    bp = _breakpoints(ens, users, r)
    coop = Fraction(users, min(ens, users))
    if mu >= bp.mu2:
        return coop
    low = users * (1 - mu * ens) / r
    if mu <= bp.mu1:
        return low
    at_mu1 = users * (1 - bp.mu1 * ens) / r
    return at_mu1 + (coop - at_mu1) * (mu - bp.mu1) / (bp.mu2 - bp.mu1)


def offline_achievable_via_timeshare(cfg: NetworkConfig) -> Fraction:
    """Rebuild the achievable value from explicit scheme mixes.

    Below mu1 the mix is coordination with C-RAN at share mu*M; from mu2
    on it is cooperation with C-RAN at share mu. The bridge regime has no
    single two-scheme mix, so strictly interior mu is rejected.
    """
    bp = breakpoints(cfg)
    mu = cfg.cache_fraction
    if mu >= bp.mu2:
        mix = time_share(en_cooperation_ndt(cfg), cran_ndt(cfg), mu)
    elif mu <= bp.mu1:
        mix = time_share(en_coordination_ndt(cfg), cran_ndt(cfg), mu * cfg.ens)
    else:
        raise ValueError(
            "no single time-share construction strictly between "
            f"mu1={bp.mu1} and mu2={bp.mu2}; got mu={mu}"
        )
    return pipelined(mix)


def offline_lower_bound(cfg: NetworkConfig) -> Fraction:
    """Max over the cut-set family and the edge-only bound.

    Per-cut terms may go negative at large mu; the edge-only term
    K/min(M,K) then dominates, so they are left unclipped.
    """
    return _offline_lower_bound(cfg.ens, cfg.users, cfg.fronthaul_scaling, cfg.cache_fraction)


@lru_cache(maxsize=None)
def _offline_lower_bound(M: int, K: int, r: Fraction, mu: Fraction) -> Fraction:
    best = Fraction(K, min(M, K))
    for l in range(min(M, K) + 1):
        term = (K - (M - l) * (K - l) * mu) / (l + r)
        if term > best:
            best = term
    return best


@dataclass(frozen=True)
class OfflineGapRow:
    config: NetworkConfig
    achievable: Fraction
    lower_bound: Fraction
    ratio: Fraction
    regime: Regime


def offline_gap_certificate(configs: Iterable[NetworkConfig]) -> list[OfflineGapRow]:
    """Check ach/lb < 2 everywhere and ach == lb outside the bridge regime."""
    rows = []
    for cfg in configs:
        ach = offline_achievable(cfg)
        lb = offline_lower_bound(cfg)
        regime = offline_regime(cfg)
        if not lb <= ach:
            raise CertificateViolation(
                f"lower bound {lb} exceeds achievable {ach} at {cfg}"
            )
        if not ach < 2 * lb:
            raise CertificateViolation(
                f"achievable/lower-bound ratio {ach}/{lb} not below 2 at {cfg}"
            )
        if regime is not Regime.INTERMEDIATE and ach != lb:
            raise CertificateViolation(
                f"achievable {ach} != lower bound {lb} in regime "
                f"{regime.value} at {cfg}"
            )
        rows.append(OfflineGapRow(cfg, ach, lb, ach / lb, regime))
    return rows
