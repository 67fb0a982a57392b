"""Baseline delivery schemes and the pipelined/time-sharing combinators.

Each baseline returns an NdtPair; callers combine pairs with time_share
and only collapse to a scalar via pipelined at the outermost step.
"""

from __future__ import annotations

from fractions import Fraction

from .model import NdtPair, NetworkConfig, as_fraction


def en_cooperation_ndt(cfg: NetworkConfig) -> NdtPair:
    """Full caching at every EN; joint zero-forcing over the edge."""
    return NdtPair(edge=Fraction(cfg.users, cfg.min_mk), fronthaul=Fraction(0))


def en_coordination_ndt(cfg: NetworkConfig) -> NdtPair:
    """Disjoint per-EN caching; interference alignment over the edge."""
    return NdtPair(
        edge=Fraction(cfg.ens + cfg.users - 1, cfg.ens), fronthaul=Fraction(0)
    )


def cran_ndt(cfg: NetworkConfig) -> NdtPair:
    """Cloud multicasts everything over the fronthaul; ENs zero-force."""
    return NdtPair(
        edge=Fraction(cfg.users, cfg.min_mk),
        fronthaul=cfg.users / cfg.fronthaul_scaling,
    )


def pipelined(pair: NdtPair) -> Fraction:
    """Total delivery time with simultaneous fronthaul and edge use."""
    return max(pair.edge, pair.fronthaul)


def time_share(first: NdtPair, second: NdtPair, alpha) -> NdtPair:
    """Componentwise convex combination alpha*first + (1-alpha)*second."""
    alpha = as_fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"time share fraction must lie in [0, 1], got {alpha}")
    return NdtPair(
        edge=alpha * first.edge + (1 - alpha) * second.edge,
        fronthaul=alpha * first.fronthaul + (1 - alpha) * second.fronthaul,
    )
