"""Domain types, validation, and the cache-regime taxonomy.

All dimensionless parameters (cache fraction, fronthaul scaling, churn
probability) are kept as exact `fractions.Fraction` values so that every
piecewise formula downstream can be evaluated and compared without
floating-point slack.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

Real = Union[int, float, Fraction]


class ConfigError(ValueError):
    """A network configuration violates a model invariant."""


class CertificateViolation(AssertionError):
    """A proved inequality failed at a concrete parameter point."""


def as_fraction(value: Real | str) -> Fraction:
    """Coerce a number or numeric string to an exact Fraction.

    Strings accept plain decimals ("0.25"), ratios ("1/11"), and
    scientific notation ("1.5e-1"). Floats convert exactly (binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ConfigError(f"non-finite parameter value {value!r}")
        return Fraction(value)
    raise ConfigError(f"cannot interpret {value!r} as a number")


@dataclass(frozen=True)
class NetworkConfig:
    """One network instance: M edge nodes, K users, N-file library."""

    ens: int
    users: int
    library_size: int
    cache_fraction: Fraction
    fronthaul_scaling: Fraction
    churn_probability: Fraction

    def __post_init__(self) -> None:
        if self.ens < 1:
            raise ConfigError("edge node count must be positive")
        if self.users < 1:
            raise ConfigError("user count must be positive")
        if self.library_size < self.users:
            raise ConfigError("library smaller than demand")
        if not 0 <= self.cache_fraction <= 1:
            raise ConfigError("cache fraction must lie in [0, 1]")
        if self.fronthaul_scaling <= 0:
            raise ConfigError("fronthaul scaling must be positive")
        if not 0 <= self.churn_probability <= 1:
            raise ConfigError("churn probability must lie in [0, 1]")

    @property
    def min_mk(self) -> int:
        return min(self.ens, self.users)


def validate_config(
    ens: Real | str,
    users: Real | str,
    library_size: Real | str,
    cache_fraction: Real | str,
    fronthaul_scaling: Real | str,
    churn_probability: Real | str,
) -> NetworkConfig:
    """Build a NetworkConfig from raw values, enforcing every invariant."""
    counts = []
    for name, value in (("ens", ens), ("users", users), ("library_size", library_size)):
        f = as_fraction(value)
        if f.denominator != 1:
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        counts.append(int(f))
    return NetworkConfig(
        ens=counts[0],
        users=counts[1],
        library_size=counts[2],
        cache_fraction=as_fraction(cache_fraction),
        fronthaul_scaling=as_fraction(fronthaul_scaling),
        churn_probability=as_fraction(churn_probability),
    )


@dataclass(frozen=True)
class NdtPair:
    """Edge and fronthaul delivery-time components of one scheme.

    The two components stay separate through every combination step; the
    pipelined total is the max, taken only at the outermost point of use.
    """

    edge: Fraction
    fronthaul: Fraction

    def __post_init__(self) -> None:
        if self.edge < 0 or self.fronthaul < 0:
            raise ConfigError("NDT components must be nonnegative")


@dataclass(frozen=True)
class RegimeBreakpoints:
    """Cache-fraction thresholds separating the delivery regimes.

    mu2_prime_raw may exceed 1 and is +infinity when users == 1; the
    clamped twin is min(raw, 1). The raw value is what the online
    interpolation divides by, so both forms are kept.
    """

    mu1: Fraction
    mu2: Fraction
    mu2_prime_raw: Union[Fraction, float]
    mu2_prime_clamped: Fraction

    def __post_init__(self) -> None:
        assert 0 <= self.mu1 <= self.mu2 <= self.mu2_prime_raw


class Regime(enum.Enum):
    LOW_CACHE = "low_cache"
    INTERMEDIATE = "intermediate"
    FULL_CACHING = "full_caching"


def classify_regime(mu: Fraction, breakpoints: RegimeBreakpoints, *, online: bool) -> Regime:
    """Map a cache fraction to its regime for the offline or online scheme.

    The upper threshold is mu2 offline and the raw mu2' online. Boundary
    points satisfy both adjacent closed-interval formulas; ties resolve
    full-caching first, then low-cache, so mu == mu1 reports LOW_CACHE
    and a fully collapsed breakpoint triple reports FULL_CACHING.
    """
    upper = breakpoints.mu2_prime_raw if online else breakpoints.mu2
    if mu >= upper:
        return Regime.FULL_CACHING
    if mu <= breakpoints.mu1:
        return Regime.LOW_CACHE
    return Regime.INTERMEDIATE


_CONFIG_FIELDS = (
    "ens",
    "users",
    "library_size",
    "cache_fraction",
    "fronthaul_scaling",
    "churn_probability",
)


def write_config_file(cfg: NetworkConfig, path: str | Path) -> None:
    """Serialize a config as `key = value` lines, one field per line."""
    lines = [f"{name} = {getattr(cfg, name)}" for name in _CONFIG_FIELDS]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_config_file(path: str | Path) -> NetworkConfig:
    """Parse a `key = value` config file written by write_config_file."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"malformed config line {lineno}: {line!r}")
        key, _, value = line.partition("=")
        raw[key.strip()] = value.strip()
    missing = [name for name in _CONFIG_FIELDS if name not in raw]
    if missing:
        raise ConfigError(f"config file missing fields: {', '.join(missing)}")
    unknown = sorted(set(raw) - set(_CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"config file has unknown fields: {', '.join(unknown)}")
    return validate_config(**raw)
