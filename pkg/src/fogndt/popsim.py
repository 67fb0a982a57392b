"""Popular-set churn process and per-slot request sampling.

The library holds N popular files. Each slot, with probability p, one
uniformly chosen file is replaced by a brand-new one; users then request
K distinct files uniformly without replacement. File identifiers are
monotone counters, so whether a requested file arrived this very slot is
decidable by index comparison alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class PopularSet:
    slot: int
    files: tuple[int, ...]
    arrival: bool
    replaced_index: Optional[int]

    def __post_init__(self) -> None:
        assert len(set(self.files)) == len(self.files)
        assert (self.replaced_index is not None) == self.arrival


@dataclass(frozen=True)
class RequestVector:
    """K distinct positions (indices into PopularSet.files)."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        assert len(set(self.indices)) == len(self.indices)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Deterministic generator for one trajectory.

    Distinct streams under one master seed are independent, so parallel
    trials can each take their own stream index.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


def init_popular_set(n_files: int, seed: int = 0) -> PopularSet:
    """Slot-0 popular set: identifiers 0..N-1, no arrival.

    The initial set is deterministic; seed only matters to the stream
    that later advances the set, and is accepted here so trajectory
    setup can pass one value to both this and make_rng.
    """
    if n_files < 1:
        raise ValueError("library needs at least one file")
    return PopularSet(slot=0, files=tuple(range(n_files)), arrival=False, replaced_index=None)


def advance(popular: PopularSet, p, rng: np.random.Generator) -> PopularSet:
    """One churn step: with probability p replace a uniform position.

    The replacement identifier is one past the largest ever used, so new
    files are globally fresh. Without an arrival the file list is carried
    over unchanged.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"churn probability must lie in [0, 1], got {p}")
    if p > 0 and rng.random() < p:
        index = int(rng.integers(len(popular.files)))
        files = list(popular.files)
        files[index] = max(popular.files) + 1
        return PopularSet(
            slot=popular.slot + 1,
            files=tuple(files),
            arrival=True,
            replaced_index=index,
        )
    return PopularSet(
        slot=popular.slot + 1,
        files=popular.files,
        arrival=False,
        replaced_index=None,
    )


def sample_requests(popular: PopularSet, k_users: int, rng: np.random.Generator) -> RequestVector:
    """Uniform without-replacement draw of K request positions."""
    n = len(popular.files)
    if k_users > n:
        raise ValueError(f"cannot request {k_users} distinct files from a library of {n}")
    drawn = rng.choice(n, size=k_users, replace=False)
    return RequestVector(indices=tuple(int(i) for i in drawn))
