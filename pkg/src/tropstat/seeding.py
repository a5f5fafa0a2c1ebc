"""Deterministic seed derivation for parallel Monte Carlo trials.

Trial k of a given experiment gets its own 64-bit seed, mixed from the
master seed, an experiment tag and the trial index with a splitmix64
avalanche. Results are therefore independent of execution order and
thread count.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One splitmix64 avalanche step (Steele et al.)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def _tag_to_int(tag: str) -> int:
    digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_seed(master_seed: int, tag: str, index: int) -> int:
    """64-bit seed for trial `index` of the experiment named `tag`."""
    z = splitmix64(master_seed & _MASK)
    z = splitmix64(z ^ _tag_to_int(tag))
    z = splitmix64(z ^ (index & _MASK))
    return z


def trial_rng(master_seed: int, tag: str, index: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, tag, index))
