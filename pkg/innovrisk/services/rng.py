"""
Random generator construction and seed derivation.

Every random draw in the package goes through numpy's PCG64 bit generator
seeded from a SeedSequence. Replication seeds are derived from
(master_seed, key...) via the SeedSequence spawn key, so any replication can
be regenerated in isolation and parallel workers never share state.
"""

import hashlib

import numpy as np

RNG_ALGORITHM = "numpy.PCG64/SeedSequence"

SeedLike = int | np.random.SeedSequence | np.random.Generator | None


def _key_to_int(key: int | str | float) -> int:
    if isinstance(key, int | np.integer) and key >= 0:
        return int(key)
    digest = hashlib.blake2b(repr(key).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_seed(master_seed: int, *keys: int | str | float) -> np.random.SeedSequence:
    """SeedSequence determined by the master seed and an ordered key path."""
    return np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=tuple(_key_to_int(k) for k in keys)
    )


def make_generator(seed: SeedLike) -> np.random.Generator:
    """
    Generator from an int, a SeedSequence, or an existing Generator.

    A Generator is returned as-is; callers that pass one own its state.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
