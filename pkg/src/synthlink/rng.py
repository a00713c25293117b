"""Seed derivation and counter-style hashing.

All randomness goes through numpy's PCG64 bit generator. Child seeds are
derived with :class:`numpy.random.SeedSequence`, which hashes the base seed
together with a spawn key, so ``derive_seed(base, point, replicate)`` gives
independent, reproducible streams for every (point, replicate) task.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, *keys: int) -> int:
    """Return a 64-bit seed derived from ``base_seed`` and integer ``keys``."""
    if base_seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seeds and keys must be non-negative")
    ss = np.random.SeedSequence(base_seed & _MASK64, spawn_key=tuple(keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """PCG64 generator for ``seed`` (optionally specialised by ``keys``)."""
    ss = np.random.SeedSequence(seed & _MASK64, spawn_key=tuple(keys))
    return np.random.Generator(np.random.PCG64(ss))


def _splitmix64(x):
    # x is a uint64 array; wraparound is the intended modular arithmetic
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def hash_pairs(seed: int, u, v) -> np.ndarray:
    """Hash ``(seed, u, v)`` triples to uniform floats in [0, 1).

    The mix is SplitMix64 applied in a chain, so the output depends on every
    input bit. The top 53 bits become the float mantissa.
    """
    u = np.asarray(u, dtype=np.uint64)
    v = np.asarray(v, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = _splitmix64(np.full(u.shape, seed & _MASK64, dtype=np.uint64))
        h = _splitmix64(h ^ u)
        h = _splitmix64(h ^ v)
    return (h >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
