"""Deterministic, splittable randomness.

Every random choice in the package is drawn from a generator derived from one
64-bit seed plus a tuple of string labels naming the consumer, so adding a
new consumer never perturbs the streams of the existing ones.
"""

from __future__ import annotations

import zlib
from fractions import Fraction

import numpy as np

DEFAULT_SEED = 42


def rng_for(seed: int, *labels: object) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    key = tuple(zlib.crc32(str(lab).encode()) for lab in labels)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def random_rational(rng: np.random.Generator, bound: int = 30) -> Fraction:
    num = int(rng.integers(-bound, bound + 1))
    den = int(rng.integers(1, bound + 1))
    return Fraction(num, den)


def random_nonzero_rational(rng: np.random.Generator, bound: int = 30) -> Fraction:
    while True:
        q = random_rational(rng, bound)
        if q:
            return q
