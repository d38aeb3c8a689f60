"""Counter-based random streams for reproducible test instances.

Key schedule
------------
A stream is identified by ``(seed, trial, tag)``, where ``seed`` is an
unsigned 64-bit integer, ``trial`` a nonnegative integer and ``tag`` a
UTF-8 string naming the role (for example ``"lemma-a|d4|n2|A"``). Its key is

    key = BLAKE2b(digest_size=8, data=f"{seed}:{trial}:{tag}".encode())

read as a little-endian unsigned 64-bit integer.

Word generator
--------------
Word ``i`` (``i = 0, 1, 2, ...``) of a stream is SplitMix64 evaluated in
counter mode::

    z = (key + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    word = z ^ (z >> 31)

Each word depends only on ``(key, i)``, so any word of any stream can be
produced without touching the others.

Variates
--------
* uniform: ``(word >> 11) * 2**-53``, in ``[0, 1)``.
* standard normal pair (Box-Muller) from consecutive uniforms ``u1, u2``:
  ``rho = sqrt(-2 log1p(-u1))``, ``z0 = rho cos(2 pi u2)``,
  ``z1 = rho sin(2 pi u2)``.
* standard complex normal: ``(z0 + 1j z1) / sqrt(2)`` from one pair, so
  ``E|z|^2 = 1``.

Arrays are filled in C (row-major) order and words are consumed in order.
"""

from __future__ import annotations

import hashlib

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)
MASK64 = (1 << 64) - 1


def stream_key(seed: int, trial: int, tag: str) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    digest = hashlib.blake2b(f"{seed}:{trial}:{tag}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def splitmix_words(key: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(key) + idx * GAMMA
        z = (z ^ (z >> np.uint64(30))) * M1
        z = (z ^ (z >> np.uint64(27))) * M2
    return z ^ (z >> np.uint64(31))


class Stream:
    """Sequential reader over one counter-based substream."""

    def __init__(self, seed: int, trial: int, tag: str):
        self.seed = seed
        self.trial = trial
        self.tag = tag
        self.key = stream_key(seed, trial, tag)
        self.position = 0

    def words(self, count: int) -> np.ndarray:
        out = splitmix_words(self.key, self.position, count)
        self.position += count
        return out

    def uniform(self, size=None, low: float = 0.0, high: float = 1.0):
        n = 1 if size is None else int(np.prod(size))
        u = (self.words(n) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
        u = low + (high - low) * u
        return float(u[0]) if size is None else u.reshape(size)

    def _normal_pairs(self, n: int):
        u = self.uniform(2 * n).reshape(n, 2)
        rho = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        ang = 2.0 * np.pi * u[:, 1]
        return rho * np.cos(ang), rho * np.sin(ang)

    def normal(self, size) -> np.ndarray:
        n = int(np.prod(size))
        z0, z1 = self._normal_pairs((n + 1) // 2)
        return np.column_stack([z0, z1]).ravel()[:n].reshape(size)

    def complex_normal(self, size) -> np.ndarray:
        n = int(np.prod(size))
        z0, z1 = self._normal_pairs(n)
        return ((z0 + 1j * z1) / np.sqrt(2.0)).reshape(size)
