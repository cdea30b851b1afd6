# src/anumrad/seeding.py

"""Deterministic 64-bit seed derivation.

``splitmix64(seed, index)`` is the published child-seed function: parallel
and serial execution of seeded trials produce identical streams because every
consumer derives its own seed through this mix rather than sharing a
generator.
"""

from __future__ import annotations

import zlib

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int, index: int = 0) -> int:
    """Mix (seed, index) into a well-scrambled 64-bit child seed."""
    z = (int(seed) + (int(index) + 1) * _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def label_seed(seed: int, label: str) -> int:
    """Child seed namespaced by a string label (stable across runs)."""
    return splitmix64(seed, zlib.crc32(label.encode("utf-8")))
