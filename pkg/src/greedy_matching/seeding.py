"""Splittable seed derivation: one independent stream per (master, instance, trial)."""

import hashlib
import random


def derive_seed(master: int, *indices) -> int:
    """64-bit seed from ``master`` and any number of indices or tags."""
    key = ":".join(str(x) for x in (master, *indices)).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def derive_rng(master: int, *indices) -> random.Random:
    return random.Random(derive_seed(master, *indices))
