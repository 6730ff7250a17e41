"""Deterministic named RNG streams derived from one master seed.

All randomness in the toolkit flows through ``stream``: a master seed plus
a sequence of name parts (strings/ints) is hashed into the seed of an
independent ``random.Random``.  Streams are therefore reproducible and
insensitive to the order in which other streams are consumed.
"""

import hashlib
import random

DEFAULT_SEED = 0xC0FFEE


def _digest(parts) -> int:
    blob = repr(parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(blob, digest_size=8).digest(), "big")


def stream(seed: int, *names) -> random.Random:
    """An independent Random keyed by the master seed and a stream name."""
    return random.Random(_digest((int(seed),) + names))


def fingerprint(*parts) -> int:
    """Stable 64-bit fingerprint of a tuple of primitives (for cache keys)."""
    return _digest(parts)
