"""H64 and the random hash component.

H64(x) is the BLAKE2b digest of ``x`` with ``digest_size=8`` and key
``consts.H64_KEY``, read as an unsigned big-endian integer. Session pinning
feeds it ``hash || session`` where the session number is encoded as 8
big-endian bytes, so any implementation with a BLAKE2b primitive reproduces
the same pins.
"""

from __future__ import annotations

import hashlib

import numpy as np

from ..consts import H64_KEY, HASH_BYTES


def h64(data: bytes) -> int:
    digest = hashlib.blake2b(data, digest_size=8, key=H64_KEY).digest()
    return int.from_bytes(digest, "big")


def session_key(hash: bytes, session: int) -> bytes:
    return bytes(hash) + int(session).to_bytes(8, "big")


def draw_hash(rng: np.random.Generator, *, random: bool = True) -> bytes:
    if not random:
        return bytes(HASH_BYTES)
    return rng.bytes(HASH_BYTES)


def draw_nonce(rng: np.random.Generator) -> int:
    return int.from_bytes(rng.bytes(8), "big") or 1
