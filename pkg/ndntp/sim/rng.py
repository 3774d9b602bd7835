from __future__ import annotations

import hashlib

import numpy as np


def _tag_word(tag: str) -> int:
    return int.from_bytes(hashlib.blake2b(tag.encode(), digest_size=4).digest(), "big")


def rng_stream(seed: int, scope: str, purpose: str) -> np.random.Generator:
    """Independent Philox stream keyed by ``(seed, scope, purpose)``.

    Streams never share state, so adding a node or drawing more on one
    stream leaves every other stream's sequence unchanged.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=(_tag_word(scope), _tag_word(purpose)))
    return np.random.Generator(np.random.Philox(sequence))


class StreamFactory:
    def __init__(self, seed: int) -> None:
        self.seed = int(seed)
        self._streams: dict[tuple[str, str], np.random.Generator] = {}

    def get(self, scope: str, purpose: str) -> np.random.Generator:
        key = (scope, purpose)
        stream = self._streams.get(key)
        if stream is None:
            stream = rng_stream(self.seed, scope, purpose)
            self._streams[key] = stream
        return stream
