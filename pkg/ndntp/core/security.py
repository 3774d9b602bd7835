from __future__ import annotations

import enum
import hashlib
import hmac
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class SignedEnvelope:
    key_id: str
    tag: bytes


class VerifyResult(str, enum.Enum):
    OK = "ok"
    UNKNOWN_KEY = "unknown-key"
    BAD_TAG = "bad-tag"


def derive_secret(seed: int, key_id: str) -> bytes:
    return hmac.new(
        f"ndntp-key-table/{seed}".encode(),
        key_id.encode(),
        hashlib.sha256,
    ).digest()


@dataclass
class KeyTable:
    """Scenario-local secrets used for HMAC-SHA256 signatures.

    Every node owns one key whose id is the node id. There is no PKI: a
    verifier accepts a tag only when the key id is one of its trust anchors.
    """

    secrets: dict[str, bytes] = field(default_factory=dict)

    @classmethod
    def for_nodes(cls, seed: int, node_ids: Iterable[str]) -> "KeyTable":
        return cls({node_id: derive_secret(seed, node_id) for node_id in node_ids})

    def __contains__(self, key_id: str) -> bool:
        return key_id in self.secrets

    def sign(self, data: bytes, key_id: str) -> SignedEnvelope:
        secret = self.secrets.get(key_id)
        if secret is None:
            raise KeyError(f"no key registered for {key_id!r}")
        return SignedEnvelope(key_id=key_id, tag=hmac.new(secret, data, hashlib.sha256).digest())

    def verify(self, envelope: SignedEnvelope, data: bytes, trust_anchors: Iterable[str]) -> VerifyResult:
        if envelope.key_id not in set(trust_anchors):
            return VerifyResult.UNKNOWN_KEY
        secret = self.secrets.get(envelope.key_id)
        if secret is None:
            return VerifyResult.UNKNOWN_KEY
        expected = hmac.new(secret, data, hashlib.sha256).digest()
        if not hmac.compare_digest(expected, envelope.tag):
            return VerifyResult.BAD_TAG
        return VerifyResult.OK
