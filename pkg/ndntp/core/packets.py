from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional, Union

from ..consts import DEFAULT_PIT_LIFETIME_US, MAX_HOP_LIMIT
from .names import Name
from .security import SignedEnvelope


@dataclass(frozen=True)
class Interest:
    name: Name
    nonce: int
    lifetime: int = DEFAULT_PIT_LIFETIME_US
    hop_limit: Optional[int] = None
    must_be_fresh: bool = False
    path_label: Optional[tuple[str, ...]] = None
    session_list: Optional[tuple[int, ...]] = None
    # Node ids appended hop by hop while a discovery Interest travels.
    discovery_record: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.nonce == 0:
            raise ValueError("Interest nonce must be non-zero")
        if self.hop_limit is not None and not 0 <= self.hop_limit <= MAX_HOP_LIMIT:
            raise ValueError(f"hop limit must be within [0, {MAX_HOP_LIMIT}]")
        if self.path_label is not None and len(set(self.path_label)) != len(self.path_label):
            raise ValueError("path label entries must be distinct")
        if self.lifetime <= 0:
            raise ValueError("Interest lifetime must be positive")

    @property
    def is_discovery(self) -> bool:
        return self.discovery_record is not None

    def with_hop_limit(self, hop_limit: int) -> "Interest":
        return dataclasses.replace(self, hop_limit=hop_limit)

    def with_hop(self, node_id: str) -> "Interest":
        record = self.discovery_record or ()
        return dataclasses.replace(self, discovery_record=record + (node_id,))


@dataclass(frozen=True)
class NdntpPayload:
    t2_receive: int
    t3_transmit: int
    stratum: int
    server_id: str
    echo_of_name: Name
    path_record: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.t3_transmit < self.t2_receive:
            raise ValueError("t3_transmit must not precede t2_receive")
        if self.stratum < 1:
            raise ValueError("stratum must be >= 1")


@dataclass(frozen=True)
class AggregatePayload:
    responses: tuple["Data", ...]
    partial: bool = False

    def __post_init__(self) -> None:
        if not self.responses:
            raise ValueError("aggregate payload needs at least one response")


Payload = Union[NdntpPayload, AggregatePayload]


def _payload_document(payload: Payload) -> dict:
    if isinstance(payload, NdntpPayload):
        return {
            "type": "ndntp",
            "t2": payload.t2_receive,
            "t3": payload.t3_transmit,
            "stratum": payload.stratum,
            "server": payload.server_id,
            "echo": payload.echo_of_name.uri,
            "path": list(payload.path_record),
        }
    return {
        "type": "aggregate",
        "partial": payload.partial,
        "responses": [
            {
                "covered": inner.signed_bytes().hex(),
                "key": inner.signature.key_id,
                "tag": inner.signature.tag.hex(),
            }
            for inner in payload.responses
        ],
    }


def signing_bytes(name: Name, freshness_period: int, payload: Payload) -> bytes:
    document = {
        "name": name.uri,
        "freshness": freshness_period,
        "payload": _payload_document(payload),
    }
    return json.dumps(document, sort_keys=True, separators=(",", ":")).encode()


@dataclass(frozen=True)
class Data:
    name: Name
    freshness_period: int
    payload: Payload
    signature: SignedEnvelope
    producer_id: str

    def signed_bytes(self) -> bytes:
        return signing_bytes(self.name, self.freshness_period, self.payload)

    @property
    def is_aggregate(self) -> bool:
        return isinstance(self.payload, AggregatePayload)

    def inner_responses(self) -> tuple["Data", ...]:
        if isinstance(self.payload, AggregatePayload):
            return self.payload.responses
        return (self,)


Packet = Union[Interest, Data]
