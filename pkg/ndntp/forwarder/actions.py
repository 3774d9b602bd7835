from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from ..core.packets import Data, Interest


class DropReason(str, enum.Enum):
    DUPLICATE_NONCE = "DuplicateNonce"
    RATE_LIMITED = "RateLimited"
    HOP_LIMIT_EXHAUSTED = "HopLimitExhausted"
    NO_ROUTE = "NoRoute"
    BROKEN_LABEL = "BrokenLabel"
    UNSOLICITED = "Unsolicited"
    PIT_CONSUMED = "PitConsumed"
    NOT_ANNOUNCED = "NotAnnounced"
    LOSS = "Loss"
    END_OF_RUN = "EndOfRun"


class DataSource(str, enum.Enum):
    PIT = "pit"
    CONTENT_STORE = "cs"
    RESPONDER = "responder"
    AGGREGATE = "aggregate"
    PRODUCER = "producer"


@dataclass(frozen=True)
class EmitInterest:
    face: int
    interest: Interest
    entry_id: Optional[int] = None


@dataclass(frozen=True)
class EmitData:
    face: int
    data: Data
    source: DataSource = DataSource.PIT
    entry_id: Optional[int] = None
    cache_age: Optional[int] = None
    # Freshness the content store applied, reported with CS hits.
    freshness: Optional[int] = None
    must_be_fresh: Optional[bool] = None


@dataclass(frozen=True)
class Drop:
    reason: DropReason
    packet: Union[Interest, Data]
    face: Optional[int] = None
    entry_id: Optional[int] = None


@dataclass(frozen=True)
class ArmTimer:
    fire_at: int
    kind: str
    entry_id: int


Action = Union[EmitInterest, EmitData, Drop, ArmTimer]
