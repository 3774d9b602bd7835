from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..core.names import Name, try_parse_ndntp_name
from ..core.packets import Data, Interest, NdntpPayload, signing_bytes
from ..core.security import KeyTable
from ..core.timing import ClockModel
from ..schemas import ServerConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ServerReply:
    data: Data
    send_at: int


class NdntpServer:
    """Answers NDNTP Interests with signed timestamps from its serving clock.

    The serving clock is the local clock plus a correction that stratum
    synchronization steps; stratum-1 servers never correct.
    """

    def __init__(self, node_id: str, config: ServerConfig, *, keys: KeyTable, clock: ClockModel) -> None:
        self.node_id = node_id
        self.config = config
        self.keys = keys
        self.clock = clock
        self.correction = 0
        self.prefixes: list[Name] = config.prefixes()
        self.answered = 0

    @property
    def stratum(self) -> int:
        return self.config.stratum

    def serving_time(self, now: int) -> int:
        return self.clock.local_time(now) + self.correction

    def serving_error(self, now: int) -> int:
        return self.serving_time(now) - now

    def step(self, offset: int) -> None:
        self.correction += offset
        logger.info("%s stepped its serving clock by %d us", self.node_id, offset)

    def accepts(self, name: Name) -> bool:
        if not any(prefix.is_prefix_of(name) for prefix in self.prefixes):
            return False
        parsed = try_parse_ndntp_name(name)
        if parsed is None:
            return False
        return parsed.stratum is None or parsed.stratum == self.stratum

    def on_interest(self, interest: Interest, now: int) -> Optional[ServerReply]:
        if not self.accepts(interest.name):
            return None

        misbehavior = self.config.misbehavior
        lie = 0
        freshness = self.config.freshness_period_us
        if misbehavior is not None and misbehavior.kind == "fixed-offset-lie":
            lie = misbehavior.value_us
        if misbehavior is not None and misbehavior.kind == "large-freshness":
            freshness = misbehavior.value_us

        t2 = self.serving_time(now) + lie
        payload = NdntpPayload(
            t2_receive=t2,
            t3_transmit=t2 + self.config.processing_delay_us,
            stratum=self.stratum,
            server_id=self.node_id,
            echo_of_name=interest.name,
            path_record=(interest.discovery_record or ()) + (self.node_id,) if interest.is_discovery else (),
        )
        data = Data(
            name=interest.name,
            freshness_period=freshness,
            payload=payload,
            signature=self.keys.sign(signing_bytes(interest.name, freshness, payload), self.node_id),
            producer_id=self.node_id,
        )
        self.answered += 1
        return ServerReply(data=data, send_at=now + self.config.processing_delay_us)
