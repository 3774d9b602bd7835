"""Per-node NDN forwarding pipeline.

The forwarder is a pure state machine: every entry point takes the packet
and the current simulated time and returns the actions the node must carry
out. The network layer executes the actions and keeps the audit trail.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from ..core.names import Name, try_parse_ndntp_name
from ..core.packets import Data, Interest, NdntpPayload, signing_bytes
from ..core.security import KeyTable
from ..core.timing import ClockModel
from ..core.errors import BrokenLabel, NoRoute
from ..schemas import ForwarderConfig, PitMode
from ..strategies.dispatcher import StrategyDispatcher
from .actions import Action, ArmTimer, DataSource, Drop, DropReason, EmitData, EmitInterest
from .aggregation import aggregate_responses
from .content_store import ContentStore
from .pit import Pit, PitEntry
from .rate_limit import PrefixRateLimiter, RateDecision

logger = logging.getLogger(__name__)

TIMER_AGGREGATE = "aggregate"
TIMER_EXPIRE = "expire"


@dataclass
class ForwarderStats:
    cache_hits: int = 0
    max_cache_hit_age: Optional[int] = None
    pit_aggregations: int = 0
    flow_balance_violations: int = 0
    responder_answers: int = 0
    passive_syncs: int = 0
    aggregates_emitted: int = 0
    drops: Counter = field(default_factory=Counter)


@dataclass
class TimeEstimate:
    """Forwarder clock estimate learned from forwarded NDNTP responses."""

    correction: int = 0
    last_sync: Optional[int] = None
    stratum: Optional[int] = None


class Forwarder:
    def __init__(
            self,
            node_id: str,
            config: ForwarderConfig,
            *,
            pit_mode: PitMode,
            dispatcher: StrategyDispatcher,
            keys: KeyTable,
            clock: Optional[ClockModel] = None,
    ) -> None:
        self.node_id = node_id
        self.config = config
        self.pit_mode = config.pit_mode or pit_mode
        self.dispatcher = dispatcher
        self.keys = keys
        self.clock = clock or ClockModel()

        self.pit = Pit()
        self.cs = ContentStore(config.cs_capacity, config.cs_policy, config.cs_max_freshness_us)
        self.limiter: Optional[PrefixRateLimiter] = None
        if config.rate_limit is not None:
            self.limiter = PrefixRateLimiter(
                prefix=Name.from_uri(config.rate_limit.prefix),
                rate_per_s=config.rate_limit.rate_per_s,
                burst=config.rate_limit.burst,
            )
        self.estimate = TimeEstimate()
        self.stats = ForwarderStats()
        self._dead_nonces: dict[tuple[Name, int], int] = {}

    # ---- clock ----
    def estimated_time(self, now: int) -> int:
        return self.clock.local_time(now) + self.estimate.correction

    def clock_error(self, now: int) -> Optional[int]:
        if self.estimate.last_sync is None:
            return None
        return self.estimated_time(now) - now

    # ---- Interest pipeline ----
    def _drop(self, reason: DropReason, packet, face: Optional[int] = None, entry_id: Optional[int] = None) -> Drop:
        self.stats.drops[reason.value] += 1
        return Drop(reason=reason, packet=packet, face=face, entry_id=entry_id)

    def _seen_nonce(self, interest: Interest, now: int) -> bool:
        key = (interest.name, interest.nonce)
        expiry = self._dead_nonces.get(key)
        if expiry is not None and expiry > now:
            return True
        self._dead_nonces[key] = now + self.config.dead_nonce_ttl_us
        return False

    def _expire_dead_nonces(self, now: int) -> None:
        stale = [key for key, expiry in self._dead_nonces.items() if expiry <= now]
        for key in stale:
            del self._dead_nonces[key]

    def _plain_ndntp(self, interest: Interest) -> bool:
        return interest.name.is_ndntp and interest.path_label is None and not interest.is_discovery

    def process_interest(self, in_face: int, interest: Interest, now: int) -> list[Action]:
        if self._seen_nonce(interest, now):
            return [self._drop(DropReason.DUPLICATE_NONCE, interest, in_face)]

        if self.limiter is not None and self.limiter.check(interest.name, now) is RateDecision.DENY:
            return [self._drop(DropReason.RATE_LIMITED, interest, in_face)]

        if interest.hop_limit is not None:
            if interest.hop_limit == 0:
                return [self._drop(DropReason.HOP_LIMIT_EXHAUSTED, interest, in_face)]
            interest = interest.with_hop_limit(interest.hop_limit - 1)

        if not interest.is_discovery and interest.path_label is None:
            hit = self.cs.lookup(interest, now)
            if hit is not None:
                age = hit.age(now)
                self.stats.cache_hits += 1
                if self.stats.max_cache_hit_age is None or age > self.stats.max_cache_hit_age:
                    self.stats.max_cache_hit_age = age
                return [
                    EmitData(
                        face=in_face,
                        data=hit.data,
                        source=DataSource.CONTENT_STORE,
                        cache_age=age,
                        freshness=hit.freshness_period,
                        must_be_fresh=interest.must_be_fresh,
                    )
                ]

        if self._plain_ndntp(interest):
            answer = self.responder_answer(interest, now)
            if answer is not None:
                self.stats.responder_answers += 1
                return [EmitData(face=in_face, data=answer, source=DataSource.RESPONDER)]

        entry = self.pit.find(interest.name, now)
        if entry is not None:
            entry.add_in_record(in_face, interest.nonce, now)
            self.stats.pit_aggregations += 1
            logger.debug("%s aggregated %s from face %d", self.node_id, interest.name, in_face)
            return []

        entry = self.pit.insert(interest.name, self._mode_for(interest), now, interest.lifetime)
        entry.plain_ndntp = self._plain_ndntp(interest)
        entry.add_in_record(in_face, interest.nonce, now)

        try:
            faces = self.dispatcher.choose(interest, in_face)
        except NoRoute:
            self.pit.remove(entry)
            return [self._drop(DropReason.NO_ROUTE, interest, in_face)]
        except BrokenLabel:
            self.pit.remove(entry)
            return [self._drop(DropReason.BROKEN_LABEL, interest, in_face)]

        if interest.is_discovery:
            interest = interest.with_hop(self.node_id)

        actions: list[Action] = []
        for face in faces:
            entry.add_out_record(face, now)
            actions.append(EmitInterest(face=face, interest=interest, entry_id=entry.entry_id))

        if entry.mode is PitMode.AGGREGATE:
            entry.agg_deadline = min(entry.expiry, now + self.config.agg_timeout_us)
            actions.append(ArmTimer(entry.agg_deadline, TIMER_AGGREGATE, entry.entry_id))
        actions.append(ArmTimer(entry.expiry, TIMER_EXPIRE, entry.entry_id))
        return actions

    def _mode_for(self, interest: Interest) -> PitMode:
        if interest.is_discovery:
            return PitMode.MULTI_RESPONSE
        if not interest.name.is_ndntp:
            return PitMode.STANDARD
        return self.pit_mode

    # ---- in-network time ----
    def responder_answer(self, interest: Interest, now: int) -> Optional[Data]:
        responder = self.config.responder
        if responder is None or self.estimate.last_sync is None:
            return None
        if now - self.estimate.last_sync > responder.max_age_us:
            return None

        stratum = (self.estimate.stratum or 1) + 1
        parsed = try_parse_ndntp_name(interest.name)
        if parsed is None or (parsed.stratum is not None and parsed.stratum != stratum):
            return None

        timestamp = self.estimated_time(now)
        payload = NdntpPayload(
            t2_receive=timestamp,
            t3_transmit=timestamp,
            stratum=stratum,
            server_id=self.node_id,
            echo_of_name=interest.name,
        )
        return Data(
            name=interest.name,
            freshness_period=0,
            payload=payload,
            signature=self.keys.sign(signing_bytes(interest.name, 0, payload), self.node_id),
            producer_id=self.node_id,
        )

    def _passive_sync(self, data: Data, now: int) -> None:
        for inner in data.inner_responses():
            if isinstance(inner.payload, NdntpPayload):
                self.estimate.correction = inner.payload.t3_transmit - self.clock.local_time(now)
                self.estimate.last_sync = now
                self.estimate.stratum = inner.payload.stratum
                self.stats.passive_syncs += 1
                logger.debug("%s passive sync from %s at t=%d us", self.node_id, inner.payload.server_id, now)
                return

    # ---- Data pipeline ----
    def _emit_downstream(self, entry: PitEntry, data: Data, source: DataSource) -> list[Action]:
        actions: list[Action] = []
        for face in entry.downstream_faces():
            count = entry.emitted.get(face, 0) + 1
            entry.emitted[face] = count
            if count > 1:
                self.stats.flow_balance_violations += 1
            actions.append(EmitData(face=face, data=data, source=source, entry_id=entry.entry_id))
        return actions

    def _flush_aggregate(self, entry: PitEntry, now: int) -> list[Action]:
        aggregate = aggregate_responses(entry, now, node_id=self.node_id, keys=self.keys)
        self.stats.aggregates_emitted += 1
        self.pit.consume(entry)
        return self._emit_downstream(entry, aggregate, DataSource.AGGREGATE)

    def process_data(self, in_face: int, data: Data, now: int) -> list[Action]:
        entry = self.pit.find(data.name, now)
        if entry is None:
            if self.pit.was_consumed(data.name, now):
                return [self._drop(DropReason.PIT_CONSUMED, data, in_face)]
            return [self._drop(DropReason.UNSOLICITED, data, in_face)]

        self.cs.insert(data, now)
        if self.config.passive_sync and entry.plain_ndntp:
            self._passive_sync(data, now)

        entry.received_responses += 1

        if entry.mode is PitMode.STANDARD:
            self.pit.consume(entry)
            return self._emit_downstream(entry, data, DataSource.PIT)

        if entry.mode is PitMode.AGGREGATE:
            entry.agg_buffer.append(data)
            if entry.received_responses >= entry.expected_responses:
                return self._flush_aggregate(entry, now)
            return []

        actions = self._emit_downstream(entry, data, DataSource.PIT)
        if entry.received_responses >= entry.expected_responses:
            self.pit.consume(entry)
        return actions

    # ---- timers ----
    def on_timer(self, kind: str, entry_id: int, now: int) -> list[Action]:
        self._expire_dead_nonces(now)
        entry = self.pit.get_by_id(entry_id)
        if entry is None:
            return []

        if kind == TIMER_AGGREGATE:
            if entry.agg_buffer:
                logger.debug("%s aggregation deadline for %s with %d/%d responses",
                             self.node_id, entry.name, entry.received_responses, entry.expected_responses)
                return self._flush_aggregate(entry, now)
            return []

        if kind == TIMER_EXPIRE and entry.expiry <= now:
            self.pit.remove(entry)
        return []
