"""NDNTP client application.

A run draws one random hash, optionally discovers path labels, then sends
``servers_per_run`` sessions of ``samples_per_server`` Interests each.
Every Interest stays open until its lifetime ends and accepts any number of
responses; unanswered ones are recorded as losses and never retried. When
the last Interest of the run closes, the collected samples are filtered and
combined into a SyncResult.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..core.errors import NegativeDelay, NoUsableSamples
from ..core.hashing import draw_hash, draw_nonce
from ..core.names import Name, NameDecorations, build_ndntp_name
from ..core.packets import Data, Interest, NdntpPayload
from ..core.timing import Sample
from ..schemas import ClientConfig
from ..strategies.labels import PathLabelTable
from .context import AppContext
from .selection import Discard, DiscardReason, SelectionParams, SyncResult, select_and_combine

logger = logging.getLogger(__name__)


@dataclass
class PendingRequest:
    name: Name
    session: int
    sample: int
    t1: int
    sent_at: int
    deadline: int
    discovery: bool = False
    responses: int = 0


@dataclass(frozen=True)
class Observation:
    sample: Sample
    received_at: int
    true_offset: int


@dataclass(frozen=True)
class Rejection:
    server_id: str
    session: int
    sample: int
    reason: DiscardReason
    received_at: Optional[int] = None


@dataclass
class ClientRunReport:
    client_id: str
    run_index: int
    started_at: int
    hash: bytes
    observations: list[Observation] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)
    responses: int = 0
    finished_at: Optional[int] = None
    true_offset: Optional[int] = None
    result: Optional[SyncResult] = None
    discarded: list[Discard] = field(default_factory=list)
    failure: Optional[str] = None


@dataclass
class _Run:
    report: ClientRunReport
    pending: dict[Name, PendingRequest] = field(default_factory=dict)


class NdntpClient:
    def __init__(
            self,
            node_id: str,
            config: ClientConfig,
            ctx: AppContext,
            *,
            clock: Callable[[int], int],
            trust_anchors: Iterable[str],
            on_report: Optional[Callable[[ClientRunReport], None]] = None,
    ) -> None:
        self.node_id = node_id
        self.config = config
        self.ctx = ctx
        self.clock = clock
        self.trust_anchors = list(trust_anchors)
        self.on_report = on_report
        self.labels = PathLabelTable()
        self.reports: list[ClientRunReport] = []
        self._runs: list[_Run] = []
        self._hash_rng = ctx.rng("hash")
        self._nonce_rng = ctx.rng("nonce")

    # ---- scheduling ----
    def schedule_runs(self, start_at: Optional[int] = None) -> None:
        first = self.config.start_at_us if start_at is None else start_at
        for index in range(self.config.runs):
            fire_at = first + index * self.config.run_period_us
            self.ctx.call_at(fire_at, lambda index=index: self.start_run(index))

    def start_run(self, index: int) -> None:
        now = self.ctx.now()
        run = _Run(ClientRunReport(
            client_id=self.node_id,
            run_index=index,
            started_at=now,
            hash=draw_hash(self._hash_rng, random=self.config.use_random_hash),
        ))
        self._runs.append(run)
        logger.debug("%s starts run %d at t=%d us", self.node_id, index, now)

        sampling_at = now
        if self.config.discover_labels and not self.labels:
            self._send_discovery(run, now)
            sampling_at = now + self.config.discovery_wait_us

        last_send = sampling_at + (self.config.samples_per_server - 1) * self.config.inter_sample_gap_us
        for sample in range(self.config.samples_per_server):
            send_at = sampling_at + sample * self.config.inter_sample_gap_us
            self.ctx.call_at(send_at, lambda sample=sample: self._send_samples(run, sample))
        self.ctx.call_at(last_send + self.config.lifetime_us, lambda: self._finish(run))

    # ---- sending ----
    def _decorations(self) -> Optional[NameDecorations]:
        probability = None
        if self.config.strategy_decorations is not None:
            probability = self.config.strategy_decorations.probability
        if probability is None and self.config.target_stratum is None:
            return None
        return NameDecorations(stratum=self.config.target_stratum, probability=probability)

    def _hop_limit(self) -> Optional[int]:
        if self.config.strategy_decorations is None:
            return None
        return self.config.strategy_decorations.hop_limit

    def _send(self, run: _Run, interest: Interest, session: int, sample: int, *, discovery: bool = False) -> None:
        now = self.ctx.now()
        request = PendingRequest(
            name=interest.name,
            session=session,
            sample=sample,
            t1=self.clock(now),
            sent_at=now,
            deadline=now + interest.lifetime,
            discovery=discovery,
        )
        run.pending[interest.name] = request
        self.ctx.call_at(request.deadline, lambda: self._timeout(run, request))
        self.ctx.send_interest(interest)

    def _send_discovery(self, run: _Run, now: int) -> None:
        name = build_ndntp_name(draw_hash(self._hash_rng), 0, 0, self._decorations())
        interest = Interest(
            name=name,
            nonce=draw_nonce(self._nonce_rng),
            lifetime=self.config.lifetime_us,
            must_be_fresh=True,
            discovery_record=(),
        )
        self._send(run, interest, 0, 0, discovery=True)

    def _send_samples(self, run: _Run, sample: int) -> None:
        decorations = self._decorations()
        if self.config.multicast_sessions:
            sessions = [(0, tuple(range(self.config.servers_per_run)))]
        else:
            sessions = [(session, None) for session in range(self.config.servers_per_run)]

        for session, session_list in sessions:
            label = None
            if self.config.discover_labels:
                label = self.labels.label_for_session(session)
            interest = Interest(
                name=build_ndntp_name(run.report.hash, session, sample, decorations),
                nonce=draw_nonce(self._nonce_rng),
                lifetime=self.config.lifetime_us,
                hop_limit=self._hop_limit(),
                must_be_fresh=self.config.must_be_fresh,
                path_label=label,
                session_list=session_list,
            )
            self._send(run, interest, session, sample)

    # ---- receiving ----
    def _pending_for(self, name: Name) -> Optional[tuple[_Run, PendingRequest]]:
        for run in reversed(self._runs):
            request = run.pending.get(name)
            if request is not None:
                return run, request
        return None

    def on_data(self, data: Data) -> None:
        now = self.ctx.now()
        found = self._pending_for(data.name)
        if found is None:
            logger.debug("%s ignores late Data %s", self.node_id, data.name)
            return
        run, request = found
        request.responses += 1
        run.report.responses += 1

        for inner in data.inner_responses():
            payload = inner.payload
            if not isinstance(payload, NdntpPayload):
                continue
            if request.discovery:
                label_id = self.labels.add(payload.path_record)
                if label_id is not None:
                    logger.debug("%s learned label %s = %s", self.node_id, label_id, list(payload.path_record))
                continue
            self._record_sample(run, request, inner, payload, data if data.is_aggregate else None, now)

    def _record_sample(
            self,
            run: _Run,
            request: PendingRequest,
            inner: Data,
            payload: NdntpPayload,
            envelope: Optional[Data],
            now: int,
    ) -> None:
        t4 = self.clock(now)
        try:
            sample = Sample.from_exchange(
                t1_send=request.t1,
                t4_recv=t4,
                payload=payload,
                session=request.session,
                sample_index=request.sample,
                data=inner,
                envelope=envelope,
            )
        except NegativeDelay as exc:
            logger.warning("%s discarded a sample from %s: %s", self.node_id, payload.server_id, exc)
            run.report.rejections.append(Rejection(
                server_id=payload.server_id,
                session=request.session,
                sample=request.sample,
                reason=DiscardReason.NEGATIVE_DELAY,
                received_at=now,
            ))
            return
        run.report.observations.append(Observation(sample=sample, received_at=now, true_offset=now - t4))

    def _timeout(self, run: _Run, request: PendingRequest) -> None:
        if run.pending.get(request.name) is not request:
            return
        del run.pending[request.name]
        if request.responses == 0 and not request.discovery:
            run.report.rejections.append(Rejection(
                server_id="",
                session=request.session,
                sample=request.sample,
                reason=DiscardReason.TIMEOUT,
            ))

    # ---- combining ----
    def _finish(self, run: _Run) -> None:
        for request in list(run.pending.values()):
            self._timeout(run, request)

        now = self.ctx.now()
        report = run.report
        report.finished_at = now
        report.true_offset = now - self.clock(now)

        samples = [observation.sample for observation in report.observations]
        params = SelectionParams(self.config.rtt_threshold_us, self.config.cluster_tolerance_us)
        try:
            report.result = select_and_combine(
                samples, params, keys=self.ctx.keys, trust_anchors=self.trust_anchors
            )
        except NoUsableSamples as exc:
            report.failure = str(exc)
            report.discarded = list(exc.discarded)
            logger.warning("%s run %d produced no estimate: %s", self.node_id, report.run_index, exc)
        else:
            report.discarded = list(report.result.discarded)
            for discard in report.result.discarded:
                if discard.reason is DiscardReason.OFFSET_OUTLIER and self.config.discover_labels:
                    self.labels.exclude_server(discard.server_id)

        self._runs.remove(run)
        self.reports.append(report)
        if self.on_report is not None:
            self.on_report(report)
