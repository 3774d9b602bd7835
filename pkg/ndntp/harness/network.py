"""Wires a validated scenario into a running simulation.

The network owns the simulator, the links, the per-node runtimes and the
audit trail. Every packet leaving a node is recorded as ``out`` and either
delivered (``in`` at the receiver) or dropped with a reason.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Union

import numpy as np

from ..core.errors import BrokenLabel, NoRoute
from ..core.names import Name
from ..core.packets import Data, Interest
from ..core.security import KeyTable
from ..core.timing import ClockModel
from ..endpoints.client import ClientRunReport, NdntpClient
from ..endpoints.server import NdntpServer
from ..endpoints.strata import StratumSync
from ..forwarder.actions import Action, ArmTimer, DataSource, Drop, DropReason, EmitData, EmitInterest
from ..forwarder.pipeline import Forwarder
from ..schemas import NodeSpec, ScenarioConfig, StrategyKind
from ..sim.audit import AuditRecord, AuditTrail
from ..sim.engine import Event, EventKind, Simulator
from ..sim.links import Link
from ..sim.rng import StreamFactory
from ..strategies.dispatcher import StrategyDispatcher, StrategyTable
from .topology import compute_fib, link_faces

logger = logging.getLogger(__name__)

Packet = Union[Interest, Data]


def _uses_path_labels(config: ScenarioConfig, prefix: Name) -> bool:
    """Labels are chosen at the source, so a path-label assignment on any node
    covering the client's target prefix makes that client discover labels."""
    return any(
        assignment.kind is StrategyKind.PATH_LABEL and Name.from_uri(assignment.prefix).is_prefix_of(prefix)
        for assignment in config.strategies
    )


def _packet_fields(packet: Packet) -> dict:
    if isinstance(packet, Interest):
        return {
            "kind": "interest",
            "name": packet.name.uri,
            "nonce": packet.nonce,
            "hop_limit": packet.hop_limit,
            "label": packet.path_label,
            "must_be_fresh": packet.must_be_fresh,
        }
    return {
        "kind": "data",
        "name": packet.name.uri,
        "producer": packet.producer_id,
        "servers": tuple(inner.payload.server_id for inner in packet.inner_responses()),
        "freshness": packet.freshness_period,
    }


class ForwarderNode:
    def __init__(self, network: "Network", spec: NodeSpec, forwarder: Forwarder) -> None:
        self.network = network
        self.node_id = spec.id
        self.forwarder = forwarder

    def receive(self, face: int, packet: Packet) -> None:
        now = self.network.sim.now
        if isinstance(packet, Interest):
            actions = self.forwarder.process_interest(face, packet, now)
        else:
            actions = self.forwarder.process_data(face, packet, now)
        self.execute(actions)

    def _timer(self, kind: str, entry_id: int) -> None:
        self.execute(self.forwarder.on_timer(kind, entry_id, self.network.sim.now))

    def execute(self, actions: list[Action]) -> None:
        for action in actions:
            if isinstance(action, EmitInterest):
                self.network.send(self.node_id, action.face, action.interest, entry=action.entry_id)
            elif isinstance(action, EmitData):
                self.network.send(
                    self.node_id,
                    action.face,
                    action.data,
                    entry=action.entry_id,
                    source=action.source.value,
                    cache_age=action.cache_age,
                    freshness=action.freshness,
                    must_be_fresh=action.must_be_fresh,
                )
            elif isinstance(action, Drop):
                self.network.record_drop(self.node_id, action.packet, action.reason, face=action.face)
            elif isinstance(action, ArmTimer):
                self.network.sim.call_at(
                    action.fire_at,
                    self.node_id,
                    lambda kind=action.kind, entry_id=action.entry_id: self._timer(kind, entry_id),
                    timer_id=f"{action.kind}:{action.entry_id}",
                )


class HostNode:
    """End host running a client, a server, or a server with stratum sync."""

    def __init__(self, network: "Network", spec: NodeSpec, dispatcher: StrategyDispatcher, clock: ClockModel) -> None:
        self.network = network
        self.node_id = spec.id
        self.keys: KeyTable = network.keys
        self.dispatcher = dispatcher
        self.clock = clock
        self.server: Optional[NdntpServer] = None
        self.client: Optional[NdntpClient] = None
        self.stratum_sync: Optional[StratumSync] = None

    # ---- AppContext ----
    def now(self) -> int:
        return self.network.sim.now

    def call_at(self, fire_at: int, callback: Callable[[], None]) -> None:
        self.network.sim.call_at(fire_at, self.node_id, callback)

    def rng(self, purpose: str) -> np.random.Generator:
        return self.network.streams.get(self.node_id, purpose)

    def send_interest(self, interest: Interest) -> None:
        try:
            faces = self.dispatcher.choose(interest, None)
        except NoRoute:
            self.network.record_drop(self.node_id, interest, DropReason.NO_ROUTE)
            return
        except BrokenLabel:
            self.network.record_drop(self.node_id, interest, DropReason.BROKEN_LABEL)
            return
        for face in faces:
            self.network.send(self.node_id, face, interest, source="app")

    # ---- packets ----
    def apps(self) -> list[NdntpClient]:
        apps = []
        if self.client is not None:
            apps.append(self.client)
        if self.stratum_sync is not None:
            apps.append(self.stratum_sync.client)
        return apps

    def start_apps(self) -> None:
        if self.client is not None:
            self.client.schedule_runs()
        if self.stratum_sync is not None:
            self.stratum_sync.schedule()

    def receive(self, face: int, packet: Packet) -> None:
        if isinstance(packet, Data):
            for app in self.apps():
                app.on_data(packet)
            return

        reply = self.server.on_interest(packet, self.now()) if self.server is not None else None
        if reply is None:
            self.network.record_drop(self.node_id, packet, DropReason.NOT_ANNOUNCED, face=face)
            return
        self.call_at(
            reply.send_at,
            lambda: self.network.send(self.node_id, face, reply.data, source=DataSource.PRODUCER.value),
        )


class Network:
    def __init__(
            self,
            config: ScenarioConfig,
            *,
            seed: int,
            on_report: Optional[Callable[[ClientRunReport], None]] = None,
    ) -> None:
        self.config = config
        self.seed = seed
        self.sim = Simulator(handler=self._dispatch)
        self.streams = StreamFactory(seed)
        self.trail = AuditTrail()
        self.keys = KeyTable.for_nodes(seed, [node.id for node in config.nodes])
        self.fibs = compute_fib(config)
        self.on_report = on_report

        bindings = link_faces(config)
        self.links: list[Link] = []
        self.face_links: dict[tuple[str, int], Link] = {}
        for index, spec in enumerate(config.links):
            link_id = f"{spec.a}-{spec.b}#{index}"
            a_face = next(b.face for b in bindings[spec.a] if b.link_index == index)
            b_face = next(b.face for b in bindings[spec.b] if b.link_index == index)
            link = Link(
                link_id=link_id,
                a=spec.a,
                a_face=a_face,
                b=spec.b,
                b_face=b_face,
                delay=spec.delay_us,
                jitter=spec.jitter_us,
                loss_rate=spec.loss_rate,
                extra_delay_to_a=spec.extra_delay_to_a_us,
                extra_delay_to_b=spec.extra_delay_to_b_us,
                loss_rng=self.streams.get(link_id, "loss"),
                jitter_rng=self.streams.get(link_id, "jitter"),
            )
            self.links.append(link)
            self.face_links[(spec.a, a_face)] = link
            self.face_links[(spec.b, b_face)] = link

        anchors = config.anchors()
        self.forwarders: dict[str, ForwarderNode] = {}
        self.hosts: dict[str, HostNode] = {}
        for spec in config.nodes:
            neighbors: dict[str, int] = {}
            for binding in bindings[spec.id]:
                neighbors.setdefault(binding.neighbor, binding.face)
            dispatcher = StrategyDispatcher(
                spec.id,
                self.fibs[spec.id],
                StrategyTable.for_node(spec.id, config.strategies),
                neighbors,
                self.streams.get(spec.id, "strategy"),
            )
            clock = spec.clock.to_model()

            if spec.role == "forwarder":
                forwarder = Forwarder(
                    spec.id,
                    spec.forwarder,
                    pit_mode=config.pit_mode,
                    dispatcher=dispatcher,
                    keys=self.keys,
                    clock=clock,
                )
                self.forwarders[spec.id] = ForwarderNode(self, spec, forwarder)
                continue

            host = HostNode(self, spec, dispatcher, clock)
            if spec.role == "client":
                client_config = spec.client
                if _uses_path_labels(config, client_config.target_prefix):
                    client_config = client_config.model_copy(update={"discover_labels": True})
                host.client = NdntpClient(
                    spec.id,
                    client_config,
                    host,
                    clock=clock.local_time,
                    trust_anchors=anchors,
                    on_report=self._report,
                )
            else:
                host.server = NdntpServer(spec.id, spec.server, keys=self.keys, clock=clock)
                if spec.server.stratum_sync is not None:
                    host.stratum_sync = StratumSync(
                        host.server, spec.server.stratum_sync, host, trust_anchors=anchors
                    )
            self.hosts[spec.id] = host

    def _report(self, report: ClientRunReport) -> None:
        if self.on_report is not None:
            self.on_report(report)

    def node(self, node_id: str) -> Union[ForwarderNode, HostNode]:
        if node_id in self.forwarders:
            return self.forwarders[node_id]
        return self.hosts[node_id]

    # ---- packet movement ----
    def send(self, node_id: str, face: int, packet: Packet, *, entry: Optional[int] = None, **extra) -> None:
        now = self.sim.now
        link = self.face_links.get((node_id, face))
        if link is None:
            raise ValueError(f"{node_id} has no link on face {face}")
        fields = _packet_fields(packet)
        # Effective freshness and cache age of a CS hit override the packet view.
        fields.update({key: value for key, value in extra.items() if value is not None})
        self.trail.append(AuditRecord(
            time=now, node=node_id, direction="out", face=face, link=link.link_id, entry=entry, **fields,
        ))
        delivery = link.transmit(node_id, packet, now)
        if delivery.lost:
            self.trail.append(AuditRecord(
                time=now, node=delivery.to_node, direction="drop", face=delivery.to_face, link=link.link_id,
                reason=DropReason.LOSS.value, **_packet_fields(packet),
            ))
            return
        self.sim.schedule(
            delivery.deliver_at,
            EventKind.PACKET_DELIVERY,
            delivery.to_node,
            face=delivery.to_face,
            packet=packet,
            link=link.link_id,
        )

    def record_drop(self, node_id: str, packet: Packet, reason: DropReason, *, face: Optional[int] = None) -> None:
        self.trail.append(AuditRecord(
            time=self.sim.now, node=node_id, direction="drop", face=face, reason=reason.value,
            **_packet_fields(packet),
        ))

    def _dispatch(self, event: Event) -> None:
        if event.kind is EventKind.PACKET_DELIVERY:
            self.trail.append(AuditRecord(
                time=event.fire_at, node=event.node, direction="in", face=event.face, link=event.link,
                **_packet_fields(event.packet),
            ))
            self.node(event.node).receive(event.face, event.packet)
        elif event.kind is EventKind.APP_START:
            self.hosts[event.node].start_apps()

    # ---- lifecycle ----
    def start(self) -> None:
        for host in self.hosts.values():
            if host.apps():
                self.sim.schedule(0, EventKind.APP_START, host.node_id)

    def run(self, duration: int) -> int:
        self.start()
        executed = self.sim.run_until(duration)
        for event in self.sim.pending():
            if event.kind is EventKind.PACKET_DELIVERY:
                self.trail.append(AuditRecord(
                    time=duration, node=event.node, direction="drop", face=event.face, link=event.link,
                    reason=DropReason.END_OF_RUN.value, **_packet_fields(event.packet),
                ))
        return executed
