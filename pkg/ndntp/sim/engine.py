"""Integer-microsecond discrete-event core.

Events sit in a binary heap keyed by ``(fire_at, seq)``; ``seq`` is the
insertion counter so equal-time events run in insertion order.
"""

from __future__ import annotations

import enum
import heapq
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from ..core.errors import PastEvent

logger = logging.getLogger(__name__)


class EventKind(str, enum.Enum):
    PACKET_DELIVERY = "packet-delivery"
    TIMER = "timer"
    APP_START = "app-start"


@dataclass(frozen=True)
class Event:
    fire_at: int
    seq: int
    kind: EventKind
    node: str
    face: Optional[int] = None
    packet: Any = None
    timer_id: Optional[str] = None
    link: Optional[str] = None
    callback: Optional[Callable[[], None]] = field(default=None, compare=False)


class Simulator:
    def __init__(self, handler: Optional[Callable[[Event], None]] = None) -> None:
        self.now = 0
        self._queue: list[tuple[int, int, Event]] = []
        self._seq = 0
        self.handler = handler
        self.executed = 0

    def __len__(self) -> int:
        return len(self._queue)

    def schedule(
            self,
            fire_at: int,
            kind: EventKind,
            node: str,
            *,
            face: Optional[int] = None,
            packet: Any = None,
            timer_id: Optional[str] = None,
            link: Optional[str] = None,
            callback: Optional[Callable[[], None]] = None,
    ) -> Event:
        if fire_at < self.now:
            raise PastEvent(f"cannot schedule at {fire_at} us, simulation time is already {self.now} us")
        event = Event(
            fire_at=int(fire_at),
            seq=self._seq,
            kind=kind,
            node=node,
            face=face,
            packet=packet,
            timer_id=timer_id,
            link=link,
            callback=callback,
        )
        self._seq += 1
        heapq.heappush(self._queue, (event.fire_at, event.seq, event))
        return event

    def call_at(self, fire_at: int, node: str, callback: Callable[[], None], *, timer_id: str = "app") -> Event:
        return self.schedule(fire_at, EventKind.TIMER, node, timer_id=timer_id, callback=callback)

    def pending(self) -> list[Event]:
        return [event for _, _, event in sorted(self._queue, key=lambda item: (item[0], item[1]))]

    def step(self) -> Event:
        fire_at, _, event = heapq.heappop(self._queue)
        self.now = fire_at
        if event.callback is not None:
            event.callback()
        elif self.handler is not None:
            self.handler(event)
        self.executed += 1
        return event

    def run_until(self, t_end: int) -> int:
        """Run every event with ``fire_at <= t_end``; returns how many ran."""
        executed = 0
        while self._queue and self._queue[0][0] <= t_end:
            self.step()
            executed += 1
        if self.now < t_end:
            self.now = t_end
        logger.debug("Ran %d events up to t=%d us", executed, t_end)
        return executed
