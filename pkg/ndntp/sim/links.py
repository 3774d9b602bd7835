from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np


@dataclass(frozen=True)
class Delivery:
    link_id: str
    to_node: str
    to_face: int
    deliver_at: Optional[int]
    packet: Any

    @property
    def lost(self) -> bool:
        return self.deliver_at is None


@dataclass
class Link:
    link_id: str
    a: str
    a_face: int
    b: str
    b_face: int
    delay: int
    jitter: int = 0
    loss_rate: float = 0.0
    extra_delay_to_a: int = 0
    extra_delay_to_b: int = 0
    loss_rng: Optional[np.random.Generator] = None
    jitter_rng: Optional[np.random.Generator] = None

    def __post_init__(self) -> None:
        if self.delay <= 0:
            raise ValueError(f"link {self.link_id} needs a positive delay")
        if self.jitter < 0 or self.extra_delay_to_a < 0 or self.extra_delay_to_b < 0:
            raise ValueError(f"link {self.link_id} has a negative delay component")
        if not 0.0 <= self.loss_rate <= 1.0:
            raise ValueError(f"link {self.link_id} loss rate must be within [0, 1]")

    def other_end(self, node: str) -> tuple[str, int]:
        if node == self.a:
            return self.b, self.b_face
        if node == self.b:
            return self.a, self.a_face
        raise ValueError(f"{node} is not an endpoint of link {self.link_id}")

    def face_of(self, node: str) -> int:
        if node == self.a:
            return self.a_face
        if node == self.b:
            return self.b_face
        raise ValueError(f"{node} is not an endpoint of link {self.link_id}")

    def one_way_delay(self, to_node: str) -> int:
        extra = self.extra_delay_to_a if to_node == self.a else self.extra_delay_to_b
        return self.delay + extra

    def transmit(self, from_node: str, packet: Any, now: int) -> Delivery:
        to_node, to_face = self.other_end(from_node)

        lost = False
        if self.loss_rng is not None:
            lost = bool(self.loss_rng.random() < self.loss_rate)
        elif self.loss_rate >= 1.0:
            lost = True
        if lost:
            return Delivery(self.link_id, to_node, to_face, None, packet)

        jitter = 0
        if self.jitter_rng is not None and self.jitter > 0:
            jitter = int(self.jitter_rng.integers(0, self.jitter + 1))

        # Equal delivery times keep send order through the event seq.
        deliver_at = now + self.one_way_delay(to_node) + jitter
        return Delivery(self.link_id, to_node, to_face, deliver_at, packet)
