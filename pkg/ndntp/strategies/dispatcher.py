from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from ..core.errors import NoRoute
from ..core.names import Name, try_parse_ndntp_name
from ..core.packets import Interest
from ..forwarder.fib import Fib
from ..schemas import StrategyAssignment, StrategyKind
from .choosers import (
    SessionPinState,
    best_route,
    hop_limit_choose,
    multicast_choose,
    path_label_forward,
    probabilistic_choose,
    session_pin,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StrategyChoice:
    kind: StrategyKind
    threshold: int = 1


DEFAULT_CHOICE = StrategyChoice(StrategyKind.BEST_ROUTE)


@dataclass
class StrategyTable:
    """Per-node prefix to strategy mapping, resolved by longest-prefix match."""

    choices: dict[Name, StrategyChoice] = field(default_factory=dict)

    @classmethod
    def for_node(cls, node_id: str, assignments: list[StrategyAssignment]) -> "StrategyTable":
        table = cls()
        # Wildcards first so a node-specific assignment on the same prefix wins.
        for assignment in sorted(assignments, key=lambda item: item.node != "*"):
            if assignment.node in ("*", node_id):
                table.set(Name.from_uri(assignment.prefix), StrategyChoice(assignment.kind, assignment.threshold))
        return table

    def set(self, prefix: Name, choice: StrategyChoice) -> None:
        self.choices[prefix] = choice

    def lookup(self, name: Name) -> StrategyChoice:
        for length in range(len(name), -1, -1):
            choice = self.choices.get(name.prefix(length))
            if choice is not None:
                return choice
        return DEFAULT_CHOICE


class StrategyDispatcher:
    """Chooses outgoing faces for one node.

    Labeled Interests bypass the FIB; discovery Interests are multicast;
    everything else goes to the strategy assigned to the longest matching
    prefix, falling back to best route when the Interest lacks what the
    strategy needs.
    """

    def __init__(
            self,
            node_id: str,
            fib: Fib,
            table: StrategyTable,
            neighbors: Mapping[str, int],
            rng: np.random.Generator,
    ) -> None:
        self.node_id = node_id
        self.fib = fib
        self.table = table
        self.neighbors = dict(neighbors)
        self.rng = rng
        self.pins = SessionPinState()

    def choose(self, interest: Interest, in_face: Optional[int]) -> list[int]:
        if interest.path_label is not None:
            return [path_label_forward(self.node_id, interest.path_label, self.neighbors, in_face)]

        fib_entry = self.fib.lookup(interest.name)
        if fib_entry is None:
            raise NoRoute(f"no FIB entry for {interest.name}")

        if interest.is_discovery:
            return multicast_choose(fib_entry, in_face)

        choice = self.table.lookup(interest.name)
        parsed = try_parse_ndntp_name(interest.name)

        if choice.kind is StrategyKind.MULTICAST_ALL:
            if interest.session_list is not None and parsed is not None:
                return multicast_choose(
                    fib_entry, in_face, session_list=interest.session_list, hash=parsed.hash, pins=self.pins
                )
            return multicast_choose(fib_entry, in_face)

        if choice.kind is StrategyKind.SESSION_PIN and parsed is not None:
            if interest.session_list is not None:
                return multicast_choose(
                    fib_entry, in_face, session_list=interest.session_list, hash=parsed.hash, pins=self.pins
                )
            return [session_pin(self.pins, parsed.hash, parsed.session, fib_entry, in_face)]

        if choice.kind is StrategyKind.HOP_LIMIT and interest.hop_limit is not None:
            return [hop_limit_choose(interest.hop_limit, fib_entry, choice.threshold, in_face)]

        if choice.kind is StrategyKind.PROBABILISTIC and parsed is not None and parsed.probability is not None:
            return [probabilistic_choose(parsed.probability, fib_entry, self.rng, in_face)]

        return [best_route(fib_entry, in_face)]
