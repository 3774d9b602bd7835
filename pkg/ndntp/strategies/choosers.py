"""Next-hop decision functions.

Every chooser receives the FIB entry and the incoming face, never returns
the incoming face, and raises ``NoRoute`` when nothing else is eligible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from ..core.errors import BrokenLabel, NoRoute
from ..core.hashing import h64, session_key
from ..forwarder.fib import FibEntry, NextHop


def _eligible(fib_entry: FibEntry, in_face: Optional[int]) -> list[NextHop]:
    eligible = fib_entry.eligible(in_face)
    if not eligible:
        raise NoRoute(f"no eligible nexthop for {fib_entry.prefix} besides face {in_face}")
    return eligible


def _lowest(eligible: Sequence[NextHop]) -> int:
    return min(eligible, key=lambda hop: (hop.cost, hop.face_id)).face_id


def _highest(eligible: Sequence[NextHop]) -> int:
    return min(eligible, key=lambda hop: (-hop.cost, hop.face_id)).face_id


def best_route(fib_entry: FibEntry, in_face: Optional[int]) -> int:
    return _lowest(_eligible(fib_entry, in_face))


@dataclass
class SessionPinState:
    pins: dict[tuple[bytes, int], int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pins)


def session_pin(
        state: SessionPinState,
        hash: bytes,
        session: int,
        fib_entry: FibEntry,
        in_face: Optional[int],
) -> int:
    eligible = _eligible(fib_entry, in_face)
    faces = [hop.face_id for hop in eligible]
    key = (bytes(hash), session)

    pinned = state.pins.get(key)
    if pinned is not None and pinned in faces:
        return pinned

    face = faces[h64(session_key(hash, session)) % len(faces)]
    state.pins[key] = face
    return face


def hop_limit_choose(hop_limit: int, fib_entry: FibEntry, threshold: int, in_face: Optional[int]) -> int:
    """``hop_limit`` is the value left after this node's decrement."""
    eligible = _eligible(fib_entry, in_face)
    if hop_limit > threshold:
        return _highest(eligible)
    return _lowest(eligible)


def probabilistic_choose(
        probability: float,
        fib_entry: FibEntry,
        rng: np.random.Generator,
        in_face: Optional[int],
) -> int:
    eligible = _eligible(fib_entry, in_face)
    if rng.random() < probability:
        return _lowest(eligible)
    return _highest(eligible)


def multicast_choose(
        fib_entry: FibEntry,
        in_face: Optional[int],
        *,
        session_list: Optional[Sequence[int]] = None,
        hash: Optional[bytes] = None,
        pins: Optional[SessionPinState] = None,
) -> list[int]:
    eligible = _eligible(fib_entry, in_face)
    if session_list is None:
        return [hop.face_id for hop in eligible]

    if hash is None:
        raise ValueError("a session list needs the name hash to pin sessions")
    state = pins if pins is not None else SessionPinState()
    faces = {session_pin(state, hash, session, fib_entry, in_face) for session in session_list}
    return sorted(faces)


def path_label_forward(
        node_id: str,
        label: Sequence[str],
        neighbors: Mapping[str, int],
        in_face: Optional[int],
) -> int:
    """Face toward the node that follows ``node_id`` in the label.

    A node that is not on the label (the client host) sends toward the
    label's first node.
    """
    if node_id in label:
        index = list(label).index(node_id)
        if index + 1 >= len(label):
            raise BrokenLabel(f"label {list(label)} ends at {node_id}")
        successor = label[index + 1]
    else:
        successor = label[0]

    face = neighbors.get(successor)
    if face is None:
        raise BrokenLabel(f"{successor} is not adjacent to {node_id}")
    if face == in_face:
        raise BrokenLabel(f"label {list(label)} sends the Interest back out face {in_face}")
    return face
