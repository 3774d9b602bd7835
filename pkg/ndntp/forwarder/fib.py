from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..core.names import Name


@dataclass(frozen=True)
class NextHop:
    face_id: int
    cost: int


@dataclass(frozen=True)
class FibEntry:
    prefix: Name
    nexthops: tuple[NextHop, ...]

    def __post_init__(self) -> None:
        if not self.nexthops:
            raise ValueError(f"FIB entry {self.prefix} has no nexthops")
        faces = [hop.face_id for hop in self.nexthops]
        if len(set(faces)) != len(faces):
            raise ValueError(f"FIB entry {self.prefix} repeats a face")
        if any(hop.cost < 0 for hop in self.nexthops):
            raise ValueError(f"FIB entry {self.prefix} has a negative cost")
        object.__setattr__(self, "nexthops", tuple(sorted(self.nexthops, key=lambda hop: hop.face_id)))

    def eligible(self, in_face: Optional[int]) -> list[NextHop]:
        """Nexthops other than the incoming face, sorted by face id."""
        return [hop for hop in self.nexthops if hop.face_id != in_face]

    def cost_of(self, face_id: int) -> Optional[int]:
        for hop in self.nexthops:
            if hop.face_id == face_id:
                return hop.cost
        return None

    def without_face(self, face_id: int) -> Optional["FibEntry"]:
        remaining = tuple(hop for hop in self.nexthops if hop.face_id != face_id)
        if not remaining:
            return None
        return dataclasses.replace(self, nexthops=remaining)


@dataclass
class Fib:
    entries: dict[Name, FibEntry] = field(default_factory=dict)

    def __iter__(self) -> Iterator[FibEntry]:
        return iter(self.entries[prefix] for prefix in sorted(self.entries, key=lambda name: name.components))

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, entry: FibEntry) -> None:
        self.entries[entry.prefix] = entry

    def get(self, prefix: Name) -> Optional[FibEntry]:
        return self.entries.get(prefix)

    def remove_nexthop(self, prefix: Name, face_id: int) -> None:
        entry = self.entries.get(prefix)
        if entry is None:
            return
        updated = entry.without_face(face_id)
        if updated is None:
            del self.entries[prefix]
        else:
            self.entries[prefix] = updated

    def lookup(self, name: Name) -> Optional[FibEntry]:
        """Longest-prefix match."""
        for length in range(len(name), -1, -1):
            entry = self.entries.get(name.prefix(length))
            if entry is not None:
                return entry
        return None
