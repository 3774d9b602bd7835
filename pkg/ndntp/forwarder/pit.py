from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..core.names import Name
from ..core.packets import Data
from ..schemas import PitMode


@dataclass
class InRecord:
    face_id: int
    nonce: int
    arrival: int


@dataclass
class OutRecord:
    face_id: int
    sent: int


@dataclass
class PitEntry:
    entry_id: int
    name: Name
    mode: PitMode
    expiry: int
    in_records: list[InRecord] = field(default_factory=list)
    out_records: list[OutRecord] = field(default_factory=list)
    expected_responses: int = 0
    received_responses: int = 0
    agg_buffer: list[Data] = field(default_factory=list)
    agg_deadline: Optional[int] = None
    # Data emitted toward each downstream face while the entry lives.
    emitted: dict[int, int] = field(default_factory=dict)
    # Unlabeled, non-discovery NDNTP request; only these feed passive sync.
    plain_ndntp: bool = False

    def add_in_record(self, face_id: int, nonce: int, now: int) -> None:
        for record in self.in_records:
            if record.face_id == face_id:
                record.nonce = nonce
                record.arrival = now
                return
        self.in_records.append(InRecord(face_id=face_id, nonce=nonce, arrival=now))

    def downstream_faces(self) -> list[int]:
        faces: list[int] = []
        for record in self.in_records:
            if record.face_id not in faces:
                faces.append(record.face_id)
        return faces

    def add_out_record(self, face_id: int, now: int) -> None:
        self.out_records.append(OutRecord(face_id=face_id, sent=now))
        self.expected_responses = len(self.out_records)


class Pit:
    def __init__(self) -> None:
        self.entries: dict[Name, PitEntry] = {}
        self._tombstones: dict[Name, int] = {}
        self._next_id = 1

    def __len__(self) -> int:
        return len(self.entries)

    def find(self, name: Name, now: int) -> Optional[PitEntry]:
        entry = self.entries.get(name)
        if entry is not None and entry.expiry <= now:
            del self.entries[name]
            return None
        return entry

    def get_by_id(self, entry_id: int) -> Optional[PitEntry]:
        for entry in self.entries.values():
            if entry.entry_id == entry_id:
                return entry
        return None

    def insert(self, name: Name, mode: PitMode, now: int, lifetime: int) -> PitEntry:
        entry = PitEntry(entry_id=self._next_id, name=name, mode=mode, expiry=now + lifetime)
        self._next_id += 1
        self.entries[name] = entry
        self._tombstones.pop(name, None)
        return entry

    def remove(self, entry: PitEntry) -> None:
        if self.entries.get(entry.name) is entry:
            del self.entries[entry.name]

    def consume(self, entry: PitEntry) -> None:
        """Remove a satisfied entry; late Data for it is recognised until it would have expired."""
        self.remove(entry)
        self._tombstones[entry.name] = entry.expiry

    def was_consumed(self, name: Name, now: int) -> bool:
        expiry = self._tombstones.get(name)
        if expiry is None:
            return False
        if expiry <= now:
            del self._tombstones[name]
            return False
        return True
