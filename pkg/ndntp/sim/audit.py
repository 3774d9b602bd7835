from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError


class AuditRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    time: int
    node: str
    direction: Literal["in", "out", "drop"]
    kind: Literal["interest", "data"]
    name: str
    face: Optional[int] = None
    link: Optional[str] = None
    nonce: Optional[int] = None
    producer: Optional[str] = None
    servers: Optional[tuple[str, ...]] = None
    entry: Optional[int] = None
    source: Optional[str] = None
    reason: Optional[str] = None
    hop_limit: Optional[int] = None
    label: Optional[tuple[str, ...]] = None
    cache_age: Optional[int] = None
    freshness: Optional[int] = None
    must_be_fresh: Optional[bool] = None


@dataclass
class AuditTrail:
    """Every packet transfer and drop, in execution order."""

    records: list[AuditRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[AuditRecord]:
        return iter(self.records)

    def append(self, record: AuditRecord) -> None:
        self.records.append(record)

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps(record.model_dump(mode="json", exclude_none=True), sort_keys=True, separators=(",", ":")) + "\n"
            for record in self.records
        )

    def digest(self) -> str:
        return hashlib.sha256(self.to_jsonl().encode()).hexdigest()

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_jsonl(), encoding="utf-8")
        return path

    @classmethod
    def from_jsonl(cls, text: str) -> "AuditTrail":
        trail = cls()
        for line_number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                trail.append(AuditRecord.model_validate_json(line))
            except ValidationError as exc:
                raise ValueError(f"audit trail line {line_number} is not a valid record: {exc}") from exc
        return trail

    @classmethod
    def load(cls, path: Union[str, Path]) -> "AuditTrail":
        return cls.from_jsonl(Path(path).read_text(encoding="utf-8"))
