from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class PathLabelTable:
    """Labels discovered by one client, in response arrival order.

    A label lists the nodes after the client, ending at the server.
    """

    labels: dict[str, tuple[str, ...]] = field(default_factory=dict)
    _next_index: int = 0

    def __len__(self) -> int:
        return len(self.labels)

    def add(self, record: Sequence[str]) -> Optional[str]:
        path = tuple(record)
        if not path:
            return None
        if path in self.labels.values():
            return None
        label_id = f"L{self._next_index}"
        self._next_index += 1
        self.labels[label_id] = path
        return label_id

    def servers(self) -> list[str]:
        servers: list[str] = []
        for path in self.labels.values():
            if path[-1] not in servers:
                servers.append(path[-1])
        return servers

    def exclude_server(self, server_id: str) -> int:
        doomed = [label_id for label_id, path in self.labels.items() if path[-1] == server_id]
        for label_id in doomed:
            del self.labels[label_id]
        if doomed:
            logger.info("Dropped %d label(s) toward %s", len(doomed), server_id)
        return len(doomed)

    def label_for_session(self, session: int) -> Optional[tuple[str, ...]]:
        if not self.labels:
            return None
        ordered = list(self.labels.values())
        return ordered[session % len(ordered)]
