from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional

from ..core.names import Name
from ..core.packets import Data, Interest
from ..schemas import CachePolicy


@dataclass(frozen=True)
class ContentStoreEntry:
    data: Data
    cached_at: int
    # Effective freshness after the cache policy; the Data itself stays untouched.
    freshness_period: int

    def is_fresh(self, now: int) -> bool:
        return now - self.cached_at < self.freshness_period

    def age(self, now: int) -> int:
        return now - self.cached_at


class ContentStore:
    def __init__(
            self,
            capacity: int,
            policy: CachePolicy = CachePolicy.CACHE_ALL,
            max_freshness: Optional[int] = None,
    ) -> None:
        if capacity < 0:
            raise ValueError("content store capacity must be >= 0")
        if policy is CachePolicy.CLAMP_FRESHNESS and max_freshness is None:
            raise ValueError("clamp-freshness needs a maximum freshness")
        self.capacity = capacity
        self.policy = policy
        self.max_freshness = max_freshness
        self._entries: OrderedDict[Name, ContentStoreEntry] = OrderedDict()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: Name) -> bool:
        return name in self._entries

    def lookup(self, interest: Interest, now: int) -> Optional[ContentStoreEntry]:
        entry = self._entries.get(interest.name)
        if entry is None:
            return None
        if interest.must_be_fresh and not entry.is_fresh(now):
            return None
        return entry

    def insert(self, data: Data, now: int) -> bool:
        if self.capacity == 0:
            return False
        if self.policy is CachePolicy.NO_CACHE_NDNTP and data.name.is_ndntp:
            return False

        freshness = data.freshness_period
        if self.policy is CachePolicy.CLAMP_FRESHNESS:
            freshness = min(freshness, self.max_freshness)

        self._entries.pop(data.name, None)
        while len(self._entries) >= self.capacity:
            self._entries.popitem(last=False)
        self._entries[data.name] = ContentStoreEntry(data=data, cached_at=now, freshness_period=freshness)
        return True
