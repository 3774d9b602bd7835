from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..core.names import Name

US_PER_S = 1_000_000


class RateDecision(str, enum.Enum):
    ALLOW = "allow"
    DENY = "deny"


@dataclass
class _Bucket:
    tokens: Fraction
    updated_at: int


class PrefixRateLimiter:
    """Token bucket over simulated microseconds for one name prefix.

    The bucket starts full and refills continuously at ``rate_per_s`` up to
    ``burst`` tokens. Names outside the prefix are never throttled.
    """

    def __init__(self, *, prefix: Name, rate_per_s: int, burst: int) -> None:
        if rate_per_s <= 0 or burst < 1:
            raise ValueError("rate limiter needs rate_per_s > 0 and burst >= 1")
        self.prefix = prefix
        self._rate = Fraction(rate_per_s, US_PER_S)
        self._capacity = Fraction(burst)
        self._bucket: Optional[_Bucket] = None

    def check(self, name: Name, now: int) -> RateDecision:
        if not self.prefix.is_prefix_of(name):
            return RateDecision.ALLOW

        bucket = self._bucket
        if bucket is None:
            bucket = _Bucket(tokens=self._capacity, updated_at=now)
            self._bucket = bucket

        elapsed = max(0, now - bucket.updated_at)
        bucket.updated_at = now
        bucket.tokens = min(self._capacity, bucket.tokens + elapsed * self._rate)

        if bucket.tokens >= 1:
            bucket.tokens -= 1
            return RateDecision.ALLOW
        return RateDecision.DENY
