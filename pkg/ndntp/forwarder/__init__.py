from .content_store import ContentStore, ContentStoreEntry
from .fib import Fib, FibEntry, NextHop
from .pit import InRecord, OutRecord, Pit, PitEntry
from .rate_limit import PrefixRateLimiter, RateDecision

__all__ = [
    "ContentStore",
    "ContentStoreEntry",
    "Fib",
    "FibEntry",
    "InRecord",
    "NextHop",
    "OutRecord",
    "Pit",
    "PitEntry",
    "PrefixRateLimiter",
    "RateDecision",
]
