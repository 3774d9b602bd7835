from __future__ import annotations

from typing import Callable, Protocol

import numpy as np

from ..core.packets import Interest
from ..core.security import KeyTable


class AppContext(Protocol):
    """What a host offers the application running on it."""

    node_id: str
    keys: KeyTable

    def now(self) -> int: ...

    def send_interest(self, interest: Interest) -> None: ...

    def call_at(self, fire_at: int, callback: Callable[[], None]) -> None: ...

    def rng(self, purpose: str) -> np.random.Generator: ...
