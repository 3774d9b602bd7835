from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NegativeDelay
from .packets import Data, NdntpPayload

PPM = 1_000_000


@dataclass(frozen=True)
class ClockModel:
    offset: int = 0
    drift_ppm: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if abs(Fraction(self.drift_ppm)) >= PPM:
            raise ValueError("drift must stay below 10^6 ppm to keep the clock monotone")

    def local_time(self, sim_now: int) -> int:
        return sim_now + self.offset + math.floor(Fraction(self.drift_ppm) * sim_now / PPM)


def _halve_toward_zero(value: int) -> int:
    return value // 2 if value >= 0 else -((-value) // 2)


def ntp_offset_delay(t1: int, t2: int, t3: int, t4: int) -> tuple[int, int]:
    """Four-timestamp offset and round-trip delay, in integer microseconds.

    offset = ((t2 - t1) + (t3 - t4)) / 2 rounded toward zero,
    delay = (t4 - t1) - (t3 - t2). A negative delay raises NegativeDelay.
    """
    offset = _halve_toward_zero((t2 - t1) + (t3 - t4))
    delay = (t4 - t1) - (t3 - t2)
    if delay < 0:
        raise NegativeDelay(offset, delay)
    return offset, delay


@dataclass(frozen=True)
class Sample:
    t1_send: int
    t4_recv: int
    payload: NdntpPayload
    offset: int
    delay: int
    server_id: str
    session: int
    sample_index: int
    # The signed response carrying the payload, and the aggregate it arrived in.
    data: Optional[Data] = None
    envelope: Optional[Data] = None

    @classmethod
    def from_exchange(
            cls,
            *,
            t1_send: int,
            t4_recv: int,
            payload: NdntpPayload,
            session: int,
            sample_index: int,
            data: Optional[Data] = None,
            envelope: Optional[Data] = None,
    ) -> "Sample":
        offset, delay = ntp_offset_delay(t1_send, payload.t2_receive, payload.t3_transmit, t4_recv)
        return cls(
            t1_send=t1_send,
            t4_recv=t4_recv,
            payload=payload,
            offset=offset,
            delay=delay,
            server_id=payload.server_id,
            session=session,
            sample_index=sample_index,
            data=data,
            envelope=envelope,
        )
