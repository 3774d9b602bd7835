from __future__ import annotations

from ..core.errors import EmptyBuffer
from ..core.packets import AggregatePayload, Data, signing_bytes
from ..core.security import KeyTable
from .pit import PitEntry


def aggregate_responses(entry: PitEntry, now: int, *, node_id: str, keys: KeyTable) -> Data:
    """One Data carrying every buffered response in arrival order.

    Buffered aggregates are flattened so the payload always lists the
    original signed server responses.
    """
    if not entry.agg_buffer:
        raise EmptyBuffer(f"no responses buffered for {entry.name} at t={now} us")

    responses: list[Data] = []
    for data in entry.agg_buffer:
        responses.extend(data.inner_responses())

    payload = AggregatePayload(
        responses=tuple(responses),
        partial=entry.received_responses < entry.expected_responses,
    )
    return Data(
        name=entry.name,
        freshness_period=0,
        payload=payload,
        signature=keys.sign(signing_bytes(entry.name, 0, payload), node_id),
        producer_id=node_id,
    )
