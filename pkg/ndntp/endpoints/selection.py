from __future__ import annotations

import enum
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..core.errors import NoUsableSamples
from ..core.security import KeyTable, VerifyResult
from ..core.timing import Sample


class DiscardReason(str, enum.Enum):
    RTT_THRESHOLD = "RttThreshold"
    SIGNATURE_FAIL = "SignatureFail"
    OFFSET_OUTLIER = "OffsetOutlier"
    NEGATIVE_DELAY = "NegativeDelay"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class Discard:
    server_id: str
    reason: DiscardReason
    session: Optional[int] = None
    sample_index: Optional[int] = None


@dataclass(frozen=True)
class SelectionParams:
    rtt_threshold: int
    cluster_tolerance: int


@dataclass
class SyncResult:
    combined_offset: int
    surviving_servers: list[str]
    discarded: list[Discard] = field(default_factory=list)
    per_server_best: list[Sample] = field(default_factory=list)

    def reason_for(self, sample: Sample) -> Optional[DiscardReason]:
        return discard_reason(self.discarded, sample)


def discard_reason(discarded: Iterable[Discard], sample: Sample) -> Optional[DiscardReason]:
    for discard in discarded:
        if discard.server_id != sample.server_id:
            continue
        if discard.session is None or (
                discard.session == sample.session and discard.sample_index == sample.sample_index
        ):
            return discard.reason
    return None


def _signature_ok(sample: Sample, keys: KeyTable, anchors: Iterable[str]) -> bool:
    for packet in (sample.data, sample.envelope):
        if packet is None:
            continue
        if keys.verify(packet.signature, packet.signed_bytes(), anchors) is not VerifyResult.OK:
            return False
    return True


def _sample_order(sample: Sample) -> tuple[int, int, int, int]:
    return sample.delay, sample.t1_send, sample.sample_index, sample.session


def _discard_sample(sample: Sample, reason: DiscardReason) -> Discard:
    return Discard(sample.server_id, reason, sample.session, sample.sample_index)


def select_and_combine(
        samples: Sequence[Sample],
        params: SelectionParams,
        *,
        keys: Optional[KeyTable] = None,
        trust_anchors: Iterable[str] = (),
) -> SyncResult:
    """Filter samples and combine the survivors into one offset.

    Signature check, RTT threshold, minimum delay per server, outlier removal
    around the lower median of the per-server best offsets, then the lower
    median of what is left. Raises NoUsableSamples when nothing survives.
    """
    if not samples:
        raise NoUsableSamples("no samples to combine")

    anchors = set(trust_anchors)
    discarded: list[Discard] = []
    usable: list[Sample] = []
    for sample in samples:
        if keys is not None and not _signature_ok(sample, keys, anchors):
            discarded.append(_discard_sample(sample, DiscardReason.SIGNATURE_FAIL))
        elif sample.delay > params.rtt_threshold:
            discarded.append(_discard_sample(sample, DiscardReason.RTT_THRESHOLD))
        else:
            usable.append(sample)

    best: dict[str, Sample] = {}
    for sample in usable:
        current = best.get(sample.server_id)
        if current is None or _sample_order(sample) < _sample_order(current):
            best[sample.server_id] = sample
    if not best:
        raise NoUsableSamples(f"all {len(samples)} samples were discarded", discarded)

    ordered = [best[server_id] for server_id in sorted(best)]
    median = statistics.median_low(sample.offset for sample in ordered)

    survivors: list[Sample] = []
    for sample in ordered:
        if abs(sample.offset - median) > params.cluster_tolerance:
            discarded.append(Discard(sample.server_id, DiscardReason.OFFSET_OUTLIER))
        else:
            survivors.append(sample)

    return SyncResult(
        combined_offset=statistics.median_low(sample.offset for sample in survivors),
        surviving_servers=[sample.server_id for sample in survivors],
        discarded=discarded,
        per_server_best=survivors,
    )
