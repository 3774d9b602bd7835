from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from ..endpoints.client import ClientRunReport
from ..endpoints.selection import discard_reason
from ..schemas import METRICS_COLUMNS, MetricsRecord


def run_id(seed: int, client_id: str, run_index: int) -> str:
    return f"s{seed}-{client_id}-r{run_index}"


def report_rows(report: ClientRunReport, *, seed: int, pit_mode: str, strategy: str) -> list[MetricsRecord]:
    """One row per received sample, one per rejected request, one combined row."""
    rid = run_id(seed, report.client_id, report.run_index)
    common = {"run_id": rid, "client": report.client_id, "pit_mode": pit_mode, "strategy": strategy}
    rows: list[MetricsRecord] = []

    for observation in report.observations:
        sample = observation.sample
        reason = discard_reason(report.discarded, sample)
        rows.append(MetricsRecord(
            session=sample.session,
            sample=sample.sample_index,
            server_reached=sample.server_id,
            rtt=sample.delay,
            est_offset=sample.offset,
            true_offset=observation.true_offset,
            abs_error=abs(sample.offset - observation.true_offset),
            discarded_reason=reason.value if reason is not None else "",
            **common,
        ))

    for rejection in report.rejections:
        rows.append(MetricsRecord(
            session=rejection.session,
            sample=rejection.sample,
            server_reached=rejection.server_id,
            discarded_reason=rejection.reason.value,
            **common,
        ))

    if report.result is not None:
        est = report.result.combined_offset
        rows.append(MetricsRecord(
            server_reached=";".join(sorted(report.result.surviving_servers)),
            est_offset=est,
            true_offset=report.true_offset,
            abs_error=abs(est - report.true_offset) if report.true_offset is not None else None,
            **common,
        ))
    else:
        rows.append(MetricsRecord(
            true_offset=report.true_offset,
            discarded_reason="NoUsableSamples",
            **common,
        ))
    return rows


def write_csv(records: Iterable[MetricsRecord], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for record in records:
            writer.writerow(record.csv_row())
    return path


def write_jsonl(records: Iterable[MetricsRecord], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record.model_dump(), sort_keys=True, separators=(",", ":")))
            handle.write("\n")
    return path


def write_metrics(records: Sequence[MetricsRecord], path: Path, fmt: str = "csv") -> Path:
    if fmt == "csv":
        return write_csv(records, path)
    if fmt == "jsonl":
        return write_jsonl(records, path)
    raise ValueError(f"unknown metrics format {fmt!r}")
