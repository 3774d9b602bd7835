from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from ..endpoints.client import ClientRunReport
from ..schemas import MetricsRecord, PitMode, ScenarioConfig, StrategyKind
from ..settings import settings
from ..sim.audit import AuditTrail
from ..utils import error_stats, mean_std
from .metrics import report_rows, run_id
from .network import Network
from .topology import hop_distances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunOverrides:
    seed: Optional[int] = None
    pit_mode: Optional[PitMode] = None
    strategy: Optional[StrategyKind] = None


@dataclass
class RunResult:
    scenario: str
    seed: int
    pit_mode: str
    strategy: str
    metrics: list[MetricsRecord]
    summary: dict[str, Any]
    trail: AuditTrail
    reports: list[ClientRunReport] = field(default_factory=list)

    @property
    def trail_hash(self) -> str:
        return self.summary["trail_hash"]

    def responses(self, client_id: str) -> int:
        return self.summary["clients"].get(client_id, {}).get("responses", 0)


def apply_overrides(config: ScenarioConfig, overrides: RunOverrides) -> ScenarioConfig:
    document = config.model_dump(mode="json")
    if overrides.seed is not None:
        document["seed"] = overrides.seed
    if overrides.pit_mode is not None:
        document["pit_mode"] = overrides.pit_mode.value
        for node in document["nodes"]:
            if node.get("forwarder"):
                node["forwarder"]["pit_mode"] = None
    if overrides.strategy is not None:
        if document["strategies"]:
            for assignment in document["strategies"]:
                assignment["kind"] = overrides.strategy.value
        else:
            document["strategies"] = [{"node": "*", "kind": overrides.strategy.value}]
    return ScenarioConfig.model_validate(document)


def strategy_label(config: ScenarioConfig) -> str:
    kinds = sorted({assignment.kind.value for assignment in config.strategies})
    return "+".join(kinds) if kinds else StrategyKind.BEST_ROUTE.value


def _zone_stats(config: ScenarioConfig, reports: Sequence[ClientRunReport]) -> list[dict]:
    zones = []
    distances: dict[str, dict[str, int]] = {}
    for report in reports:
        if report.client_id not in distances:
            distances[report.client_id] = hop_distances(config, report.client_id)
        servers = sorted({observation.sample.server_id for observation in report.observations})
        hops = [distances[report.client_id][server] for server in servers if server in distances[report.client_id]]
        mean, std = mean_std(hops)
        zones.append({
            "run_id": run_id(config.seed, report.client_id, report.run_index),
            "servers": servers,
            "hop_mean": mean,
            "hop_std": std,
        })
    return zones


def _client_stats(reports: Sequence[ClientRunReport]) -> dict[str, dict]:
    grouped: dict[str, list[ClientRunReport]] = defaultdict(list)
    for report in reports:
        grouped[report.client_id].append(report)
    clients = {}
    for client_id in sorted(grouped):
        runs = grouped[client_id]
        errors = [
            report.result.combined_offset - report.true_offset
            for report in runs
            if report.result is not None and report.true_offset is not None
        ]
        clients[client_id] = {
            "runs": len(runs),
            "responses": sum(report.responses for report in runs),
            "failures": sum(1 for report in runs if report.result is None),
            **error_stats(errors),
        }
    return clients


def summarize(network: Network, reports: Sequence[ClientRunReport], executed: int, duration: int) -> dict[str, Any]:
    stats = [node.forwarder.stats for node in network.forwarders.values()]
    ages = [s.max_cache_hit_age for s in stats if s.max_cache_hit_age is not None]
    drops = Counter(record.reason for record in network.trail if record.direction == "drop")
    return {
        "trail_hash": network.trail.digest(),
        "events": executed,
        "records": len(network.trail),
        "flow_balance_violations": sum(s.flow_balance_violations for s in stats),
        "cache_hits": sum(s.cache_hits for s in stats),
        "pit_aggregations": sum(s.pit_aggregations for s in stats),
        "max_cache_hit_age": max(ages) if ages else None,
        "responder_answers": sum(s.responder_answers for s in stats),
        "passive_syncs": sum(s.passive_syncs for s in stats),
        "aggregates_emitted": sum(s.aggregates_emitted for s in stats),
        "drops": dict(sorted(drops.items())),
        "clients": _client_stats(reports),
        "zones": _zone_stats(network.config, reports),
        "server_errors": {
            node_id: host.server.serving_error(duration)
            for node_id, host in sorted(network.hosts.items())
            if host.server is not None
        },
        "forwarder_errors": {
            node_id: node.forwarder.clock_error(duration)
            for node_id, node in sorted(network.forwarders.items())
        },
    }


def run_scenario(config: ScenarioConfig, overrides: RunOverrides = RunOverrides()) -> RunResult:
    config = apply_overrides(config, overrides)
    pit_mode = config.pit_mode.value
    strategy = overrides.strategy.value if overrides.strategy is not None else strategy_label(config)
    logger.info("Running scenario %s (seed=%d, pit_mode=%s, strategy=%s)", config.name, config.seed, pit_mode, strategy)

    reports: list[ClientRunReport] = []
    network = Network(config, seed=config.seed, on_report=reports.append)
    executed = network.run(config.duration_us)

    reports.sort(key=lambda report: (report.client_id, report.run_index))
    metrics: list[MetricsRecord] = []
    for report in reports:
        metrics.extend(report_rows(report, seed=config.seed, pit_mode=pit_mode, strategy=strategy))

    summary = summarize(network, reports, executed, config.duration_us)
    logger.info("Scenario %s finished: %d events, trail %s", config.name, executed, summary["trail_hash"])
    return RunResult(
        scenario=config.name,
        seed=config.seed,
        pit_mode=pit_mode,
        strategy=strategy,
        metrics=metrics,
        summary=summary,
        trail=network.trail,
        reports=reports,
    )


def _run_seed(job: tuple[ScenarioConfig, RunOverrides]) -> RunResult:
    config, overrides = job
    return run_scenario(config, overrides)


def sweep(
        config: ScenarioConfig,
        seeds: Sequence[int],
        overrides: RunOverrides = RunOverrides(),
        *,
        workers: Optional[int] = None,
) -> list[RunResult]:
    """Run one scenario per seed; results come back in seed order."""
    ordered = sorted(seeds)
    jobs = [
        (config, RunOverrides(seed=seed, pit_mode=overrides.pit_mode, strategy=overrides.strategy))
        for seed in ordered
    ]
    workers = workers or settings.SWEEP_WORKERS
    if workers <= 1 or len(jobs) <= 1:
        return [_run_seed(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_run_seed, jobs))
