from __future__ import annotations

import json
import logging
from typing import Optional

from sqlmodel import Session, select

from ..harness.runner import RunResult
from ..schemas import MetricsRecord
from .models import RunMetric, SimulationRun

logger = logging.getLogger(__name__)


def save_run(session: Session, result: RunResult) -> SimulationRun:
    """Store a run and all its metrics rows; raises IntegrityError on a duplicate."""
    run = SimulationRun(
        scenario=result.scenario,
        seed=result.seed,
        pit_mode=result.pit_mode,
        strategy=result.strategy,
        trail_hash=result.trail_hash,
        summary_json=json.dumps(result.summary, sort_keys=True),
    )
    session.add(run)
    session.flush()

    for position, record in enumerate(result.metrics):
        session.add(RunMetric(simulation_run_id=run.id, position=position, **record.model_dump()))
    session.commit()
    session.refresh(run)
    logger.info("Stored run %d (%s, seed %d, %d rows)", run.id, run.scenario, run.seed, len(result.metrics))
    return run


def list_runs(session: Session, scenario: Optional[str] = None, limit: int = 50, offset: int = 0) -> list[SimulationRun]:
    stmt = select(SimulationRun)
    if scenario:
        stmt = stmt.where(SimulationRun.scenario == scenario)
    stmt = stmt.order_by(SimulationRun.id.desc()).offset(offset).limit(limit)
    return list(session.exec(stmt).all())


def get_run(session: Session, run_id: int) -> Optional[SimulationRun]:
    return session.get(SimulationRun, run_id)


def get_run_metrics(session: Session, run_id: int) -> list[MetricsRecord]:
    rows = session.exec(
        select(RunMetric)
        .where(RunMetric.simulation_run_id == run_id)
        .order_by(RunMetric.position)
    ).all()
    return [MetricsRecord.model_validate(row) for row in rows]


def run_summary(run: SimulationRun) -> dict:
    return json.loads(run.summary_json)
