from __future__ import annotations

from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException, Query
from sqlalchemy.exc import IntegrityError
from sqlmodel import Session

from .errors import map_domain_error, map_integrity_error
from ..core.errors import NdntpError, UnknownScenario
from ..db.models import SimulationRun
from ..db.session import get_session
from ..db.store import get_run, get_run_metrics, list_runs, run_summary, save_run
from ..harness.loader import builtin_names, load_scenario
from ..harness.runner import RunOverrides, run_scenario
from ..schemas import MetricsRecord, RunRead, RunRequest
from ..settings import settings

router = APIRouter()


def _to_read(run: SimulationRun) -> RunRead:
    return RunRead(
        id=run.id,
        scenario=run.scenario,
        seed=run.seed,
        pit_mode=run.pit_mode,
        strategy=run.strategy,
        created_at=run.created_at,
        trail_hash=run.trail_hash,
        summary=run_summary(run),
    )


@router.get("", response_model=List[RunRead])
def get_runs(
        scenario: Optional[str] = Query(None, description="Only runs of this scenario"),
        limit: int = Query(50, ge=1, le=500),
        offset: int = Query(0, ge=0),
        session: Session = Depends(get_session),
):
    return [_to_read(run) for run in list_runs(session, scenario=scenario, limit=limit, offset=offset)]


@router.post("", response_model=RunRead, status_code=201)
def create_run(payload: RunRequest, session: Session = Depends(get_session)):
    try:
        if payload.scenario not in builtin_names():
            raise UnknownScenario(f"unknown scenario {payload.scenario!r}")
        config = load_scenario(payload.scenario)
        seed = payload.seed if payload.seed is not None else settings.SIM_SEED
        result = run_scenario(config, RunOverrides(seed=seed, pit_mode=payload.pit_mode, strategy=payload.strategy))
    except NdntpError as exc:
        raise map_domain_error(exc)

    try:
        run = save_run(session, result)
    except IntegrityError as exc:
        session.rollback()
        raise map_integrity_error(exc)
    return _to_read(run)


@router.get("/{run_id}", response_model=RunRead)
def get_run_by_id(run_id: int, session: Session = Depends(get_session)):
    run = get_run(session, run_id)
    if run is None:
        raise HTTPException(404, "Run not found")
    return _to_read(run)


@router.get("/{run_id}/metrics", response_model=List[MetricsRecord])
def get_metrics(run_id: int, session: Session = Depends(get_session)):
    if get_run(session, run_id) is None:
        raise HTTPException(404, "Run not found")
    return get_run_metrics(session, run_id)
