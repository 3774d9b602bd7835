from __future__ import annotations

from typing import Any, List

from fastapi import APIRouter

from .errors import map_domain_error
from ..core.errors import UnknownScenario
from ..harness.loader import builtin_names, load_scenario
from ..schemas import ScenarioSummary

router = APIRouter()


@router.get("", response_model=List[ScenarioSummary])
def get_scenarios():
    summaries = []
    for name in builtin_names():
        config = load_scenario(name)
        summaries.append(ScenarioSummary(
            name=config.name,
            description=config.description,
            nodes=len(config.nodes),
            links=len(config.links),
        ))
    return summaries


@router.get("/{name}")
def get_scenario(name: str) -> dict[str, Any]:
    if name not in builtin_names():
        raise map_domain_error(UnknownScenario(f"unknown scenario {name!r}"))
    return load_scenario(name).model_dump(mode="json")
