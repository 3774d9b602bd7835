from __future__ import annotations

from fastapi import HTTPException
from sqlalchemy.exc import IntegrityError

from ..core.errors import NdntpError, ScenarioParseError, ScenarioValidationError, UnknownScenario


def map_integrity_error(exc: IntegrityError, default_message: str = "Database integrity error") -> HTTPException:
    """
    Map store integrity violations to API-friendly status codes.
    """
    orig = getattr(exc, "orig", None)
    detail = str(orig or exc).lower()

    if "unique constraint" in detail or "duplicate key" in detail:
        return HTTPException(status_code=409, detail="This run is already stored")

    if "foreign key" in detail or "not null constraint" in detail or "not-null constraint" in detail:
        return HTTPException(status_code=422, detail="The data violates a store constraint")

    return HTTPException(status_code=409, detail=default_message)


def map_domain_error(exc: NdntpError) -> HTTPException:
    if isinstance(exc, UnknownScenario):
        return HTTPException(status_code=404, detail=str(exc))
    if isinstance(exc, (ScenarioParseError, ScenarioValidationError)):
        return HTTPException(status_code=422, detail=str(exc))
    return HTTPException(status_code=500, detail=str(exc))
