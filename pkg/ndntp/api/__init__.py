from fastapi import APIRouter

from .runs import router as runs_router
from .scenarios import router as scenarios_router

router = APIRouter()
router.include_router(scenarios_router, prefix="/scenarios", tags=["scenarios"])
router.include_router(runs_router, prefix="/runs", tags=["runs"])
