from __future__ import annotations

from contextlib import asynccontextmanager
import logging

from fastapi import FastAPI

from .api import router as api_router
from .db.session import init_db
from .harness.loader import builtin_names

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    init_db()
    logger.info("Results API ready with %d built-in scenarios", len(builtin_names()))
    yield


app = FastAPI(lifespan=lifespan, title="NDNTP Simulation API", version="0.1.0")

app.include_router(api_router, prefix="/api")


@app.get("/")
async def root():
    return {
        "name": "NDNTP Simulation API",
        "health": "/healthz",
        "docs": "/docs",
    }


@app.get("/healthz")
async def healthz():
    return {"status": "ok"}
