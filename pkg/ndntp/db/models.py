import datetime
from typing import List, Optional

from sqlalchemy import Column, DateTime, Index, UniqueConstraint
from sqlmodel import Field, Relationship, SQLModel


class SimulationRun(SQLModel, table=True):
    """
    One executed scenario.

    Attributes:
        id (int): Unique identifier for the run.
        scenario (str): Scenario name.
        seed (int): Seed the run was executed with.
        pit_mode (str): PIT mode in effect.
        strategy (str): Strategy label of the run.
        created_at (datetime.datetime): When the run was stored.
        trail_hash (str): SHA-256 of the audit trail.
        summary_json (str): Run summary as a JSON document.
        rows (List[RunMetric]): Metrics rows of the run.
    """
    __tablename__ = "simulation_runs"
    __table_args__ = (
        UniqueConstraint("scenario", "seed", "pit_mode", "strategy", "trail_hash",
                         name="uq_run_scenario_seed_mode_strategy_trail"),
    )

    id: Optional[int] = Field(default=None, primary_key=True)
    scenario: str = Field(index=True)
    seed: int
    pit_mode: str
    strategy: str
    created_at: datetime.datetime = Field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc),
        sa_column=Column(DateTime(timezone=True)),
    )
    trail_hash: str
    summary_json: str
    rows: List["RunMetric"] = Relationship(back_populates="run")


class RunMetric(SQLModel, table=True):
    __tablename__ = "run_metrics"
    __table_args__ = (
        Index("ix_run_metrics_run_client", "simulation_run_id", "client"),
    )

    id: Optional[int] = Field(default=None, primary_key=True)
    simulation_run_id: int = Field(foreign_key="simulation_runs.id")
    position: int
    run_id: str
    client: str
    session: Optional[int] = None
    sample: Optional[int] = None
    server_reached: str = ""
    rtt: Optional[int] = None
    est_offset: Optional[int] = None
    true_offset: Optional[int] = None
    abs_error: Optional[int] = None
    discarded_reason: str = ""
    pit_mode: str
    strategy: str
    run: Optional[SimulationRun] = Relationship(back_populates="rows")
