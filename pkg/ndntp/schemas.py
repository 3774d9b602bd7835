from __future__ import annotations

import enum
from datetime import datetime
from fractions import Fraction
from typing import Annotated, Any, List, Literal, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_validator, model_validator

from .consts import (
    DEFAULT_AGG_TIMEOUT_US,
    DEFAULT_CLUSTER_TOLERANCE_US,
    DEFAULT_CS_CAPACITY,
    DEFAULT_DEAD_NONCE_TTL_US,
    DEFAULT_DURATION_US,
    DEFAULT_PIT_LIFETIME_US,
    DEFAULT_RTT_THRESHOLD_US,
    DEFAULT_RUN_PERIOD_US,
    DEFAULT_SAMPLES_PER_SERVER,
    DEFAULT_SEED,
    DEFAULT_SERVERS_PER_RUN,
    MAX_HOP_LIMIT,
    NDNTP_PREFIX,
)
from .core.names import Name, stratum_prefix
from .core.timing import ClockModel


class PitMode(str, enum.Enum):
    STANDARD = "standard"
    AGGREGATE = "aggregate"
    MULTI_RESPONSE = "multi-response"


class CachePolicy(str, enum.Enum):
    CACHE_ALL = "cache-all"
    NO_CACHE_NDNTP = "no-cache-ndntp"
    CLAMP_FRESHNESS = "clamp-freshness"


class StrategyKind(str, enum.Enum):
    BEST_ROUTE = "best-route"
    SESSION_PIN = "session-pin"
    HOP_LIMIT = "hop-limit"
    PROBABILISTIC = "probabilistic"
    MULTICAST_ALL = "multicast-all"
    PATH_LABEL = "path-label"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _check_prefix(value: str) -> str:
    if not value.startswith("/"):
        raise ValueError(f"prefix {value!r} must start with '/'")
    return Name.from_uri(value).uri


PrefixStr = Annotated[str, AfterValidator(_check_prefix)]


# ---- Nodes ----
class ClockSpec(_Strict):
    offset_us: int = 0
    drift_ppm: Union[int, float, str] = 0

    @field_validator("drift_ppm")
    @classmethod
    def _drift_is_rational(cls, value: Union[int, float, str]) -> Union[int, float, str]:
        try:
            drift = Fraction(str(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"drift_ppm {value!r} is not a number") from exc
        if abs(drift) >= 1_000_000:
            raise ValueError("drift_ppm must be below 10^6 in magnitude")
        return value

    def to_model(self) -> ClockModel:
        return ClockModel(offset=self.offset_us, drift_ppm=Fraction(str(self.drift_ppm)))


class RateLimitSpec(_Strict):
    prefix: PrefixStr = NDNTP_PREFIX
    rate_per_s: int = Field(gt=0)
    burst: int = Field(ge=1)


class ResponderSpec(_Strict):
    max_age_us: int = Field(gt=0)


class ForwarderConfig(_Strict):
    pit_mode: Optional[PitMode] = None
    cs_capacity: int = Field(default=DEFAULT_CS_CAPACITY, ge=0)
    cs_policy: CachePolicy = CachePolicy.CACHE_ALL
    cs_max_freshness_us: Optional[int] = Field(default=None, ge=0)
    responder: Optional[ResponderSpec] = None
    passive_sync: bool = False
    rate_limit: Optional[RateLimitSpec] = None
    dead_nonce_ttl_us: int = Field(default=DEFAULT_DEAD_NONCE_TTL_US, gt=0)
    agg_timeout_us: int = Field(default=DEFAULT_AGG_TIMEOUT_US, gt=0)

    @model_validator(mode="after")
    def _clamp_needs_bound(self) -> "ForwarderConfig":
        if self.cs_policy is CachePolicy.CLAMP_FRESHNESS and self.cs_max_freshness_us is None:
            raise ValueError("cs_policy clamp-freshness requires cs_max_freshness_us")
        return self


class StrategyDecorations(_Strict):
    probability: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    hop_limit: Optional[int] = Field(default=None, ge=0, le=MAX_HOP_LIMIT)


class ClientConfig(_Strict):
    servers_per_run: int = Field(default=DEFAULT_SERVERS_PER_RUN, ge=1)
    samples_per_server: int = Field(default=DEFAULT_SAMPLES_PER_SERVER, ge=1)
    rtt_threshold_us: int = Field(default=DEFAULT_RTT_THRESHOLD_US, ge=0)
    cluster_tolerance_us: int = Field(default=DEFAULT_CLUSTER_TOLERANCE_US, ge=0)
    strategy_decorations: Optional[StrategyDecorations] = None
    use_random_hash: bool = True
    must_be_fresh: bool = True
    inter_sample_gap_us: int = Field(default=10_000, ge=0)
    lifetime_us: int = Field(default=DEFAULT_PIT_LIFETIME_US, gt=0)
    start_at_us: int = Field(default=0, ge=0)
    runs: int = Field(default=1, ge=1)
    run_period_us: int = Field(default=DEFAULT_RUN_PERIOD_US, gt=0)
    multicast_sessions: bool = False
    discover_labels: bool = False
    discovery_wait_us: int = Field(default=500_000, gt=0)
    target_stratum: Optional[int] = Field(default=None, ge=1)

    @property
    def target_prefix(self) -> Name:
        if self.target_stratum is None:
            return Name.from_uri(NDNTP_PREFIX)
        return stratum_prefix(self.target_stratum)


class Misbehavior(_Strict):
    kind: Literal["large-freshness", "fixed-offset-lie"]
    value_us: int


class StratumSyncConfig(_Strict):
    start_at_us: int = Field(default=0, ge=0)
    client: ClientConfig = Field(default_factory=ClientConfig)


class ServerConfig(_Strict):
    stratum: int = Field(default=1, ge=1)
    announced_prefixes: List[str] = Field(default_factory=list)
    processing_delay_us: int = Field(default=0, ge=0)
    freshness_period_us: int = Field(default=0, ge=0)
    misbehavior: Optional[Misbehavior] = None
    stratum_sync: Optional[StratumSyncConfig] = None

    @field_validator("announced_prefixes")
    @classmethod
    def _prefixes_under_ndntp(cls, value: List[str]) -> List[str]:
        root = Name.from_uri(NDNTP_PREFIX)
        checked = []
        for prefix in value:
            prefix = _check_prefix(prefix)
            if not root.is_prefix_of(Name.from_uri(prefix)):
                raise ValueError(f"announced prefix {prefix} is not under {NDNTP_PREFIX}")
            checked.append(prefix)
        return checked

    @model_validator(mode="after")
    def _stratum_consistency(self) -> "ServerConfig":
        for prefix in self.announced_prefixes:
            components = Name.from_uri(prefix).components
            if len(components) > 2 and components[2].startswith("stratum="):
                if components[2] != f"stratum={self.stratum}":
                    raise ValueError(f"announced prefix {prefix} does not match stratum {self.stratum}")
        if self.stratum_sync is not None and self.stratum < 2:
            raise ValueError("stratum sync requires a server of stratum 2 or higher")
        return self

    def prefixes(self) -> list[Name]:
        names = [Name.from_uri(NDNTP_PREFIX), stratum_prefix(self.stratum)]
        for prefix in self.announced_prefixes:
            name = Name.from_uri(prefix)
            if name not in names:
                names.append(name)
        return names


class NodeSpec(_Strict):
    id: str = Field(min_length=1, pattern=r"^[A-Za-z0-9_.\-]+$")
    role: Literal["client", "forwarder", "server"]
    clock: ClockSpec = Field(default_factory=ClockSpec)
    forwarder: Optional[ForwarderConfig] = None
    client: Optional[ClientConfig] = None
    server: Optional[ServerConfig] = None

    @model_validator(mode="after")
    def _role_config(self) -> "NodeSpec":
        expected = {"client": self.client, "forwarder": self.forwarder, "server": self.server}
        for role, config in expected.items():
            if role != self.role and config is not None:
                raise ValueError(f"node {self.id} has role {self.role} but carries a {role} section")
        if self.role == "forwarder" and self.forwarder is None:
            self.forwarder = ForwarderConfig()
        if self.role == "client" and self.client is None:
            self.client = ClientConfig()
        if self.role == "server" and self.server is None:
            self.server = ServerConfig()
        return self


class LinkSpec(_Strict):
    a: str
    b: str
    delay_us: int = Field(gt=0)
    jitter_us: int = Field(default=0, ge=0)
    loss_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    extra_delay_to_a_us: int = Field(default=0, ge=0)
    extra_delay_to_b_us: int = Field(default=0, ge=0)


class StrategyAssignment(_Strict):
    node: str = "*"
    prefix: PrefixStr = NDNTP_PREFIX
    kind: StrategyKind
    threshold: int = Field(default=1, ge=0)


class ScenarioConfig(_Strict):
    name: str
    description: str = ""
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    duration_us: int = Field(default=DEFAULT_DURATION_US, gt=0)
    pit_mode: PitMode = PitMode.STANDARD
    nodes: List[NodeSpec]
    links: List[LinkSpec]
    strategies: List[StrategyAssignment] = Field(default_factory=list)
    trust_anchors: Optional[List[str]] = None

    @model_validator(mode="after")
    def _references(self) -> "ScenarioConfig":
        ids = [node.id for node in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("node ids must be unique")
        if "*" in ids:
            raise ValueError("'*' is reserved for strategy wildcards")
        known = set(ids)
        for link in self.links:
            for end in (link.a, link.b):
                if end not in known:
                    raise ValueError(f"link references unknown node {end}")
            if link.a == link.b:
                raise ValueError(f"link {link.a}-{link.b} connects a node to itself")
        for assignment in self.strategies:
            if assignment.node != "*" and assignment.node not in known:
                raise ValueError(f"strategy assignment references unknown node {assignment.node}")
        for anchor in self.trust_anchors or []:
            if anchor not in known:
                raise ValueError(f"trust anchor {anchor} is not a node")
        return self

    def node(self, node_id: str) -> NodeSpec:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def anchors(self) -> list[str]:
        if self.trust_anchors is None:
            return [node.id for node in self.nodes]
        return list(self.trust_anchors)


# ---- Metrics ----
METRICS_COLUMNS = (
    "run_id",
    "client",
    "session",
    "sample",
    "server_reached",
    "rtt",
    "est_offset",
    "true_offset",
    "abs_error",
    "discarded_reason",
    "pit_mode",
    "strategy",
)


class MetricsRecord(BaseModel):
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

    model_config = ConfigDict(from_attributes=True)

    @property
    def is_combined(self) -> bool:
        return self.session is None and self.sample is None

    def csv_row(self) -> list[str]:
        return ["" if getattr(self, column) is None else str(getattr(self, column)) for column in METRICS_COLUMNS]


# ---- API ----
class ScenarioSummary(BaseModel):
    name: str
    description: str
    nodes: int
    links: int


class RunRequest(BaseModel):
    scenario: str
    seed: Optional[int] = Field(default=None, ge=0)
    pit_mode: Optional[PitMode] = None
    strategy: Optional[StrategyKind] = None


class RunRead(BaseModel):
    id: int
    scenario: str
    seed: int
    pit_mode: str
    strategy: str
    created_at: datetime
    trail_hash: str
    summary: dict[str, Any]

    model_config = ConfigDict(from_attributes=True)
