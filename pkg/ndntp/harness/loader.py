from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from ..core.errors import ScenarioParseError, ScenarioValidationError, UnknownScenario
from ..core.names import stratum_prefix
from ..schemas import ScenarioConfig
from .topology import compute_fib

logger = logging.getLogger(__name__)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def builtin_names() -> list[str]:
    return sorted(path.stem for path in SCENARIO_DIR.glob("*.json"))


def builtin_path(name: str) -> Path:
    path = SCENARIO_DIR / f"{name}.json"
    if not path.is_file():
        raise UnknownScenario(f"unknown scenario {name!r}; built-ins are {', '.join(builtin_names())}")
    return path


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"])
        parts.append(f"{location}: {error['msg']}" if location else error["msg"])
    return "; ".join(parts)


def parse_scenario(text: str, *, source: str = "<scenario>") -> ScenarioConfig:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{source}: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(document, dict):
        raise ScenarioParseError(f"{source}: a scenario must be a JSON object", line=1)

    try:
        config = ScenarioConfig.model_validate(document)
    except ValidationError as exc:
        raise ScenarioValidationError(f"{source}: {_format_validation(exc)}") from exc

    check_reachability(config)
    return config


def check_reachability(config: ScenarioConfig) -> None:
    """Every client and stratum-synchronizing server must have a route to its target prefix."""
    fibs = compute_fib(config)
    for node in config.nodes:
        targets = []
        if node.role == "client":
            targets.append(node.client.target_prefix)
        elif node.role == "server" and node.server.stratum_sync is not None:
            targets.append(stratum_prefix(node.server.stratum - 1))
        for prefix in targets:
            if fibs[node.id].get(prefix) is None:
                raise ScenarioValidationError(f"unreachable prefix {prefix.uri} from {node.id}")


def load_scenario(source: Union[str, Path]) -> ScenarioConfig:
    """Load a scenario from a file path or a built-in name."""
    path = Path(source)
    if not path.is_file():
        if path.suffix == ".json" or len(path.parts) > 1:
            raise UnknownScenario(f"scenario file {source} does not exist")
        path = builtin_path(str(source))
    logger.debug("Loading scenario from %s", path)
    return parse_scenario(path.read_text(encoding="utf-8"), source=path.name)


def load_builtins() -> dict[str, ScenarioConfig]:
    return {name: load_scenario(name) for name in builtin_names()}
