from .choosers import (
    SessionPinState,
    best_route,
    hop_limit_choose,
    multicast_choose,
    path_label_forward,
    probabilistic_choose,
    session_pin,
)
from .dispatcher import StrategyChoice, StrategyDispatcher, StrategyTable
from .labels import PathLabelTable

__all__ = [
    "PathLabelTable",
    "SessionPinState",
    "StrategyChoice",
    "StrategyDispatcher",
    "StrategyTable",
    "best_route",
    "hop_limit_choose",
    "multicast_choose",
    "path_label_forward",
    "probabilistic_choose",
    "session_pin",
]
