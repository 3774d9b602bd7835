from .client import ClientRunReport, NdntpClient, Observation, Rejection
from .selection import Discard, DiscardReason, SelectionParams, SyncResult, select_and_combine
from .server import NdntpServer, ServerReply
from .strata import StratumSync

__all__ = [
    "ClientRunReport",
    "Discard",
    "DiscardReason",
    "NdntpClient",
    "NdntpServer",
    "Observation",
    "Rejection",
    "SelectionParams",
    "ServerReply",
    "StratumSync",
    "SyncResult",
    "select_and_combine",
]
