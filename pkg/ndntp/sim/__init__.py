from .audit import AuditRecord, AuditTrail
from .engine import Event, EventKind, Simulator
from .links import Delivery, Link
from .rng import StreamFactory, rng_stream

__all__ = [
    "AuditRecord",
    "AuditTrail",
    "Delivery",
    "Event",
    "EventKind",
    "Link",
    "Simulator",
    "StreamFactory",
    "rng_stream",
]
