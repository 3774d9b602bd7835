from .errors import (
    BrokenLabel,
    EmptyBuffer,
    InvalidDecoration,
    MalformedComponent,
    NdntpError,
    NegativeDelay,
    NoRoute,
    NotNdntp,
    NoUsableSamples,
    PastEvent,
    ScenarioParseError,
    ScenarioValidationError,
    UnknownScenario,
)
from .names import Name, NameDecorations, ParsedNdntpName, build_ndntp_name, parse_ndntp_name
from .packets import AggregatePayload, Data, Interest, NdntpPayload
from .security import KeyTable, SignedEnvelope, VerifyResult
from .timing import ClockModel, Sample, ntp_offset_delay

__all__ = [
    "AggregatePayload",
    "BrokenLabel",
    "ClockModel",
    "Data",
    "EmptyBuffer",
    "Interest",
    "InvalidDecoration",
    "KeyTable",
    "MalformedComponent",
    "Name",
    "NameDecorations",
    "NdntpError",
    "NdntpPayload",
    "NegativeDelay",
    "NoRoute",
    "NoUsableSamples",
    "NotNdntp",
    "ParsedNdntpName",
    "PastEvent",
    "Sample",
    "ScenarioParseError",
    "ScenarioValidationError",
    "SignedEnvelope",
    "UnknownScenario",
    "VerifyResult",
    "build_ndntp_name",
    "ntp_offset_delay",
    "parse_ndntp_name",
]
