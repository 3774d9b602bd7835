"""NDNTP namespace: names, decorations and the build/parse pair.

Canonical form: ``/NDNTP/time[/stratum=N][/P=p]/<hash>/<session>/<sample>``.
Components are stored as their canonical text; the typed view of an NDNTP
name is obtained with :func:`parse_ndntp_name`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidDecoration, MalformedComponent, NotNdntp

_STRATUM_TAG = "stratum="
_PROBABILITY_TAG = "P="
_HEX_RE = re.compile(r"^(?:[0-9a-f]{2})+$")
_DECIMAL_RE = re.compile(r"^(?:0|[1-9][0-9]*)$")


@dataclass(frozen=True)
class Name:
    components: tuple[str, ...] = ()

    @classmethod
    def from_uri(cls, uri: str) -> "Name":
        if not uri.startswith("/"):
            raise MalformedComponent(f"name must start with '/': {uri!r}")
        parts = [part for part in uri.split("/") if part]
        return cls(tuple(parts))

    @classmethod
    def of(cls, *components: str) -> "Name":
        return cls(tuple(components))

    @property
    def uri(self) -> str:
        return "/" + "/".join(self.components)

    def __str__(self) -> str:
        return self.uri

    def __len__(self) -> int:
        return len(self.components)

    def append(self, *components: str) -> "Name":
        return Name(self.components + tuple(components))

    def prefix(self, length: int) -> "Name":
        return Name(self.components[:length])

    def is_prefix_of(self, other: "Name") -> bool:
        return other.components[: len(self.components)] == self.components

    @property
    def is_ndntp(self) -> bool:
        return self.components[:2] == ("NDNTP", "time")


NDNTP_ROOT = Name.of("NDNTP", "time")


@dataclass(frozen=True)
class NameDecorations:
    stratum: Optional[int] = None
    probability: Optional[float] = None


@dataclass(frozen=True)
class ParsedNdntpName:
    hash: bytes
    session: int
    sample: int
    stratum: Optional[int] = None
    probability: Optional[float] = None


def format_probability(probability: float) -> str:
    """Shortest positional decimal that reads back to the same float."""
    return np.format_float_positional(float(probability), unique=True, trim="-")


def stratum_prefix(stratum: int) -> Name:
    if stratum < 1:
        raise InvalidDecoration(f"stratum must be >= 1, got {stratum}")
    return NDNTP_ROOT.append(f"{_STRATUM_TAG}{stratum}")


def _decoration_components(decorations: Optional[NameDecorations]) -> list[str]:
    if decorations is None:
        return []
    components: list[str] = []
    if decorations.stratum is not None:
        if isinstance(decorations.stratum, bool) or decorations.stratum < 1:
            raise InvalidDecoration(f"stratum must be >= 1, got {decorations.stratum}")
        components.append(f"{_STRATUM_TAG}{int(decorations.stratum)}")
    if decorations.probability is not None:
        probability = float(decorations.probability)
        if not 0.0 <= probability <= 1.0:
            raise InvalidDecoration(f"probability must be within [0, 1], got {probability}")
        components.append(f"{_PROBABILITY_TAG}{format_probability(probability)}")
    return components


def build_ndntp_name(
        hash: bytes,
        session: int,
        sample: int,
        decorations: Optional[NameDecorations] = None,
) -> Name:
    if session < 0 or sample < 0:
        raise InvalidDecoration("session and sample numbers must be non-negative")
    if not hash:
        raise InvalidDecoration("hash component must not be empty")
    return NDNTP_ROOT.append(
        *_decoration_components(decorations),
        bytes(hash).hex(),
        str(int(session)),
        str(int(sample)),
    )


def _parse_stratum(component: str) -> int:
    value = component[len(_STRATUM_TAG):]
    if not _DECIMAL_RE.match(value) or int(value) < 1:
        raise MalformedComponent(f"bad stratum component {component!r}")
    return int(value)


def _parse_probability(component: str) -> float:
    value = component[len(_PROBABILITY_TAG):]
    try:
        probability = float(value)
    except ValueError as exc:
        raise MalformedComponent(f"bad probability component {component!r}") from exc
    if not 0.0 <= probability <= 1.0 or format_probability(probability) != value:
        raise MalformedComponent(f"bad probability component {component!r}")
    return probability


def _parse_number(component: str, label: str) -> int:
    if not _DECIMAL_RE.match(component):
        raise MalformedComponent(f"bad {label} number {component!r}")
    return int(component)


def parse_ndntp_name(name: Name) -> ParsedNdntpName:
    if not name.is_ndntp:
        raise NotNdntp(f"{name.uri} is not under /NDNTP/time")

    rest = list(name.components[2:])
    stratum: Optional[int] = None
    probability: Optional[float] = None

    if rest and rest[0].startswith(_STRATUM_TAG):
        stratum = _parse_stratum(rest.pop(0))
    if rest and rest[0].startswith(_PROBABILITY_TAG):
        probability = _parse_probability(rest.pop(0))

    if len(rest) != 3:
        raise MalformedComponent(f"{name.uri} must end with <hash>/<session>/<sample>")
    hash_text, session_text, sample_text = rest
    if not _HEX_RE.match(hash_text):
        raise MalformedComponent(f"bad hash component {hash_text!r}")

    return ParsedNdntpName(
        hash=bytes.fromhex(hash_text),
        session=_parse_number(session_text, "session"),
        sample=_parse_number(sample_text, "sample"),
        stratum=stratum,
        probability=probability,
    )


def try_parse_ndntp_name(name: Name) -> Optional[ParsedNdntpName]:
    try:
        return parse_ndntp_name(name)
    except (NotNdntp, MalformedComponent):
        return None

