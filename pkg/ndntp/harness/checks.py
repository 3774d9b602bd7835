"""Property checks over an audit trail.

Each check returns the list of violations it found; an empty list passes.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable

from ..core.names import Name, try_parse_ndntp_name
from ..sim.audit import AuditTrail


@dataclass(frozen=True)
class Violation:
    check: str
    message: str


def check_flow_balance(trail: AuditTrail) -> list[Violation]:
    """At most one Data per PIT entry leaves a forwarder on each downstream face."""
    sent: Counter = Counter()
    for record in trail:
        if record.direction == "out" and record.kind == "data" and record.entry is not None:
            sent[(record.node, record.entry, record.face)] += 1
    return [
        Violation("flow-balance", f"{node} sent {count} Data for entry {entry} on face {face}")
        for (node, entry, face), count in sorted(sent.items())
        if count > 1
    ]


def check_freshness(trail: AuditTrail) -> list[Violation]:
    violations = []
    for record in trail:
        if record.direction != "out" or record.source != "cs" or not record.must_be_fresh:
            continue
        if record.cache_age is None or record.freshness is None or record.cache_age >= record.freshness:
            violations.append(Violation(
                "freshness",
                f"{record.node} served stale {record.name} at t={record.time} "
                f"(age {record.cache_age}, freshness {record.freshness})",
            ))
    return violations


def check_pinning(trail: AuditTrail) -> list[Violation]:
    """Every forwarding decision for one (hash, session) at a node uses the same faces."""
    decisions: dict[tuple[str, bytes, int], dict[object, set[int]]] = defaultdict(lambda: defaultdict(set))
    for record in trail:
        if record.direction != "out" or record.kind != "interest" or record.label:
            continue
        parsed = try_parse_ndntp_name(Name.from_uri(record.name))
        if parsed is None:
            continue
        decision = record.entry if record.entry is not None else ("nonce", record.nonce)
        decisions[(record.node, parsed.hash, parsed.session)][decision].add(record.face)

    violations = []
    for (node, hash_, session), by_decision in sorted(decisions.items(), key=lambda item: (item[0][0], item[0][1], item[0][2])):
        face_sets = {frozenset(faces) for faces in by_decision.values()}
        if len(face_sets) > 1:
            choices = sorted(sorted(faces) for faces in face_sets)
            violations.append(Violation(
                "pinning", f"{node} split session {session} of hash {hash_.hex()} across faces {choices}",
            ))
    return violations


def check_conservation(trail: AuditTrail) -> list[Violation]:
    """Every packet put on a link is either delivered or dropped with a reason."""
    sent: Counter = Counter()
    settled: Counter = Counter()
    for record in trail:
        if record.link is None:
            continue
        if record.direction == "out":
            sent[record.link] += 1
        else:
            settled[record.link] += 1
    return [
        Violation("conservation", f"link {link}: {sent[link]} sent, {settled[link]} delivered or dropped")
        for link in sorted(set(sent) | set(settled))
        if sent[link] != settled[link]
    ]


def check_labels(trail: AuditTrail) -> list[Violation]:
    return [
        Violation("labels", f"{record.node} received {record.name} outside its label {list(record.label)}")
        for record in trail
        if record.direction == "in" and record.kind == "interest" and record.label and record.node not in record.label
    ]


CHECKS: dict[str, Callable[[AuditTrail], list[Violation]]] = {
    "flow-balance": check_flow_balance,
    "freshness": check_freshness,
    "pinning": check_pinning,
    "conservation": check_conservation,
    "labels": check_labels,
}


def run_check(name: str, trail: AuditTrail) -> list[Violation]:
    try:
        check = CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown audit check {name!r}; expected one of {sorted(CHECKS)}") from None
    return check(trail)
