import unittest

try:
    from ndntp.core.names import build_ndntp_name
    from ndntp.harness.checks import (
        CHECKS,
        check_conservation,
        check_flow_balance,
        check_freshness,
        check_labels,
        check_pinning,
        run_check,
    )
    from ndntp.sim.audit import AuditRecord, AuditTrail
except ModuleNotFoundError:
    AuditTrail = None


def _name(session=0, sample=0):
    return build_ndntp_name(b"\x03" * 8, session, sample).uri


def _trail(*records):
    trail = AuditTrail()
    for record in records:
        trail.append(record)
    return trail


@unittest.skipIf(AuditTrail is None, "Project dependencies are missing")
class AuditCheckTests(unittest.TestCase):
    def test_flow_balance(self):
        data = dict(time=10, node="F1", direction="out", kind="data", name=_name(), entry=1, face=1)
        self.assertEqual(check_flow_balance(_trail(AuditRecord(**data))), [])
        violations = check_flow_balance(_trail(AuditRecord(**data), AuditRecord(**{**data, "time": 20})))
        self.assertEqual(len(violations), 1)
        self.assertIn("F1 sent 2 Data for entry 1 on face 1", violations[0].message)

    def test_freshness(self):
        fresh = AuditRecord(time=5, node="F1", direction="out", kind="data", name=_name(), source="cs",
                            cache_age=10, freshness=100, must_be_fresh=True)
        stale = AuditRecord(time=5, node="F1", direction="out", kind="data", name=_name(), source="cs",
                            cache_age=0, freshness=0, must_be_fresh=True)
        relaxed = AuditRecord(time=5, node="F1", direction="out", kind="data", name=_name(), source="cs",
                              cache_age=500, freshness=0, must_be_fresh=False)
        self.assertEqual(check_freshness(_trail(fresh, relaxed)), [])
        self.assertEqual(len(check_freshness(_trail(stale))), 1)

    def test_pinning(self):
        first = AuditRecord(time=0, node="F0", direction="out", kind="interest", name=_name(1, 0), entry=1, face=2)
        same = AuditRecord(time=1, node="F0", direction="out", kind="interest", name=_name(1, 1), entry=2, face=2)
        split = AuditRecord(time=2, node="F0", direction="out", kind="interest", name=_name(1, 2), entry=3, face=3)
        other = AuditRecord(time=2, node="F0", direction="out", kind="interest", name=_name(2, 0), entry=4, face=3)
        self.assertEqual(check_pinning(_trail(first, same, other)), [])
        violations = check_pinning(_trail(first, same, split))
        self.assertEqual(len(violations), 1)
        self.assertIn("session 1", violations[0].message)

    def test_conservation(self):
        out = AuditRecord(time=0, node="C", direction="out", kind="interest", name=_name(), link="C-F1#0", face=1)
        delivered = AuditRecord(time=5, node="F1", direction="in", kind="interest", name=_name(), link="C-F1#0", face=1)
        lost = AuditRecord(time=0, node="F1", direction="drop", kind="interest", name=_name(), link="C-F1#0",
                           reason="Loss")
        self.assertEqual(check_conservation(_trail(out, delivered)), [])
        self.assertEqual(check_conservation(_trail(out, out, delivered, lost)), [])
        self.assertEqual(len(check_conservation(_trail(out, out, delivered))), 1)

    def test_labels(self):
        on_path = AuditRecord(time=5, node="F1", direction="in", kind="interest", name=_name(), label=("F1", "S"))
        off_path = AuditRecord(time=5, node="F2", direction="in", kind="interest", name=_name(), label=("F1", "S"))
        self.assertEqual(check_labels(_trail(on_path)), [])
        self.assertEqual(len(check_labels(_trail(on_path, off_path))), 1)

    def test_run_check_by_name(self):
        self.assertEqual(sorted(CHECKS), ["conservation", "flow-balance", "freshness", "labels", "pinning"])
        self.assertEqual(run_check("labels", AuditTrail()), [])
        with self.assertRaises(ValueError):
            run_check("nope", AuditTrail())

    def test_trail_survives_jsonl(self):
        record = AuditRecord(time=5, node="F1", direction="in", kind="interest", name=_name(), label=("F1", "S"))
        trail = _trail(record)
        self.assertEqual(list(AuditTrail.from_jsonl(trail.to_jsonl())), [record])


if __name__ == "__main__":
    unittest.main()
