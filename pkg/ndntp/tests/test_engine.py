import unittest

try:
    from ndntp.core.errors import PastEvent
    from ndntp.sim.audit import AuditRecord, AuditTrail
    from ndntp.sim.engine import EventKind, Simulator
    from ndntp.sim.links import Link
    from ndntp.sim.rng import StreamFactory, rng_stream
except ModuleNotFoundError:
    Simulator = None


@unittest.skipIf(Simulator is None, "Project dependencies are missing")
class SimulatorTests(unittest.TestCase):
    def test_events_run_in_time_then_insertion_order(self):
        sim = Simulator()
        order = []
        sim.call_at(20, "A", lambda: order.append("late"))
        sim.call_at(10, "A", lambda: order.append("first"))
        sim.call_at(10, "B", lambda: order.append("second"))
        self.assertEqual(sim.run_until(100), 3)
        self.assertEqual(order, ["first", "second", "late"])
        self.assertEqual(sim.now, 100)

    def test_run_until_leaves_later_events_queued(self):
        sim = Simulator()
        sim.call_at(50, "A", lambda: None)
        sim.call_at(150, "A", lambda: None)
        self.assertEqual(sim.run_until(100), 1)
        self.assertEqual([event.fire_at for event in sim.pending()], [150])

    def test_scheduling_in_the_past_fails(self):
        sim = Simulator()
        sim.run_until(10)
        with self.assertRaises(PastEvent):
            sim.call_at(5, "A", lambda: None)

    def test_handler_receives_packet_events(self):
        seen = []
        sim = Simulator(handler=seen.append)
        sim.schedule(5, EventKind.PACKET_DELIVERY, "B", face=1, packet="p", link="A-B#0")
        sim.run_until(5)
        self.assertEqual(len(seen), 1)
        self.assertEqual((seen[0].node, seen[0].face, seen[0].packet), ("B", 1, "p"))

    def test_callbacks_can_schedule_more_work(self):
        sim = Simulator()
        fired = []

        def tick():
            fired.append(sim.now)
            if sim.now < 30:
                sim.call_at(sim.now + 10, "A", tick)

        sim.call_at(0, "A", tick)
        sim.run_until(100)
        self.assertEqual(fired, [0, 10, 20, 30])


@unittest.skipIf(Simulator is None, "Project dependencies are missing")
class LinkTests(unittest.TestCase):
    def test_asymmetric_delay(self):
        link = Link("F1-S1#0", "F1", 2, "S1", 1, delay=10_000, extra_delay_to_a=40_000)
        self.assertEqual(link.transmit("F1", "x", 0).deliver_at, 10_000)
        self.assertEqual(link.transmit("S1", "x", 0).deliver_at, 50_000)
        self.assertEqual(link.transmit("S1", "x", 0).to_face, 2)

    def test_fixed_delay(self):
        link = Link("A-B#0", "A", 1, "B", 1, delay=10_000)
        self.assertEqual(link.transmit("A", "x", 0).deliver_at, 10_000)

    def test_jitter_is_uniform_over_the_bound(self):
        link = Link(
            "A-B#0", "A", 1, "B", 1, delay=10_000, jitter=2_000,
            jitter_rng=rng_stream(7, "A-B#0", "jitter"),
        )
        times = [link.transmit("A", index, 0).deliver_at for index in range(1_000)]
        self.assertGreaterEqual(min(times), 10_000)
        self.assertLessEqual(max(times), 12_000)
        self.assertLessEqual(abs(sum(times) / len(times) - 11_000), 100)

    def test_jitter_is_not_inherited_by_later_sends(self):
        link = Link(
            "A-B#0", "A", 1, "B", 1, delay=10_000, jitter=2_000,
            jitter_rng=rng_stream(7, "A-B#0", "jitter"),
        )
        latencies = [link.transmit("A", index, index * 100).deliver_at - index * 100 for index in range(1_000)]
        self.assertLess(min(latencies), 10_100)
        self.assertLessEqual(abs(sum(latencies) / len(latencies) - 11_000), 100)

    def test_full_loss(self):
        link = Link("A-B#0", "A", 1, "B", 1, delay=1, loss_rate=1.0, loss_rng=rng_stream(1, "l", "loss"))
        self.assertTrue(link.transmit("A", "x", 0).lost)

    def test_rejects_bad_parameters(self):
        with self.assertRaises(ValueError):
            Link("A-B#0", "A", 1, "B", 1, delay=0)
        with self.assertRaises(ValueError):
            Link("A-B#0", "A", 1, "B", 1, delay=1, loss_rate=1.5)


@unittest.skipIf(Simulator is None, "Project dependencies are missing")
class StreamTests(unittest.TestCase):
    def test_streams_are_reproducible_and_independent(self):
        first = rng_stream(42, "F1", "strategy").random(5).tolist()
        self.assertEqual(first, rng_stream(42, "F1", "strategy").random(5).tolist())
        self.assertNotEqual(first, rng_stream(42, "F2", "strategy").random(5).tolist())
        self.assertNotEqual(first, rng_stream(43, "F1", "strategy").random(5).tolist())

    def test_factory_caches_streams(self):
        factory = StreamFactory(3)
        self.assertIs(factory.get("C", "hash"), factory.get("C", "hash"))
        self.assertIsNot(factory.get("C", "hash"), factory.get("C", "nonce"))


@unittest.skipIf(Simulator is None, "Project dependencies are missing")
class AuditTrailTests(unittest.TestCase):
    def _trail(self):
        trail = AuditTrail()
        trail.append(AuditRecord(time=0, node="C", direction="out", kind="interest", name="/NDNTP/time/00/0/0",
                                 face=1, link="C-F1#0", nonce=9, label=("F1", "S")))
        trail.append(AuditRecord(time=5, node="F1", direction="in", kind="interest", name="/NDNTP/time/00/0/0",
                                 face=1, link="C-F1#0", nonce=9))
        return trail

    def test_jsonl_omits_empty_fields_and_reloads(self):
        trail = self._trail()
        text = trail.to_jsonl()
        self.assertNotIn("reason", text)
        self.assertIn('"label":["F1","S"]', text)
        reloaded = AuditTrail.from_jsonl(text)
        self.assertEqual(reloaded.records, trail.records)
        self.assertEqual(reloaded.digest(), trail.digest())

    def test_unknown_direction_rejected(self):
        with self.assertRaises(ValueError):
            AuditTrail().append(AuditRecord(time=0, node="C", direction="sideways", kind="data", name="/a"))

    def test_records_are_frozen_and_typed(self):
        record = AuditTrail.from_jsonl(
            '{"time":3,"node":"F1","direction":"in","kind":"interest","name":"/a","label":["F1","S"]}\n'
        ).records[0]
        self.assertEqual(record.label, ("F1", "S"))
        self.assertIsNone(record.face)
        with self.assertRaises(ValueError):
            record.time = 4
        with self.assertRaises(ValueError):
            AuditTrail.from_jsonl('{"time":0,"node":"C","direction":"in","kind":"nack","name":"/a"}\n')

    def test_unknown_field_rejected(self):
        with self.assertRaises(ValueError):
            AuditTrail.from_jsonl('{"time":0,"node":"C","direction":"in","kind":"data","name":"/a","color":"red"}\n')


if __name__ == "__main__":
    unittest.main()
