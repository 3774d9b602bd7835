import unittest

try:
    from ndntp.core.names import Name, build_ndntp_name
    from ndntp.core.packets import Data, Interest, NdntpPayload, signing_bytes
    from ndntp.core.security import KeyTable
    from ndntp.forwarder.content_store import ContentStore
    from ndntp.forwarder.fib import Fib, FibEntry, NextHop
    from ndntp.forwarder.pit import Pit
    from ndntp.forwarder.rate_limit import PrefixRateLimiter, RateDecision
    from ndntp.schemas import CachePolicy, PitMode
except ModuleNotFoundError:
    Fib = None


KEYS = KeyTable.for_nodes(1, ["S"]) if Fib is not None else None


def _data(name, freshness):
    payload = NdntpPayload(t2_receive=1, t3_transmit=1, stratum=1, server_id="S", echo_of_name=name)
    return Data(name, freshness, payload, KEYS.sign(signing_bytes(name, freshness, payload), "S"), "S")


@unittest.skipIf(Fib is None, "Project dependencies are missing")
class FibTests(unittest.TestCase):
    def test_longest_prefix_match(self):
        fib = Fib()
        fib.add(FibEntry(Name.from_uri("/NDNTP/time"), (NextHop(1, 10),)))
        fib.add(FibEntry(Name.from_uri("/NDNTP/time/stratum=1"), (NextHop(2, 20),)))
        self.assertEqual(fib.lookup(Name.from_uri("/NDNTP/time/stratum=1/ab/0/0")).nexthops[0].face_id, 2)
        self.assertEqual(fib.lookup(Name.from_uri("/NDNTP/time/stratum=2/ab/0/0")).nexthops[0].face_id, 1)
        self.assertIsNone(fib.lookup(Name.from_uri("/video")))

    def test_entry_excludes_incoming_face(self):
        entry = FibEntry(Name.from_uri("/a"), (NextHop(3, 5), NextHop(1, 7)))
        self.assertEqual([hop.face_id for hop in entry.nexthops], [1, 3])
        self.assertEqual([hop.face_id for hop in entry.eligible(1)], [3])
        self.assertEqual(entry.cost_of(1), 7)

    def test_entry_validation(self):
        with self.assertRaises(ValueError):
            FibEntry(Name.from_uri("/a"), ())
        with self.assertRaises(ValueError):
            FibEntry(Name.from_uri("/a"), (NextHop(1, 1), NextHop(1, 2)))

    def test_remove_last_nexthop_drops_entry(self):
        fib = Fib()
        fib.add(FibEntry(Name.from_uri("/a"), (NextHop(1, 1),)))
        fib.remove_nexthop(Name.from_uri("/a"), 1)
        self.assertEqual(len(fib), 0)


@unittest.skipIf(Fib is None, "Project dependencies are missing")
class PitTests(unittest.TestCase):
    def test_entries_expire_lazily(self):
        pit = Pit()
        name = Name.from_uri("/NDNTP/time/00/0/0")
        pit.insert(name, PitMode.STANDARD, now=0, lifetime=100)
        self.assertIsNotNone(pit.find(name, 99))
        self.assertIsNone(pit.find(name, 100))

    def test_consumed_entries_leave_a_tombstone_until_expiry(self):
        pit = Pit()
        name = Name.from_uri("/NDNTP/time/00/0/0")
        entry = pit.insert(name, PitMode.STANDARD, now=0, lifetime=100)
        pit.consume(entry)
        self.assertIsNone(pit.find(name, 10))
        self.assertTrue(pit.was_consumed(name, 10))
        self.assertFalse(pit.was_consumed(name, 100))

    def test_records(self):
        pit = Pit()
        entry = pit.insert(Name.from_uri("/a"), PitMode.MULTI_RESPONSE, now=0, lifetime=100)
        entry.add_in_record(1, 11, 0)
        entry.add_in_record(2, 12, 1)
        entry.add_in_record(1, 13, 2)
        entry.add_out_record(3, 0)
        entry.add_out_record(4, 0)
        self.assertEqual(entry.downstream_faces(), [1, 2])
        self.assertEqual(entry.expected_responses, 2)
        self.assertIs(pit.get_by_id(entry.entry_id), entry)


@unittest.skipIf(Fib is None, "Project dependencies are missing")
class ContentStoreTests(unittest.TestCase):
    def setUp(self):
        self.name = build_ndntp_name(bytes(8), 0, 0)

    def test_zero_freshness_never_satisfies_must_be_fresh(self):
        cs = ContentStore(10)
        cs.insert(_data(self.name, 0), now=0)
        self.assertIsNone(cs.lookup(Interest(self.name, nonce=1, must_be_fresh=True), now=0))
        self.assertIsNotNone(cs.lookup(Interest(self.name, nonce=1), now=0))

    def test_freshness_window_is_half_open(self):
        cs = ContentStore(10)
        cs.insert(_data(self.name, 100), now=0)
        interest = Interest(self.name, nonce=1, must_be_fresh=True)
        self.assertIsNotNone(cs.lookup(interest, now=99))
        self.assertIsNone(cs.lookup(interest, now=100))

    def test_clamp_policy_bounds_effective_freshness(self):
        cs = ContentStore(10, CachePolicy.CLAMP_FRESHNESS, max_freshness=1_000)
        cs.insert(_data(self.name, 3_600_000_000), now=0)
        interest = Interest(self.name, nonce=1, must_be_fresh=True)
        hit = cs.lookup(interest, now=999)
        self.assertEqual(hit.freshness_period, 1_000)
        self.assertEqual(hit.data.freshness_period, 3_600_000_000)
        self.assertIsNone(cs.lookup(interest, now=1_000))

    def test_no_cache_ndntp_policy(self):
        cs = ContentStore(10, CachePolicy.NO_CACHE_NDNTP)
        self.assertFalse(cs.insert(_data(self.name, 100), now=0))
        self.assertTrue(cs.insert(_data(Name.from_uri("/video/1"), 100), now=0))

    def test_capacity_evicts_oldest(self):
        cs = ContentStore(2)
        names = [build_ndntp_name(bytes(8), 0, index) for index in range(3)]
        for index, name in enumerate(names):
            cs.insert(_data(name, 100), now=index)
        self.assertNotIn(names[0], cs)
        self.assertIn(names[2], cs)


@unittest.skipIf(Fib is None, "Project dependencies are missing")
class RateLimiterTests(unittest.TestCase):
    def test_burst_then_refill(self):
        limiter = PrefixRateLimiter(prefix=Name.from_uri("/NDNTP/time"), rate_per_s=10, burst=2)
        name = Name.from_uri("/NDNTP/time/00/0/0")
        self.assertIs(limiter.check(name, 0), RateDecision.ALLOW)
        self.assertIs(limiter.check(name, 0), RateDecision.ALLOW)
        self.assertIs(limiter.check(name, 0), RateDecision.DENY)
        self.assertIs(limiter.check(name, 99_999), RateDecision.DENY)
        self.assertIs(limiter.check(name, 100_000), RateDecision.ALLOW)

    def test_other_prefixes_pass(self):
        limiter = PrefixRateLimiter(prefix=Name.from_uri("/NDNTP/time"), rate_per_s=1, burst=1)
        limiter.check(Name.from_uri("/NDNTP/time/a"), 0)
        self.assertIs(limiter.check(Name.from_uri("/video/1"), 0), RateDecision.ALLOW)


if __name__ == "__main__":
    unittest.main()
