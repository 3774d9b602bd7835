import unittest

try:
    from ndntp.core.names import NameDecorations, build_ndntp_name
    from ndntp.core.packets import Interest
    from ndntp.core.security import KeyTable, VerifyResult
    from ndntp.core.timing import ClockModel
    from ndntp.endpoints.server import NdntpServer
    from ndntp.schemas import Misbehavior, ServerConfig
except ModuleNotFoundError:
    NdntpServer = None


def _server(config=None, clock=None):
    keys = KeyTable.for_nodes(5, ["S1"])
    return NdntpServer("S1", config or ServerConfig(), keys=keys, clock=clock or ClockModel())


@unittest.skipIf(NdntpServer is None, "Project dependencies are missing")
class NdntpServerTests(unittest.TestCase):
    def setUp(self):
        self.name = build_ndntp_name(b"\x0a" * 8, 0, 0)

    def test_reply_carries_serving_time(self):
        server = _server(clock=ClockModel(offset=1_500))
        reply = server.on_interest(Interest(self.name, nonce=3), now=10_000)
        self.assertEqual(reply.send_at, 10_000)
        self.assertEqual(reply.data.payload.t2_receive, 11_500)
        self.assertEqual(reply.data.producer_id, "S1")
        self.assertEqual(reply.data.payload.echo_of_name, self.name)
        verdict = server.keys.verify(reply.data.signature, reply.data.signed_bytes(), ["S1"])
        self.assertIs(verdict, VerifyResult.OK)

    def test_processing_delay(self):
        server = _server(ServerConfig(processing_delay_us=2_000))
        reply = server.on_interest(Interest(self.name, nonce=3), now=0)
        self.assertEqual(reply.data.payload.t3_transmit - reply.data.payload.t2_receive, 2_000)
        self.assertEqual(reply.send_at, 2_000)

    def test_fixed_offset_lie(self):
        server = _server(ServerConfig(misbehavior=Misbehavior(kind="fixed-offset-lie", value_us=500_000)))
        reply = server.on_interest(Interest(self.name, nonce=3), now=1_000)
        self.assertEqual(reply.data.payload.t2_receive, 501_000)

    def test_large_freshness(self):
        server = _server(ServerConfig(misbehavior=Misbehavior(kind="large-freshness", value_us=3_600_000_000)))
        reply = server.on_interest(Interest(self.name, nonce=3), now=0)
        self.assertEqual(reply.data.freshness_period, 3_600_000_000)

    def test_stratum_decoration_must_match(self):
        server = _server(ServerConfig(stratum=2))
        matching = build_ndntp_name(b"\x0a" * 8, 0, 0, NameDecorations(stratum=2))
        other = build_ndntp_name(b"\x0a" * 8, 0, 0, NameDecorations(stratum=1))
        self.assertIsNotNone(server.on_interest(Interest(matching, nonce=3), now=0))
        self.assertIsNone(server.on_interest(Interest(other, nonce=4), now=0))
        self.assertEqual(server.answered, 1)

    def test_discovery_reply_records_path(self):
        server = _server()
        interest = Interest(self.name, nonce=3, discovery_record=("F1", "F2"))
        reply = server.on_interest(interest, now=0)
        self.assertEqual(reply.data.payload.path_record, ("F1", "F2", "S1"))

    def test_step_moves_serving_clock(self):
        server = _server(ServerConfig(stratum=2), clock=ClockModel(offset=30_000))
        self.assertEqual(server.serving_error(0), 30_000)
        server.step(-30_000)
        self.assertEqual(server.serving_error(5_000), 0)


if __name__ == "__main__":
    unittest.main()
