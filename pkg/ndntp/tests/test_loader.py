import json
import tempfile
import unittest
from pathlib import Path

try:
    from ndntp.core.errors import ScenarioParseError, ScenarioValidationError, UnknownScenario
    from ndntp.harness.loader import builtin_names, load_builtins, load_scenario, parse_scenario
    from ndntp.harness.runner import RunOverrides, apply_overrides, strategy_label
    from ndntp.schemas import PitMode, StrategyKind
except ModuleNotFoundError:
    parse_scenario = None


def _document(**overrides):
    document = {
        "name": "tiny",
        "nodes": [
            {"id": "C", "role": "client"},
            {"id": "F1", "role": "forwarder"},
            {"id": "S", "role": "server"},
        ],
        "links": [
            {"a": "C", "b": "F1", "delay_us": 5000},
            {"a": "F1", "b": "S", "delay_us": 10000},
        ],
    }
    document.update(overrides)
    return document


@unittest.skipIf(parse_scenario is None, "Project dependencies are missing")
class ParseScenarioTests(unittest.TestCase):
    def test_builtin_fig2(self):
        config = load_scenario("fig2")
        self.assertEqual(len(config.nodes), 5)
        self.assertEqual(len(config.links), 4)
        self.assertIs(config.pit_mode, PitMode.STANDARD)

    def test_every_builtin_loads(self):
        configs = load_builtins()
        self.assertEqual(sorted(configs), builtin_names())
        self.assertIn("delay-attack", configs)
        self.assertEqual(len(configs), 12)

    def test_defaults(self):
        config = parse_scenario(json.dumps(_document()))
        self.assertEqual(config.seed, 42)
        client = config.node("C").client
        self.assertEqual((client.servers_per_run, client.samples_per_server), (4, 4))
        self.assertEqual(client.rtt_threshold_us, 250_000)
        self.assertEqual(config.anchors(), ["C", "F1", "S"])

    def test_bad_json_reports_line(self):
        with self.assertRaises(ScenarioParseError) as caught:
            parse_scenario('{\n  "name": "x",\n  nodes: []\n}')
        self.assertEqual(caught.exception.line, 3)

    def test_probability_out_of_range(self):
        document = _document()
        document["nodes"][0]["client"] = {"strategy_decorations": {"probability": 1.5}}
        with self.assertRaises(ScenarioValidationError) as caught:
            parse_scenario(json.dumps(document))
        self.assertIn("probability", str(caught.exception))

    def test_unknown_keys_rejected(self):
        document = _document()
        document["links"][0]["bandwidth"] = 10
        with self.assertRaises(ScenarioValidationError):
            parse_scenario(json.dumps(document))

    def test_unknown_link_endpoint(self):
        document = _document()
        document["links"].append({"a": "F1", "b": "Z", "delay_us": 1})
        with self.assertRaises(ScenarioValidationError) as caught:
            parse_scenario(json.dumps(document))
        self.assertIn("unknown node Z", str(caught.exception))

    def test_role_section_mismatch(self):
        document = _document()
        document["nodes"][1]["client"] = {}
        with self.assertRaises(ScenarioValidationError):
            parse_scenario(json.dumps(document))

    def test_unreachable_client(self):
        document = _document(links=[{"a": "F1", "b": "S", "delay_us": 10000}])
        with self.assertRaises(ScenarioValidationError) as caught:
            parse_scenario(json.dumps(document))
        self.assertIn("unreachable prefix /NDNTP/time from C", str(caught.exception))

    def test_unreachable_stratum(self):
        document = _document()
        document["nodes"][0]["client"] = {"target_stratum": 3}
        with self.assertRaises(ScenarioValidationError) as caught:
            parse_scenario(json.dumps(document))
        self.assertIn("/NDNTP/time/stratum=3", str(caught.exception))

    def test_unknown_scenario(self):
        with self.assertRaises(UnknownScenario):
            load_scenario("no-such-scenario")
        with self.assertRaises(UnknownScenario):
            load_scenario("missing/dir/file.json")

    def test_load_from_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "tiny.json"
            path.write_text(json.dumps(_document()), encoding="utf-8")
            self.assertEqual(load_scenario(path).name, "tiny")


@unittest.skipIf(parse_scenario is None, "Project dependencies are missing")
class OverrideTests(unittest.TestCase):
    def test_pit_mode_override_clears_node_modes(self):
        document = _document()
        document["nodes"][1]["forwarder"] = {"pit_mode": "aggregate"}
        config = parse_scenario(json.dumps(document))
        overridden = apply_overrides(config, RunOverrides(seed=7, pit_mode=PitMode.MULTI_RESPONSE))
        self.assertEqual(overridden.seed, 7)
        self.assertIs(overridden.pit_mode, PitMode.MULTI_RESPONSE)
        self.assertIsNone(overridden.node("F1").forwarder.pit_mode)
        self.assertIs(config.node("F1").forwarder.pit_mode, PitMode.AGGREGATE)

    def test_strategy_override(self):
        config = load_scenario("fig2")
        self.assertEqual(strategy_label(config), "multicast-all")
        overridden = apply_overrides(config, RunOverrides(strategy=StrategyKind.BEST_ROUTE))
        self.assertEqual(strategy_label(overridden), "best-route")

        plain = parse_scenario(json.dumps(_document()))
        self.assertEqual(strategy_label(plain), "best-route")
        with_default = apply_overrides(plain, RunOverrides(strategy=StrategyKind.SESSION_PIN))
        self.assertEqual([a.node for a in with_default.strategies], ["*"])


if __name__ == "__main__":
    unittest.main()
