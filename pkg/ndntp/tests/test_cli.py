import io
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

try:
    from ndntp.cli import EXIT_AUDIT_FAILED, EXIT_INVALID, EXIT_OK, main, parse_seed_range
    from ndntp.harness.loader import builtin_names
except ModuleNotFoundError:
    main = None


def _main(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(["--log-level", "WARNING", *argv])
    return code, out.getvalue(), err.getvalue()


@unittest.skipIf(main is None, "Project dependencies are missing")
class CommandLineTests(unittest.TestCase):
    def test_seed_range(self):
        self.assertEqual(parse_seed_range("3..5"), [3, 4, 5])
        self.assertEqual(parse_seed_range("9"), [9])

    def test_run_writes_outputs(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, out, _ = _main("run", "--scenario", "fig2", "--seed", "5", "--out", tmp)
            self.assertEqual(code, EXIT_OK)
            metrics = Path(tmp) / "fig2-s5-standard.csv"
            self.assertTrue(metrics.is_file())
            self.assertTrue((Path(tmp) / "fig2-s5-standard-trail.jsonl").is_file())
            self.assertTrue((Path(tmp) / "fig2-s5-standard-summary.json").is_file())
            header = metrics.read_text(encoding="utf-8").splitlines()[0]
            self.assertTrue(header.startswith("run_id,client,session,sample,server_reached,rtt"))
            self.assertIn(str(metrics), out)

    def test_audit_flags_multi_response(self):
        with tempfile.TemporaryDirectory() as tmp:
            _main("run", "--scenario", "fig2", "--pit-mode", "multi-response", "--out", tmp)
            trail = str(Path(tmp) / "fig2-s42-multi-response-trail.jsonl")
            code, out, _ = _main("audit", "--trail", trail, "--check", "flow-balance")
            self.assertEqual(code, EXIT_AUDIT_FAILED)
            self.assertIn("flow-balance: FAIL", out)

            code, out, _ = _main("audit", "--trail", trail, "--check", "conservation", "--check", "labels")
            self.assertEqual(code, EXIT_OK)

    def test_audit_missing_trail(self):
        code, _, err = _main("audit", "--trail", "/nonexistent/trail.jsonl")
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("cannot read audit trail", err)

    def test_unknown_scenario_is_invalid(self):
        code, _, err = _main("run", "--scenario", "nope")
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("unknown scenario", err)

    def test_scenarios_list(self):
        code, out, _ = _main("scenarios", "list")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.split(), builtin_names())

    def test_sweep_merges_seeds(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, _ = _main("sweep", "--scenario", "fig2", "--seeds", "1..3", "--workers", "1", "--out", tmp)
            self.assertEqual(code, EXIT_OK)
            merged = Path(tmp) / "fig2-sweep-s1-s3-standard.csv"
            lines = merged.read_text(encoding="utf-8").splitlines()
            self.assertEqual([line.split(",")[0] for line in lines[1:]], ["s1-C-r0"] * 2 + ["s2-C-r0"] * 2 + ["s3-C-r0"] * 2)


if __name__ == "__main__":
    unittest.main()
