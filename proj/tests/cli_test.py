"""End-to-end checks of the focklab command line: exit codes, seeds, config files, output files."""
import json
import os
import subprocess
import sys
import tempfile
import unittest

CLI = os.environ.get("FOCKLAB_CLI", "focklab")


def run(*args, env=None, check=None):
    full_env = dict(os.environ)
    full_env.pop("FOCKLAB_SEED", None)
    if env:
        full_env.update(env)
    p = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    if check is not None:
        assert p.returncode == check, (args, p.returncode, p.stdout, p.stderr)
    return p


def strip_ts(text):
    doc = json.loads(text)
    doc.pop("timestamp", None)
    return doc


class Cli(unittest.TestCase):
    def test_norm_constant(self):
        doc = json.loads(run("norm", "--f", "poly:1", "--p", "2", "--alpha", "1", "--n", "1", check=0).stdout)
        self.assertAlmostEqual(doc["results"][0]["value"], 1.0, places=10)
        self.assertIn("timestamp", doc)
        for key in ("command", "config", "results", "seed", "version"):
            self.assertIn(key, doc)

    def test_gamma(self):
        doc = json.loads(run("gamma", "--n", "1", "--x", "1", check=0).stdout)
        self.assertAlmostEqual(doc["results"][0]["value"], 0.367879, places=6)

    def test_verify_lemma4(self):
        doc = json.loads(run("verify", "lemma4", "--alpha", "2", "--n", "1", check=0).stdout)
        self.assertEqual(doc["verdict"], "pass")
        self.assertEqual(doc["suite"], "lemma4")
        for key in ("suite", "config", "checks", "envelopes", "verdict", "seed", "version", "timestamp"):
            self.assertIn(key, doc)
        for c in doc["checks"]:
            for key in ("name", "lhs", "rhs", "stderr", "margin", "pass"):
                self.assertIn(key, c)
            if "closed form" in c["name"] and isinstance(c["rhs"], float) and c["rhs"] != 0:
                self.assertLessEqual(abs(c["lhs"] - c["rhs"]) / abs(c["rhs"]), 1e-6)

    def test_distance_and_energy(self):
        doc = json.loads(run("distance", "--z", "2", "--w", "0", "--alpha", "1", "--beta", "1", check=0).stdout)
        v = doc["results"][0]["value"]
        self.assertTrue(1.71828 <= v <= 3.71828)
        run("energy", "--z", "1.5", "--alpha", "1", check=0)
        run("project", "--f", "poly: z^2", "--z", "0.5+0.5i", check=0)
        run("supnorm", "--f", "poly: z", check=0)
        both = json.loads(run("distance", "--z", "1", "--w", "0", "--integrator", "both", "--samples", "20000",
                              check=0).stdout)
        self.assertEqual(len(both["results"]), 2)

    def test_family_and_list(self):
        run("family", "--n", "1", check=0)
        out = run("list", check=0).stdout
        self.assertIn("lemma4", out)
        self.assertIn("c13", out)

    def test_usage_errors_exit_2(self):
        self.assertEqual(run("verify", "nope").returncode, 2)
        self.assertEqual(run("explore", "lemma4").returncode, 2)
        self.assertEqual(run("norm", "--bogus-flag").returncode, 2)
        self.assertEqual(run("norm", "--f", "poly:1", "--integrator", "simpson").returncode, 2)
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("verify", "unitary", "--n", "1").returncode, 2)

    def test_malformed_dsl_is_position_annotated(self):
        p = run("norm", "--f", "poly: 1 + * z")
        self.assertEqual(p.returncode, 2)
        self.assertIn("position 10", p.stderr)
        self.assertIn("^", p.stderr)

    def test_reports_identical_modulo_timestamp(self):
        args = ("verify", "metric", "--integrator", "both", "--samples", "20000", "--count", "10", "--seed", "5")
        a = run(*args, check=0).stdout
        b = run(*args, check=0).stdout
        self.assertEqual(strip_ts(a), strip_ts(b))
        # the only difference, if any, sits on the timestamp line
        diff = [(x, y) for x, y in zip(a.splitlines(), b.splitlines()) if x != y]
        self.assertTrue(all('"timestamp"' in x for x, _ in diff))
        c = run(*args, "--no-timestamp", check=0).stdout
        d = run(*args, "--no-timestamp", check=0).stdout
        self.assertEqual(c, d)

    def test_env_seed_overrides_flag(self):
        args = ("verify", "kernel", "--samples", "5000", "--no-timestamp")
        flagged = run(*args, "--seed", "1", env={"FOCKLAB_SEED": "77"}, check=0).stdout
        direct = run(*args, "--seed", "77", check=0).stdout
        other = run(*args, "--seed", "1", check=0).stdout
        self.assertEqual(flagged, direct)
        self.assertNotEqual(flagged, other)
        self.assertEqual(json.loads(flagged)["seed"], 77)

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = os.path.join(d, "run.conf")
            with open(cfg, "w") as fh:
                fh.write("# focklab run\nalpha=2\nn=1\nseed=9\n")
            doc = json.loads(run("--config", cfg, "verify", "lemma4", check=0).stdout)
            self.assertEqual(doc["config"]["alpha"], 2.0)
            self.assertEqual(doc["seed"], 9)
            # command-line flags win over the file
            doc = json.loads(run("--config", cfg, "--alpha", "1", "verify", "lemma4", check=0).stdout)
            self.assertEqual(doc["config"]["alpha"], 1.0)

    def test_out_file_and_csv(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "report.csv")
            p = run("verify", "gamma", "--format", "csv", "--out", out, check=0)
            self.assertEqual(p.stdout, "")
            with open(out) as fh:
                lines = fh.read().splitlines()
            self.assertEqual(lines[0], "suite,name,relation,lhs,rhs,stderr,margin,pass,hard,method")
            self.assertGreater(len(lines), 5)
            self.assertTrue(all(line.startswith("gamma,") for line in lines[1:]))
            self.assertEqual(sorted(os.listdir(d)), ["report.csv"])  # no temporary left behind
            # a failing run into a missing directory leaves nothing behind and reports an error
            bad = os.path.join(d, "missing", "r.json")
            self.assertNotEqual(run("verify", "gamma", "--out", bad).returncode, 0)
            self.assertFalse(os.path.exists(bad))

    def test_tables_directory(self):
        with tempfile.TemporaryDirectory() as d:
            run("verify", "lemma5", "--tables", d, "--out", os.path.join(d, "r.json"), check=0)
            self.assertTrue(any(name.endswith(".csv") for name in os.listdir(d)))

    def test_explore_is_evidence_only(self):
        doc = json.loads(run("explore", "c14", "--count", "10", check=0).stdout)
        self.assertEqual(doc["verdict"], "evidence-only")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        CLI = sys.argv.pop(1)
    unittest.main()
