"""End-to-end checks of the oprange command line.

Usage: test_cli.py OPRANGE SCHEMA DATA_DIR
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from fractions import Fraction

import jsonschema

CLI = SCHEMA = DATA = None


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("OPRANGE_MODE", None)
    full_env.update(env or {})
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    return proc.returncode, proc.stdout


def data(name):
    return os.path.join(DATA, name)


def groups_agree(verification):
    """Classify reports list criterion verdicts; criteria for one property must agree."""
    by_group = {}
    for name, verdict in verification.items():
        by_group.setdefault(name.split(".")[0], set()).add(verdict)
    return all(len(v) == 1 for v in by_group.values())


def as_fractions(m):
    return [[Fraction(x) for x in row] for row in m["data"]]


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(SCHEMA) as f:
            cls.validator = jsonschema.Draft202012Validator(json.load(f))

    def report(self, *args, code=0, env=None):
        rc, out = run(*args, env=env)
        self.assertEqual(rc, code, out)
        doc = json.loads(out)
        self.validator.validate(doc)
        return doc

    def test_classify_singular(self):
        r = self.report("classify", data("diag10.csv"), data("diag01.csv"))
        self.assertTrue(r["results"]["singular"])
        self.assertFalse(r["results"]["dominated"])
        self.assertEqual(r["command"], "classify")

    def test_classify_identity(self):
        r = self.report("classify", data("eye2.csv"), data("eye2.csv"))
        self.assertTrue(r["results"]["dominated"])
        self.assertEqual(r["results"]["domination_constant"], 1.0)
        self.assertTrue(groups_agree(r["verification"]))
        self.assertTrue(r["verification"]["dominated.psd_order"])

    def test_malformed_csv(self):
        r = self.report("classify", data("malformed.csv"), data("eye2.csv"), code=2)
        self.assertEqual(r["error"]["kind"], "parse")
        r = self.report("classify", data("ragged.csv"), data("eye2.csv"), code=2)
        self.assertEqual(r["error"]["kind"], "parse")

    def test_user_errors(self):
        self.assertEqual(self.report("classify", data("eye2.csv"), code=2)["error"]["kind"], "usage")
        self.assertEqual(self.report("classify", data("eye2.csv"), data("missing.csv"), code=2)["error"]["kind"], "io")
        with tempfile.TemporaryDirectory() as tmp:
            wide = os.path.join(tmp, "wide.csv")
            with open(wide, "w") as f:
                f.write("1,0,0\n")
            r = self.report("classify", data("eye2.csv"), wide, code=2)
            self.assertEqual(r["error"]["kind"], "dimension_mismatch")
        r = self.report("rnderiv", data("diag10.csv"), data("eye2.csv"), code=2)
        self.assertEqual(r["error"]["kind"], "not_almost_dominated")

    def test_decompose_mixed(self):
        r = self.report("decompose", data("diag10.csv"), data("eye2.csv"))
        res = r["results"]
        self.assertEqual(as_fractions(res["b_reg"]), [[1, 0], [0, 0]])
        self.assertEqual(as_fractions(res["b_sing"]), [[0, 0], [0, 1]])
        self.assertTrue(res["unique"])

    def test_rnderiv(self):
        r = self.report("rnderiv", data("diag1half.csv"), data("eye2.csv"))
        self.assertEqual(as_fractions(r["results"]["representative"]), [[1, 0], [0, 2]])
        self.assertTrue(r["results"]["bounded"])

    def test_tower(self):
        r = self.report("tower", data("tower_reciprocal_unit.json"))
        res = r["results"]
        self.assertEqual(res["constants"], [str(n) for n in range(1, 65)])
        self.assertEqual(res["verdict"], "almost-dominated-not-dominated")
        r = self.report("tower", data("tower_unit_unit.json"))
        self.assertEqual(r["results"]["verdict"], "dominated-limit")

    def test_float_commands(self):
        for cmd in ("classify", "decompose", "closure", "adjoint"):
            r = self.report("--mode", "float", cmd, data("diag10.csv"), data("ones2.csv"))
            self.assertEqual(r["inputs"]["mode"], "float")
            ok = groups_agree(r["verification"]) if cmd == "classify" else all(r["verification"].values())
            self.assertTrue(ok, cmd)

    def test_env_mode(self):
        r = self.report("classify", data("eye2.csv"), data("eye2.csv"), env={"OPRANGE_MODE": "float"})
        self.assertEqual(r["inputs"]["mode"], "float")
        r = self.report("--mode", "exact", "classify", data("eye2.csv"), data("eye2.csv"), env={"OPRANGE_MODE": "float"})
        self.assertEqual(r["inputs"]["mode"], "exact")

    def test_formats_agree(self):
        with tempfile.TemporaryDirectory() as tmp:
            mtx = os.path.join(tmp, "a.mtx")
            with open(mtx, "w") as f:
                f.write("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n2 2 0.5\n")
            js = os.path.join(tmp, "a.json")
            with open(js, "w") as f:
                json.dump([["1", "0"], ["0", "1/2"]], f)
            base = run("rnderiv", data("diag1half.csv"), data("eye2.csv"))[1]
            for path in (mtx, js):
                rc, out = run("rnderiv", path, data("eye2.csv"))
                self.assertEqual(rc, 0, out)
                self.assertEqual(json.loads(out)["results"], json.loads(base)["results"])

    def test_pretty_is_flattened_json(self):
        rc, out = run("--emit", "pretty", "classify", data("eye2.csv"), data("eye2.csv"))
        self.assertEqual(rc, 0)
        self.assertIn('command = "classify"', out)
        self.assertIn("results.dominated = true", out)

    def test_deterministic(self):
        args = ("tower", data("tower_unit_unit.json"))
        self.assertEqual(run(*args)[1], run(*args)[1])


if __name__ == "__main__":
    CLI, SCHEMA, DATA = sys.argv[1:4]
    unittest.main(argv=sys.argv[:1] + sys.argv[4:], verbosity=2)
