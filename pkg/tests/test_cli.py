import csv
import io
import json
import os
import shutil
import unittest
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from coneseries.cli.main import main
from coneseries.geometry.cone import first_orthant
from coneseries.kernel.polynomial import BivariatePoly, UniPoly
from coneseries.series.laurent import ConstantRule, RaySeries, TaylorRule
from coneseries.support.indexset import AllIndices, FactorialValues, PolynomialValues
from coneseries.support.spec import Ray, SupportSpec, Tail

try:
    import matplotlib  # noqa

    skip_matplotlib_test = False
except ImportError:
    skip_matplotlib_test = True


SQUARES = PolynomialValues(UniPoly((0, 0, 1)))
SQUARES_SUPPORT = SupportSpec(dim=2, points=((0, 0),), rays=(Ray((0, 0), (-1, 1), SQUARES),))
SQRT_RAY = RaySeries(
    (0, 0), (1, -1), AllIndices(), TaylorRule(BivariatePoly((UniPoly((-1, -1)), UniPoly(), UniPoly((1,)))), Fraction(1))
)
FACTORIAL_RAY = RaySeries((0, 0), (-1, 1), FactorialValues(), ConstantRule(Fraction(1)))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    document = json.loads(out.getvalue()) if out.getvalue() else None
    error = json.loads(err.getvalue().splitlines()[-1]) if code != 0 and err.getvalue() else None
    return code, document, error


class TestCommands(unittest.TestCase):
    def test_cone_dual(self):
        code, document, _ = run("cone", "dual", "--in", '{"dim": 2, "generators": [[0, 1], [1, 0], [-1, 1]]}')
        self.assertEqual(code, 0)
        self.assertEqual(document, {"dim": 2, "generators": [[0, 1], [1, 1]]})

    def test_cone_check(self):
        code, document, _ = run("cone", "check", "--in", '{"dim": 2, "generators": [[1, 0], [-1, 0], [0, 1]]}')
        self.assertEqual(code, 0)
        self.assertFalse(document["strongly_convex"])

    def test_order_compare(self):
        order = '{"vectors": [["1", "1"], ["1", "0"]]}'
        code, document, _ = run("order", "compare", "--order", order, "--alpha", "1,0", "--beta", "0,1")
        self.assertEqual((code, document), (0, {"comparison": "Greater"}))

    def test_support_slab(self):
        support = json.dumps(SupportSpec(dim=2, rays=(Ray((0, 0), (-1, 1), SQUARES),)).to_json())
        code, document, _ = run("support", "slab", "--support", support, "--omega", "1,2", "--level", "100")
        self.assertEqual(code, 0)
        self.assertEqual(document, {"kind": "Finite", "bound": 11, "exact": True})

    def test_dfinite_ode(self):
        code, document, _ = run("dfinite", "ode", "--q", '[["-1", "-1"], [], ["1"]]')
        self.assertEqual((code, document), (0, [["-1"], ["2", "2"]]))

    def test_dfinite_gapconst(self):
        q = '[["-1", "-1"], [], ["1"]]'
        code, document, _ = run("dfinite", "gapconst", "--q", q, "--y0", "1", "--omega", "2,1", "--v", "1,-1")
        self.assertEqual(code, 0)
        self.assertEqual(document, {"N": 1, "r": 1, "run": 2, "max_gap": 4, "C": "4"})


class TestChecks(unittest.TestCase):
    def setUp(self):
        self.directory = os.path.abspath("cli_output")
        os.makedirs(self.directory, exist_ok=True)

    def tearDown(self):
        shutil.rmtree(self.directory, ignore_errors=True)

    def test_gap(self):
        support = json.dumps(SQUARES_SUPPORT.to_json())
        code, document, _ = run("check", "gap", "--support", support, "--omega", "1,2")
        self.assertEqual(code, 0)
        self.assertEqual(document["verdict"], "NotAlgebraicGap")
        self.assertEqual(document["conclusion_field"], "K[[x]]")
        code, documents, _ = run("--workers", "2", "check", "gap", "--support", support, support, "--omega", "1,2")
        self.assertEqual(code, 0)
        self.assertEqual(documents, [document, document])

    def test_liouville(self):
        ray = json.dumps(FACTORIAL_RAY.to_json())
        code, document, _ = run("check", "liouville", "--ray", ray, "--omega", "1,2")
        self.assertEqual(code, 0)
        self.assertEqual(document["verdict"], "NotAlgebraicLiouville")
        self.assertEqual([row["ratio"] for row in document["witness"]["rows"]], ["2", "3", "4"])

    def test_dioph_and_replay(self):
        out = os.path.join(self.directory, "dioph.json")
        ray = json.dumps(SQRT_RAY.to_json())
        code, document, _ = run("check", "dioph", "--ray", ray, "--omega", "2,1", "--box", "4", "--out", out)
        self.assertEqual(code, 0)
        self.assertEqual(document["verdict"], "DiophantineA1Holds")
        self.assertEqual(document["witness"]["b"], "1")
        code, replay, _ = run("certificate", "replay", "--in", out)
        self.assertEqual((code, replay), (0, {"identical": True}))
        with open(out) as f:
            tampered = json.load(f)
        tampered["witness"]["b"] = "0"
        code, replay, _ = run("certificate", "replay", "--in", json.dumps(tampered))
        self.assertEqual((code, replay), (2, {"identical": False}))

    def test_domain_error(self):
        support = json.dumps(SupportSpec(dim=2, tails=(Tail((0, 0), first_orthant(2)),)).to_json())
        code, document, error = run("check", "gap", "--support", support, "--omega", "1,1")
        self.assertEqual(code, 2)
        self.assertIsNone(document)
        self.assertEqual(error["error"], "PreconditionLocalized")

    def test_usage_errors(self):
        code, _, error = run("cone", "spin")
        self.assertEqual(code, 1)
        self.assertEqual(error["error"], "UsageError")
        code, _, error = run("cone", "dual", "--in", "{not json")
        self.assertEqual((code, error["error"]), (1, "UsageError"))
        code, _, error = run("--log-level", "chatty", "cone", "dual", "--in", '{"dim": 1, "generators": [[1]]}')
        self.assertEqual((code, error["error"]), (1, "UsageError"))

    def test_plot_csv(self):
        prefix = os.path.join(self.directory, "squares")
        support = json.dumps(SQUARES_SUPPORT.to_json())
        code, document, _ = run("plot", "support", "--support", support, "--omega", "1,1", "--window", "10", "--out", prefix)
        self.assertEqual(code, 0)
        self.assertEqual(document["points"], 4)
        self.assertEqual(document["boundary"], ["0"])
        with open(prefix + ".csv") as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], ["u1", "u2", "omega_value"])
        self.assertEqual(len(rows), 5)
        self.assertTrue(all(row[2] == "0" for row in rows[1:]))

    @unittest.skipIf(skip_matplotlib_test, "matplotlib is not installed, so the plot tests are skipped.")
    def test_plot_svg(self):
        prefix = os.path.join(self.directory, "squares")
        support = json.dumps(SQUARES_SUPPORT.to_json())
        code, document, _ = run("plot", "support", "--support", support, "--omega", "1,1", "--out", prefix)
        self.assertEqual(code, 0)
        self.assertEqual(document["svg"], prefix + ".svg")
        self.assertTrue(os.path.exists(prefix + ".svg"))
