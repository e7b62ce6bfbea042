import csv
import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cli.runconfig import RunConfig, parse_eps_list
from cli.writers import ArtifactWriter
from compactify.charts import Chart, compactify
from polyfield.problem import limit_field, worked_example_spec

WORKED_EXAMPLE = settings.BASE_DIR / "specs" / "worked_example.json"


def read_csv(path: Path) -> list[dict]:
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def call(self, command, **options):
        stdout = StringIO()
        options.setdefault("spec", str(WORKED_EXAMPLE))
        call_command(command, out=str(self.out), stdout=stdout, stderr=StringIO(), **options)
        return stdout.getvalue()

    def write_spec(self, data) -> str:
        path = self.out / "problem.json"
        path.write_text(json.dumps(data))
        return str(path)


class RunConfigTest(SimpleTestCase):
    def test_defaults_come_from_settings(self):
        cfg = RunConfig.from_options("spectrum", {})
        self.assertEqual(cfg.n, settings.POINCARE["N"])
        self.assertEqual(cfg.eps_list, settings.POINCARE["EPS_LIST"])
        self.assertFalse(cfg.force)

    def test_flags_override_defaults(self):
        cfg = RunConfig.from_options("spectrum", {"n": 128, "eps_list": "1e-1,1e-3"})
        self.assertEqual(cfg.n, 128)
        self.assertEqual(cfg.eps_list, [1e-1, 1e-3])

    def test_bad_eps_list(self):
        with self.assertRaises(CommandError) as raised:
            parse_eps_list("1e-2,abc")
        self.assertEqual(raised.exception.returncode, 2)
        with self.assertRaises(CommandError):
            parse_eps_list("0,1e-2")

    def test_bad_radius(self):
        with self.assertRaises(CommandError) as raised:
            RunConfig.from_options("converge", {"radius": "2"})
        self.assertEqual(raised.exception.returncode, 2)


class CompactifyCommandTest(CommandTestCase):
    def test_worked_example_listing(self):
        self.call("compactify")
        listing = (self.out / "charts.txt").read_text()
        cf = compactify(limit_field(worked_example_spec()))
        fx, fy = cf[Chart.U2].format()
        self.assertIn(f"U2: x' = {fx}", listing)
        self.assertIn(f"U2: y' = {fy}", listing)
        charts = json.loads((self.out / "charts.json").read_text())
        self.assertEqual(charts["d"], 2)
        self.assertEqual(sorted(charts["charts"]), [chart.value for chart in Chart])

    def test_missing_beta_names_the_field(self):
        spec = self.write_spec({"lambda": 1.0, "f1": [0, 0, -1]})
        with self.assertRaises(CommandError) as raised:
            self.call("compactify", spec=spec)
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn("beta", str(raised.exception))

    def test_malformed_json(self):
        path = self.out / "broken.json"
        path.write_text("{lambda: 1")
        with self.assertRaises(CommandError) as raised:
            self.call("compactify", spec=str(path))
        self.assertEqual(raised.exception.returncode, 2)

    def test_linear_problem_needs_relaxed_flag(self):
        spec = self.write_spec({"lambda": 1.0, "beta": 2.0})
        with self.assertRaises(CommandError) as raised:
            self.call("compactify", spec=spec)
        self.assertEqual(raised.exception.returncode, 2)

        self.call("compactify", spec=spec, relaxed_degrees=True)
        charts = json.loads((self.out / "charts.json").read_text())
        self.assertEqual(charts["d"], 1)
        self.assertEqual(charts["charts"]["U3"]["Fx"], {"1,0": -1.0})
        self.assertEqual(charts["charts"]["U3"]["Fy"], {"0,1": -2.0})

    def test_existing_files_need_force(self):
        self.call("compactify")
        with self.assertRaises(CommandError) as raised:
            self.call("compactify")
        self.assertEqual(raised.exception.returncode, 2)
        self.call("compactify", force=True)

    def test_existing_later_file_blocks_every_write(self):
        (self.out / "charts.txt").write_text("kept\n")
        with self.assertRaises(CommandError) as raised:
            self.call("compactify")
        self.assertEqual(raised.exception.returncode, 2)
        self.assertFalse((self.out / "charts.json").exists())
        self.assertEqual((self.out / "charts.txt").read_text(), "kept\n")


class EquilibriaCommandTest(CommandTestCase):
    def test_worked_example(self):
        output = self.call("equilibria")
        self.assertIn("2 finite and 2 infinite equilibria", output)
        rows = read_csv(self.out / "equilibria.csv")
        self.assertEqual(
            sorted(row["classification"] for row in rows),
            ["Saddle", "StableFocus", "StableNode", "UnstableNode"],
        )


class SpectrumCommandTest(CommandTestCase):
    def test_one_result_per_eps(self):
        self.call("spectrum", n=64, eps_list="1e-1,1e-2")
        results = json.loads((self.out / "spectrum.json").read_text())
        self.assertEqual([result["eps"] for result in results], [0.1, 0.01])
        for result in results:
            self.assertAlmostEqual(result["lambda2"], 1.0, delta=1e-10)
        self.assertEqual(len(read_csv(self.out / "phi_0.01.csv")), 64)


class SimulateCommandTest(CommandTestCase):
    def test_blowup_is_a_valid_outcome(self):
        output = self.call("simulate", n=64, eps_list="1e-2", T=5.0, v0=10.0)
        rows = read_csv(self.out / "trajectory_0.01.csv")
        self.assertEqual(rows[-1]["blowup"], "1")
        self.assertIn("blow-up", output)

    def test_snapshots(self):
        self.call(
            "simulate", n=64, eps_list="1e-1", T=0.1, dt=1e-2,
            sample_stride=1, snapshot_stride=5,
        )
        self.assertEqual(len(read_csv(self.out / "trajectory_0.1.csv")), 11)
        self.assertEqual(len(read_csv(self.out / "snapshots_0.1.csv")), 3 * 64)


class ConvergeCommandTest(CommandTestCase):
    def test_single_eps_gives_one_row(self):
        self.call("converge", n=64, grid_n=32, eps_list="1e-2")
        rows = read_csv(self.out / "convergence.csv")
        self.assertEqual(len(rows), 1)
        self.assertLess(float(rows[0]["c1_distance"]), 1e-7)


class PortraitCommandTest(CommandTestCase):
    def test_portrait_files(self):
        self.call("portrait", T=10.0)
        document = (self.out / "portrait.svg").read_text()
        self.assertEqual(document.count('class="equilibrium '), 4)
        report = json.loads((self.out / "morse_smale.json").read_text())
        self.assertTrue(report["all_hyperbolic"])
        self.assertFalse(report["saddle_connection_suspected"])
        rows = read_csv(self.out / "trajectories.csv")
        self.assertEqual(set(rows[0]), {"trajectory", "p", "q", "chart_id"})


class ReproduceCommandTest(CommandTestCase):
    def test_shipped_spec_reproduces(self):
        output = self.call("reproduce")
        self.assertNotIn("FAIL", output)
        report = json.loads((self.out / "reproduce.json").read_text())
        self.assertTrue(report["passed"])
        self.assertTrue((self.out / "portrait.svg").exists())

    def test_other_problem_fails_with_assertion_code(self):
        spec = self.write_spec(
            {
                "lambda": 2.0,
                "beta": 1.0,
                "f1": [0, 0, -1],
                "g2": [0, 0, 1],
                "relaxed_degrees": True,
            }
        )
        with self.assertRaises(CommandError) as raised:
            self.call("reproduce", spec=spec)
        self.assertEqual(raised.exception.returncode, 4)


class ArtifactWriterTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_nothing_is_written_before_commit(self):
        writer = ArtifactWriter(self.out)
        path = writer.csv("rows.csv", ("a", "b"), [{"a": 1, "b": 2}])
        self.assertFalse(path.exists())
        self.assertEqual(writer.commit(), [path])
        self.assertEqual(path.read_text(), "a,b\n1,2\n")

    def test_one_existing_target_blocks_all(self):
        (self.out / "second.txt").write_text("old")
        writer = ArtifactWriter(self.out)
        writer.text("first.txt", "new")
        writer.text("second.txt", "new")
        with self.assertRaises(CommandError) as raised:
            writer.commit()
        self.assertEqual(raised.exception.returncode, 2)
        self.assertFalse((self.out / "first.txt").exists())
        self.assertEqual((self.out / "second.txt").read_text(), "old")

        forced = ArtifactWriter(self.out, force=True)
        forced.text("first.txt", "new")
        forced.text("second.txt", "new")
        forced.commit()
        self.assertEqual((self.out / "second.txt").read_text(), "new")
