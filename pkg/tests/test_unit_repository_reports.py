import json
import unittest
from fractions import Fraction
from pathlib import Path
from tempfile import TemporaryDirectory

from src.entity.exceptions import PartySelectionError
from src.entity.models import RuleId
from src.repository.fixtures import example
from src.repository.reports import (ReportFormat, check_report, emit_report, experiment_report, parse_report,
                                    quantity, result_report, violation_entry, write_atomic)
from src.services.apportion import seats_for_result
from src.services.axioms import coalition_insurance_fixture
from src.services.experiments import sweep_truncation
from src.services.registry import run_rule


class TestResultReport(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile
        self.result = run_rule(RuleId.STV, self.profile, 5)
        self.report = result_report(self.result, self.profile.parties,
                                    seats=seats_for_result(self.result, 10))

    def test_content(self):
        self.assertEqual(self.report.command, "compute")
        self.assertEqual(self.report.outcome, ["b", "d"])
        self.assertEqual(self.report.scores["b"].exact, "9")
        self.assertEqual(self.report.shares["d"].exact, "2/5")
        self.assertEqual(self.report.seats, {"b": 6, "d": 4})
        self.assertEqual(self.report.meta["rule"], "stv")
        self.assertEqual([entry["party"] for entry in self.report.trace if entry["action"] == "eliminated"],
                         ["c", "a"])

    def test_structured(self):
        text = emit_report(self.report)
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(json.loads(text)["schema_version"], "1.0")
        self.assertEqual(parse_report(text), self.report)

    def test_flat(self):
        text = emit_report(self.report, ReportFormat.FLAT)
        self.assertEqual(text, "party,score,share,seats\nb,9,3/5,6\nd,6,2/5,4\n")

    def test_malformed(self):
        with self.assertRaises(PartySelectionError):
            parse_report('{"command": "compute", "colour": "red"}')
        with self.assertRaises(PartySelectionError):
            parse_report("not json")


class TestOtherReports(unittest.TestCase):

    def test_quantity(self):
        self.assertEqual(quantity(Fraction(2, 8)).model_dump(), {"exact": "1/4", "approx": 0.25})

    def test_violation_entry(self):
        entry = violation_entry(coalition_insurance_fixture())
        self.assertEqual(entry["axiom"], "coalition_insurance")
        self.assertEqual(entry["outcome_prime"], ["a", "b", "c", "d"])
        self.assertEqual(entry["before"]["exact"], "5/11")
        self.assertEqual(entry["report"], ["d", "c"])
        self.assertTrue(entry["profile"].startswith("#! parties: a,b,c,d\n"))

    def test_check_report(self):
        self.assertEqual(check_report(None).violations, [])
        self.assertEqual(len(check_report(coalition_insurance_fixture()).violations), 1)

    def test_truncation_series(self):
        profile = example("three_blocks").profile
        report = experiment_report(sweep_truncation(profile, RuleId.STV, 5, [1, 2]))
        self.assertEqual(report.command, "experiment truncation")
        self.assertEqual([entry["k"]["exact"] for entry in report.series], ["1", "2"])
        self.assertEqual(report.series[0]["tau"]["exact"], "5")
        flat = emit_report(report, ReportFormat.FLAT)
        self.assertTrue(flat.startswith("k,parties_selected,unrepresented_share,tau\n1,1,"))


class TestWriteAtomic(unittest.TestCase):

    def test_replaces_file(self):
        with TemporaryDirectory() as directory:
            path = Path(directory) / "report.json"
            path.write_text("old", encoding="utf-8")
            write_atomic(path, "new\n")
            self.assertEqual(path.read_text(encoding="utf-8"), "new\n")
            self.assertEqual([item.name for item in Path(directory).iterdir()], ["report.json"])


if __name__ == '__main__':
    unittest.main()
