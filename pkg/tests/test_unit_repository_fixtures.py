import unittest

from src.entity.models import AxiomId, RuleId
from src.repository.fixtures import COUNTEREXAMPLES, EXAMPLES, counterexample, example, stored_counterexamples
from src.repository.profiles import parse_profile_document, resolve_tau


class TestFixtures(unittest.TestCase):

    def test_examples_carry_threshold(self):
        for name in EXAMPLES:
            with self.subTest(name=name):
                self.assertIsNotNone(example(name).tau)

    def test_documents_parse(self):
        for fixture in COUNTEREXAMPLES:
            with self.subTest(fixture=fixture.name):
                document = parse_profile_document(fixture.document)
                self.assertLessEqual(resolve_tau(document), document.profile.total_weight)

    def test_names_unique(self):
        names = [fixture.name for fixture in COUNTEREXAMPLES]
        self.assertEqual(len(names), len(set(names)))

    def test_lookup(self):
        self.assertEqual(counterexample(RuleId.STV, AxiomId.MONOTONICITY).name, "stv_monotonicity")
        self.assertIsNone(counterexample(RuleId.DO, AxiomId.DIRECT_WINNERS))
        self.assertTrue(all(f.rule is RuleId.GP for f in stored_counterexamples(rule="gp")))


if __name__ == '__main__':
    unittest.main()
