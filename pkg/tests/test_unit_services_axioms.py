import unittest
from fractions import Fraction

from src.entity.exceptions import UnsupportedError
from src.entity.models import AxiomId, PartyStatus, RuleId
from src.repository.fixtures import (A_APART, B_APART, CLONED, EMPTY_UNDER_DO, LONE_MANIPULATOR, SOLID_PAIR,
                                     STRANDED, STV_LIFT, STV_RISKY, example, stored_counterexamples)
from src.repository.profiles import parse_profile_document
from src.services.axioms import (Misreports, at_most_one_risky, characterise_do, check, check_direct_winners,
                                 check_local_stability, check_local_stability_impossible, check_monotonicity,
                                 check_reinforcement, check_representative_sp,
                                 check_set_maximality, check_solid_coalitions, check_unrepresented,
                                 check_weak_efficiency, classify_voter, coalition_insurance_fixture, find_clones,
                                 replay)
from src.services.search import replay_fixture


def load(document: str):
    return parse_profile_document(document).profile


class TestStoredCounterexamples(unittest.TestCase):

    def test_every_fixture_reproduces(self):
        for fixture in stored_counterexamples():
            with self.subTest(fixture=fixture.name):
                violation = replay_fixture(fixture)
                self.assertIsNotNone(violation)
                self.assertEqual(violation.axiom, fixture.axiom)

    def test_replay_reproduces_witness(self):
        for fixture in stored_counterexamples():
            with self.subTest(fixture=fixture.name):
                self.assertIsNotNone(replay(replay_fixture(fixture)))

    def test_filter(self):
        names = [fixture.name for fixture in stored_counterexamples(RuleId.DO, AxiomId.IDLP)]
        self.assertEqual(names, ["do_idlp"])


class TestEfficiency(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = load(EMPTY_UNDER_DO)

    def test_do_leaves_room(self):
        violation = check_set_maximality(RuleId.DO, self.profile, Fraction(3))
        self.assertEqual(violation.witness.party, "c")
        self.assertEqual(violation.witness.outcome, frozenset())
        self.assertIsNotNone(check_weak_efficiency(RuleId.DO, self.profile, Fraction(3)))

    def test_gp_fills(self):
        self.assertIsNone(check_set_maximality(RuleId.GP, self.profile, Fraction(3)))
        self.assertIsNone(check_weak_efficiency(RuleId.GP, self.profile, Fraction(3)))


class TestRepresentation(unittest.TestCase):

    def test_solid_pair(self):
        profile = load(SOLID_PAIR)
        violation = check_solid_coalitions(RuleId.DO, profile, Fraction(5))
        self.assertEqual(violation.witness.coalition, ("b", "c"))
        self.assertEqual(violation.witness.before, 5)
        self.assertIsNone(check_solid_coalitions(RuleId.STV, profile, Fraction(5)))

    def test_direct_winners(self):
        profile = example("three_blocks").profile
        for rule in (RuleId.DO, RuleId.STV, RuleId.GP):
            with self.subTest(rule=rule):
                self.assertIsNone(check_direct_winners(rule, profile, Fraction(5)))

    def test_unrepresented(self):
        profile = load(STRANDED)
        violation = check_unrepresented(profile, Fraction(3), {"a"})
        self.assertEqual(violation.witness.party, "c")
        self.assertEqual(violation.rule, "outcome")
        self.assertIsNone(check_unrepresented(profile, Fraction(3), {"a", "c"}))

    def test_local_stability(self):
        profile = load(STRANDED)
        self.assertIsNotNone(check_local_stability(profile, Fraction(3), {"a"}))
        self.assertIsNone(check_local_stability(profile, Fraction(3), {"a", "c"}))

    def test_local_stability_impossible(self):
        for voters in range(3, 7):
            for tau in range(2, voters):
                with self.subTest(voters=voters, tau=tau):
                    self.assertTrue(check_local_stability_impossible(voters, tau))


class TestClones(unittest.TestCase):

    def test_find_clones(self):
        self.assertEqual(find_clones(load(CLONED)), {("c", "d")})

    def test_not_clones(self):
        with self.assertRaises(UnsupportedError):
            check(AxiomId.CLONE_INDEPENDENCE, RuleId.DO, load(CLONED), Fraction(7), pair=("a", "c"))


class TestStrategyproofness(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = load(LONE_MANIPULATOR)

    def test_statuses(self):
        self.assertEqual(classify_voter(RuleId.DO, self.profile, Fraction(2), 0),
                         {"a": PartyStatus.RISKY, "b": PartyStatus.OUT, "c": PartyStatus.OUT})
        self.assertTrue(at_most_one_risky(RuleId.DO, self.profile, Fraction(2)))

    def test_voter_gains_representative(self):
        violation = check_representative_sp(RuleId.DO, self.profile, Fraction(2), 0)
        self.assertEqual(violation.witness.report, ("a",))
        self.assertEqual(violation.witness.outcome_prime, {"a"})

    def test_unknown_voter(self):
        with self.assertRaises(UnsupportedError):
            Misreports(RuleId.DO, self.profile, Fraction(2), 5)

    def test_coalition_insurance(self):
        violation = coalition_insurance_fixture()
        self.assertEqual(violation.witness.outcome, {"a", "b", "c"})
        self.assertEqual(violation.witness.outcome_prime, {"a", "b", "c", "d"})
        self.assertEqual(violation.witness.before, Fraction(5, 11))
        self.assertEqual(violation.witness.after, Fraction(7, 13))


class TestStvManipulation(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = load(STV_RISKY)
        self.tau = Fraction(8)

    def test_one_risky_party_per_voter(self):
        self.assertTrue(at_most_one_risky(RuleId.STV, self.profile, self.tau))
        self.assertEqual(classify_voter(RuleId.STV, self.profile, self.tau, 2),
                         {"r": PartyStatus.SAFE, "x": PartyStatus.RISKY, "p": PartyStatus.OUT, "q": PartyStatus.OUT})

    def test_compromise_report(self):
        violation = check(AxiomId.REP_SP_ONE_RISKY, RuleId.STV, self.profile, self.tau, voter=2)
        self.assertEqual(violation.witness.report, ("x",))
        self.assertEqual(violation.witness.outcome, {"r"})
        self.assertEqual(violation.witness.outcome_prime, {"r", "x"})
        self.assertEqual(violation.witness.party, "x")


class TestReinforcement(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile

    def test_stv_drops_b(self):
        violation = check_reinforcement(RuleId.STV, self.profile, Fraction(5), load(B_APART), Fraction(1))
        self.assertEqual(violation.witness.outcome, {"b", "d"})
        self.assertEqual(violation.witness.outcome_prime, {"a", "c", "d"})
        self.assertEqual(violation.witness.party, "b")

    def test_gp_drops_a(self):
        violation = check_reinforcement(RuleId.GP, self.profile, Fraction(5), load(A_APART), Fraction(1))
        self.assertEqual(violation.witness.outcome, {"a", "d"})
        self.assertEqual(violation.witness.outcome_prime, {"b", "c", "d"})
        self.assertEqual(violation.witness.party, "a")

    def test_do_keeps_common_winners(self):
        self.assertIsNone(check_reinforcement(RuleId.DO, self.profile, Fraction(5), load(B_APART), Fraction(1)))


class TestMonotonicity(unittest.TestCase):

    def test_lift_moves_one_unit(self):
        violation = check_monotonicity(RuleId.STV, load(STV_LIFT), Fraction(13), 4, "c")
        lifted = violation.witness.profile_prime.ballots
        self.assertEqual((lifted[4].ranking, lifted[4].weight), (("c", "b"), 1))
        self.assertEqual((lifted[5].ranking, lifted[5].weight), (("b", "c"), 1))
        self.assertEqual(violation.witness.outcome, {"c", "d"})
        self.assertEqual(violation.witness.outcome_prime, {"d"})


class TestCharacterisation(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile

    def test_do_agrees_with_itself(self):
        self.assertIsNone(characterise_do(RuleId.DO, self.profile, Fraction(5)))

    def test_stv_breaks_reinforcement(self):
        violation = characterise_do(RuleId.STV, self.profile, Fraction(5))
        self.assertEqual(violation.axiom, AxiomId.REINFORCEMENT)
        self.assertEqual(violation.witness.party, "b")


class TestDispatch(unittest.TestCase):

    def test_reinforcement_needs_second_profile(self):
        with self.assertRaises(UnsupportedError):
            check(AxiomId.REINFORCEMENT, RuleId.DO, example("three_blocks").profile, Fraction(5))

    def test_do_monotone(self):
        self.assertIsNone(check(AxiomId.MONOTONICITY, RuleId.DO, example("three_blocks").profile, Fraction(5)))

    def test_threshold_grid(self):
        self.assertIsNone(check(AxiomId.THRESHOLD_MONOTONICITY, RuleId.DO, example("three_blocks").profile,
                                Fraction(5)))

    def test_coalition_insurance(self):
        violation = check(AxiomId.COALITION_INSURANCE, RuleId.DO, example("three_blocks").profile, Fraction(5))
        self.assertEqual(violation.axiom, AxiomId.COALITION_INSURANCE)


if __name__ == '__main__':
    unittest.main()
