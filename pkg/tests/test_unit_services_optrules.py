import unittest
from fractions import Fraction

import numpy as np

from src.entity.exceptions import GuardExceededError
from src.entity.models import Profile, RuleId
from src.repository.fixtures import example
from src.schemas.axiom import SearchBounds
from src.services.core import is_feasible
from src.services.optrules import brute_force, coverage, enumerate_feasible, indicator, run_maxp, run_maxr
from src.services.search import random_profile, random_tau


class TestThreeBlocks(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile
        self.tau = Fraction(5)

    def test_maxp(self):
        result = run_maxp(self.profile, self.tau)
        self.assertEqual(result.outcome, {"d", "a"})
        self.assertEqual(result.objective[0], 10)

    def test_maxr(self):
        result = run_maxr(self.profile, self.tau)
        self.assertEqual(result.outcome, {"d", "b"})
        self.assertEqual(result.objective, (Fraction(15),))

    def test_maxr_tie_goes_to_priority(self):
        # {c, d} represents everybody as well, b comes before c
        self.assertEqual(coverage(self.profile, frozenset("cd"))[-1], 15)
        self.assertGreater(indicator(self.profile.parties, frozenset("bd")),
                           indicator(self.profile.parties, frozenset("cd")))

    def test_enumerate_feasible(self):
        feasible = enumerate_feasible(self.profile, self.tau)
        for outcome in ({"d"}, {"d", "a"}, {"d", "b"}, set()):
            self.assertIn(frozenset(outcome), feasible)
        self.assertNotIn(frozenset("dab"), feasible)
        self.assertTrue(all(is_feasible(self.profile, outcome, self.tau) for outcome in feasible))

    def test_guard(self):
        with self.assertRaises(GuardExceededError):
            run_maxp(Profile.build([f"p{index}" for index in range(17)]), Fraction(0))


class TestAgainstEnumeration(unittest.TestCase):

    def test_random_profiles(self):
        bounds = SearchBounds(max_parties=6, max_voters=8)
        for trial in range(60):
            rng = np.random.default_rng([7, trial])
            profile = random_profile(rng, bounds)
            tau = random_tau(rng, len(profile.ballots), bounds)
            with self.subTest(trial=trial):
                self.assertEqual(run_maxp(profile, tau).outcome, brute_force(profile, tau, RuleId.MAXP))
                self.assertEqual(run_maxr(profile, tau).outcome, brute_force(profile, tau, RuleId.MAXR))

    def test_tau_zero_selects_everything(self):
        profile = Profile.build("abc", [(1, "ab"), (2, "c")])
        self.assertEqual(run_maxr(profile, Fraction(0)).outcome, {"a", "b", "c"})
        self.assertEqual(run_maxp(profile, Fraction(0)).outcome, {"a", "b", "c"})


if __name__ == '__main__':
    unittest.main()
