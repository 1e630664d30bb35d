import unittest
from fractions import Fraction

from src.entity.exceptions import InvalidProfileError, InvalidThresholdError, RosterMismatchError
from src.entity.models import Profile
from src.repository.fixtures import example
from src.services.core import (best, best_assignment, check_tau, concat, first_place_scores, is_feasible, is_generic,
                               prefers, rank_of, replace_ballot, restrict, supporter_scores, truncate)


class TestRepresentation(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile

    def test_best(self):
        self.assertEqual(best(("c", "b", "a"), frozenset("db")), "b")
        self.assertIsNone(best(("a",), frozenset("bd")))
        self.assertIsNone(best((), frozenset("abcd")))

    def test_rank_of(self):
        self.assertEqual(rank_of(("c", "b", "a"), "a"), 3)
        self.assertIsNone(rank_of(("c",), "a"))
        self.assertIsNone(rank_of(("c",), None))

    def test_prefers_unranked(self):
        self.assertTrue(prefers(("a", "b"), "b", "c"))
        self.assertFalse(prefers(("a",), "c", "d"))
        self.assertFalse(prefers(("a",), None, "a"))

    def test_supporter_scores(self):
        scores = supporter_scores(self.profile, frozenset("db"))
        self.assertEqual(scores, {"b": Fraction(9), "d": Fraction(6)})

    def test_first_place_scores(self):
        self.assertEqual(first_place_scores(self.profile), {"a": 4, "b": 3, "c": 2, "d": 6})

    def test_best_assignment(self):
        assignment = best_assignment(self.profile, {"d", "b"})
        self.assertEqual(assignment.representative, ("b", "b", "b", "d", "d"))
        self.assertEqual(assignment.shares, {"b": Fraction(3, 5), "d": Fraction(2, 5)})
        self.assertEqual(assignment.unrepresented, 0)

    def test_unknown_party_in_outcome(self):
        with self.assertRaises(RosterMismatchError):
            best_assignment(self.profile, {"z"})


class TestFeasibility(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile

    def test_feasible(self):
        self.assertTrue(is_feasible(self.profile, {"d", "a"}, Fraction(5)))
        self.assertTrue(is_feasible(self.profile, set(), Fraction(5)))

    def test_infeasible(self):
        self.assertFalse(is_feasible(self.profile, {"d", "a", "b"}, Fraction(5)))

    def test_check_tau(self):
        self.assertEqual(check_tau(self.profile, 15), Fraction(15))
        with self.assertRaises(InvalidThresholdError):
            check_tau(self.profile, 16)
        with self.assertRaises(InvalidThresholdError):
            check_tau(self.profile, -1)


class TestTransformations(unittest.TestCase):

    def setUp(self) -> None:
        self.profile = example("three_blocks").profile

    def test_restrict(self):
        restricted = restrict(self.profile, {"d", "b"})
        self.assertEqual(restricted.parties, ("b", "d"))
        self.assertEqual([(b.weight, b.ranking) for b in restricted.ballots],
                         [(4, ("b",)), (3, ("b",)), (2, ("b",)), (2, ("d",)), (4, ("d", "b"))])

    def test_truncate_to_first_choice(self):
        truncated = truncate(self.profile, 1)
        self.assertEqual([b.ranking for b in truncated.ballots], [("a",), ("b",), ("c",), ("d",), ("d",)])

    def test_truncate_rejects_zero(self):
        with self.assertRaises(InvalidProfileError):
            truncate(self.profile, 0)

    def test_concat(self):
        combined = concat(self.profile, self.profile)
        self.assertEqual(combined.total_weight, 30)
        self.assertEqual(len(combined.ballots), 10)

    def test_concat_roster_mismatch(self):
        with self.assertRaises(RosterMismatchError):
            concat(self.profile, Profile.build("abc"))

    def test_replace_ballot_splits_weight(self):
        replaced = replace_ballot(self.profile, 0, ("b",))
        self.assertEqual([(b.weight, b.ranking) for b in replaced.ballots[:2]], [(1, ("b",)), (3, ("a", "b", "c"))])
        self.assertEqual(replaced.total_weight, self.profile.total_weight)

    def test_replace_light_ballot(self):
        profile = Profile.build("ab", [(Fraction(1, 2), "a")])
        replaced = replace_ballot(profile, 0, ("b",))
        self.assertEqual([(b.weight, b.ranking) for b in replaced.ballots], [(Fraction(1, 2), ("b",))])


class TestGeneric(unittest.TestCase):

    def test_three_blocks_not_generic(self):
        # restricted to {a, d} both parties have six supporters
        self.assertFalse(is_generic(example("three_blocks").profile))

    def test_generic(self):
        self.assertTrue(is_generic(Profile.build("abc", [(3, "a"), (2, "b"), (1, "c")])))


if __name__ == '__main__':
    unittest.main()
