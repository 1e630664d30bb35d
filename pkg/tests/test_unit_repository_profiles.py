import unittest
from fractions import Fraction

from src.entity.exceptions import InvalidProfileError, InvalidThresholdError
from src.entity.models import Threshold
from src.repository.fixtures import THREE_BLOCKS
from src.repository.profiles import parse_profile, parse_profile_document, resolve_tau, write_profile


class TestParseProfile(unittest.TestCase):

    def test_headers(self):
        document = parse_profile_document(THREE_BLOCKS)
        self.assertEqual(document.profile.parties, ("a", "b", "c", "d"))
        self.assertEqual(document.tau, Threshold(value=5))
        self.assertEqual(document.profile.total_weight, 15)

    def test_roster_from_rankings(self):
        profile = parse_profile("2: b>a\nc\n")
        self.assertEqual(profile.parties, ("b", "a", "c"))
        self.assertEqual([(b.weight, b.ranking) for b in profile.ballots], [(2, ("b", "a")), (1, ("c",))])

    def test_comments_and_empty_ranking(self):
        profile = parse_profile("# comment\n#! parties: a,b\n\n3:\n1/2: a\n")
        self.assertEqual([(b.weight, b.ranking) for b in profile.ballots], [(3, ()), (Fraction(1, 2), ("a",))])

    def test_percent_header(self):
        document = parse_profile_document("#! tau: 20%\n4: a\n1: b\n")
        self.assertEqual(resolve_tau(document), 1)

    def test_unknown_party(self):
        with self.assertRaises(InvalidProfileError) as error:
            parse_profile("#! parties: a\n1: a\n1: b\n")
        self.assertEqual(error.exception.line, 3)

    def test_duplicate_party(self):
        with self.assertRaises(InvalidProfileError) as error:
            parse_profile("1: a>a\n")
        self.assertEqual((error.exception.line, error.exception.column), (1, 6))

    def test_malformed_weight(self):
        with self.assertRaises(InvalidProfileError) as error:
            parse_profile("x: a\n")
        self.assertEqual((error.exception.line, error.exception.column), (1, 1))

    def test_negative_weight(self):
        with self.assertRaises(InvalidProfileError):
            parse_profile("-1: a\n")

    def test_malformed_line(self):
        with self.assertRaises(InvalidProfileError):
            parse_profile("1: a>>b\n")

    def test_malformed_header(self):
        with self.assertRaises(InvalidProfileError):
            parse_profile("#! seats: 3\n")
        with self.assertRaises(InvalidProfileError):
            parse_profile("#! tau: many\n")
        with self.assertRaises(InvalidProfileError):
            parse_profile("#! parties: a,a\n")


class TestThreshold(unittest.TestCase):

    def setUp(self) -> None:
        self.document = parse_profile_document(THREE_BLOCKS)

    def test_override(self):
        self.assertEqual(resolve_tau(self.document, "20%"), 3)
        self.assertEqual(resolve_tau(self.document, "7/2"), Fraction(7, 2))
        self.assertEqual(resolve_tau(self.document), 5)

    def test_missing(self):
        with self.assertRaises(InvalidThresholdError):
            resolve_tau(parse_profile_document("1: a\n"))

    def test_malformed(self):
        with self.assertRaises(InvalidThresholdError):
            resolve_tau(self.document, "abc")
        with self.assertRaises(InvalidThresholdError):
            resolve_tau(self.document, "-1")


class TestWriteProfile(unittest.TestCase):

    def test_written_document_reads_back(self):
        document = parse_profile_document("#! parties: a,b,c\n5/2: b>a\n1: c\n2:\n")
        text = write_profile(document.profile, Threshold.parse("10%"))
        self.assertEqual(text, "#! parties: a,b,c\n#! tau: 10%\n5/2: b>a\n1: c\n2:\n")
        self.assertEqual(parse_profile_document(text).profile, document.profile)


if __name__ == '__main__':
    unittest.main()
