import datetime
import unittest
from fractions import Fraction

from src.entity.exceptions import SurveyFormatError
from src.repository.surveys import (completed_before, convert_export, parse_official_results, parse_survey,
                                    write_survey)
from src.schemas.experiment import ColumnMapping

HEADER = "respondent_id,intention,two_vote,full_ranking,completed_at\n"
SURVEY = (HEADER +
          "1,a,a,a;b,2024-06-01\n"
          "2,a,c;a,c;a;b,2024-06-02\n"
          "3,b,b,b;a,2024-06-03\n"
          "4,,c,c,\n")
ROSTER = ["a", "b", "c"]


class TestParseSurvey(unittest.TestCase):

    def test_rows(self):
        rows = parse_survey(SURVEY, ROSTER)
        self.assertEqual([row.respondent_id for row in rows], ["1", "2", "3", "4"])
        self.assertEqual(rows[1].two_vote, ("c", "a"))
        self.assertEqual(rows[1].full_ranking, ("c", "a", "b"))
        self.assertIsNone(rows[3].intention)
        self.assertIsNone(rows[3].completed_at)
        self.assertEqual(rows[0].completed_at, datetime.date(2024, 6, 1))

    def test_without_dates(self):
        rows = parse_survey("respondent_id,intention,two_vote,full_ranking\n1,a,a,a\n", ROSTER)
        self.assertIsNone(rows[0].completed_at)

    def test_unknown_party(self):
        with self.assertRaises(SurveyFormatError) as error:
            parse_survey(HEADER + "1,a,a,a,\n2,a,a,a;z,\n", ROSTER)
        self.assertEqual(error.exception.row, 2)

    def test_unknown_intention(self):
        with self.assertRaises(SurveyFormatError):
            parse_survey(HEADER + "1,z,a,a,\n", ROSTER)

    def test_two_vote_too_long(self):
        with self.assertRaises(SurveyFormatError):
            parse_survey(HEADER + "1,a,a;b;c,a,\n", ROSTER)

    def test_duplicate_rank(self):
        with self.assertRaises(SurveyFormatError):
            parse_survey(HEADER + "1,a,a,a;b;a,\n", ROSTER)

    def test_bad_date(self):
        with self.assertRaises(SurveyFormatError):
            parse_survey(HEADER + "1,a,a,a,yesterday\n", ROSTER)

    def test_missing_column(self):
        with self.assertRaises(SurveyFormatError):
            parse_survey("respondent_id,intention\n1,a\n", ROSTER)

    def test_completed_before(self):
        rows = completed_before(parse_survey(SURVEY, ROSTER), datetime.date(2024, 6, 3))
        self.assertEqual([row.respondent_id for row in rows], ["1", "2", "4"])

    def test_written_survey_reads_back(self):
        rows = parse_survey(SURVEY, ROSTER)
        self.assertEqual(parse_survey(write_survey(rows), ROSTER), rows)


class TestOfficialResults(unittest.TestCase):

    def test_votes(self):
        shares = parse_official_results("party,votes\na,60\nb,38\nc,2\n")
        self.assertEqual(shares, {"a": Fraction(3, 5), "b": Fraction(19, 50), "c": Fraction(1, 50)})
        self.assertEqual(list(shares), ROSTER)

    def test_shares(self):
        self.assertEqual(parse_official_results("party,share\na,0.5\nb,0.25\n"),
                         {"a": Fraction(1, 2), "b": Fraction(1, 4)})

    def test_malformed(self):
        for text in ("party,count\na,1\n", "party,votes\na,many\n", "party,share\na,1.5\n", "party,votes\na,0\n"):
            with self.subTest(text=text):
                with self.assertRaises(SurveyFormatError):
                    parse_official_results(text)


class TestConvertExport(unittest.TestCase):

    def test_columns_and_labels(self):
        export = ("id,vote,choice1,choice2,ranking,date\n"
                  "r1,Green,Green,Red,Green|Red|Blue,2024-06-01T10:00:00\n"
                  "r2,,Blue,,Blue,2024-06-02T11:00:00\n")
        mapping = ColumnMapping(respondent_id="id", intention="vote", two_vote=["choice1", "choice2"],
                                full_ranking="ranking", completed_at="date", separator="|",
                                parties={"Green": "g", "Red": "r", "Blue": "b"})
        rows = parse_survey(convert_export(export, mapping), ["g", "r", "b"])
        self.assertEqual(rows[0].intention, "g")
        self.assertEqual(rows[0].two_vote, ("g", "r"))
        self.assertEqual(rows[0].full_ranking, ("g", "r", "b"))
        self.assertEqual(rows[0].completed_at, datetime.date(2024, 6, 1))
        self.assertIsNone(rows[1].intention)
        self.assertEqual(rows[1].two_vote, ("b",))

    def test_missing_column(self):
        mapping = ColumnMapping(respondent_id="id", intention="vote", two_vote="two", full_ranking="full")
        with self.assertRaises(SurveyFormatError):
            convert_export("id,vote\n1,a\n", mapping)


if __name__ == '__main__':
    unittest.main()
