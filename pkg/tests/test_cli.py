import json

import pytest

from src.cli import main
from src.repository import fixtures


@pytest.fixture()
def manipulator_file(tmp_path):
    path = tmp_path / "manipulator.txt"
    path.write_text(fixtures.LONE_MANIPULATOR, encoding="utf-8")
    return str(path)


def test_compute(three_blocks_file, capsys):
    assert main(["compute", "--rule", "stv", "--profile", three_blocks_file]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "compute"
    assert report["outcome"] == ["b", "d"]


def test_compute_flat(three_blocks_file, capsys):
    assert main(["compute", "--rule", "gp", "--profile", three_blocks_file, "--format", "flat"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "party,score,share,seats"


def test_compute_output_file(three_blocks_file, tmp_path, capsys):
    output = tmp_path / "report.json"
    assert main(["compute", "--rule", "do", "--profile", three_blocks_file, "--output", str(output)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(output.read_text(encoding="utf-8"))["outcome"] == ["d"]


def test_missing_file(tmp_path):
    assert main(["compute", "--rule", "do", "--profile", str(tmp_path / "missing.txt")]) == 2


def test_invalid_profile(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("#! tau: 1\n1: a>a\n", encoding="utf-8")
    assert main(["compute", "--rule", "do", "--profile", str(path)]) == 2


def test_guard(tmp_path):
    path = tmp_path / "wide.txt"
    parties = ",".join(f"p{index}" for index in range(17))
    path.write_text(f"#! parties: {parties}\n#! tau: 1\n1: p0\n", encoding="utf-8")
    assert main(["compute", "--rule", "maxr", "--profile", str(path)]) == 3


def test_axioms_check_violation(manipulator_file, capsys):
    code = main(["axioms", "check", "--axiom", "rep_sp_one_risky", "--rule", "do", "--profile", manipulator_file,
                 "--voter", "0"])
    assert code == 1
    assert json.loads(capsys.readouterr().out)["violations"][0]["report"] == ["a"]


def test_axioms_check_holds(three_blocks_file, capsys):
    code = main(["axioms", "check", "--axiom", "direct_winners", "--rule", "stv", "--profile", three_blocks_file])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["violations"] == []


def test_axioms_search(capsys):
    code = main(["axioms", "search", "--axiom", "direct_winners", "--rule", "do", "--trials", "20",
                 "--max-parties", "3", "--max-voters", "5", "--seed", "4", "--workers", "1"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["meta"]["checked"] == 20
    assert report["violations"] == []


def test_axioms_characterise(capsys):
    code = main(["axioms", "characterise", "--against", "do", "--rule", "do", "--trials", "10", "--seed", "1"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["meta"]["against"] == "do"


def test_sweep(three_blocks_file, capsys):
    code = main(["experiment", "sweep", "--profile", three_blocks_file, "--rule", "do", "--tau-from", "20",
                 "--tau-to", "40", "--steps", "3"])
    assert code == 0
    series = json.loads(capsys.readouterr().out)["series"]
    assert [entry["tau"]["exact"] for entry in series] == ["3", "9/2", "6"]
    assert series[-1]["outcome"] == ["d"]


def test_truncate(three_blocks_file, capsys):
    assert main(["experiment", "truncate", "--profile", three_blocks_file, "--k-to", "2"]) == 0
    series = json.loads(capsys.readouterr().out)["series"]
    assert [entry["k"]["exact"] for entry in series] == ["1", "2"]


def test_noise(three_blocks_file, capsys):
    code = main(["experiment", "noise", "--profile", three_blocks_file, "--samples", "3", "--steps", "2",
                 "--workers", "1"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["meta"]["samples"] == 3
    assert all(len(entry["samples"]) == 3 for entry in report["series"])


def test_strategic(survey_files, capsys):
    survey, results = survey_files
    assert main(["experiment", "strategic", "--survey", survey, "--results", results]) == 0
    report = json.loads(capsys.readouterr().out)
    shares = {entry["category"]: entry["share"]["exact"] for entry in report["table"]}
    assert shares["sincere"] == "34/49"
    assert shares["strategic_down.out_to_safe"] == "15/49"
    assert report["meta"]["excluded"] == 1


def test_strategic_before(survey_files, capsys):
    survey, results = survey_files
    assert main(["experiment", "strategic", "--survey", survey, "--results", results,
                 "--before", "2024-06-02"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["classified"] == 1


def test_chi_square_table(capsys):
    assert main(["experiment", "chi-square", "--table", "10,20;20,10"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["statistic"] == pytest.approx(20 / 3)
    assert result["p_value"] == pytest.approx(0.00982, abs=1e-4)


def test_chi_square_survey(survey_files, capsys):
    survey, results = survey_files
    assert main(["experiment", "chi-square", "--survey", survey, "--results", results]) == 0
    assert json.loads(capsys.readouterr().out)["table"] == [["0", "3"], ["45/49", "102/49"]]


def test_chi_square_without_input():
    assert main(["experiment", "chi-square"]) == 2


def test_chi_square_zero_marginal():
    assert main(["experiment", "chi-square", "--table", "0,1;0,2"]) == 2


def test_convert_to_profile(survey_files, capsys):
    survey, results = survey_files
    assert main(["convert", "--from", "survey-csv", "--to", "profile", "--input", survey, "--results", results]) == 0
    assert capsys.readouterr().out == "#! parties: a,b,c\n45/49: a>b\n45/49: c>a>b\n57/49: b>a\n"


def test_convert_export(tmp_path, capsys):
    export = tmp_path / "export.csv"
    export.write_text("id,vote,first,second,all\n7,A,A,B,A|B\n", encoding="utf-8")
    mapping = tmp_path / "mapping.json"
    mapping.write_text(json.dumps({"respondent_id": "id", "intention": "vote", "two_vote": ["first", "second"],
                                   "full_ranking": "all", "separator": "|", "parties": {"A": "a", "B": "b"}}),
                       encoding="utf-8")
    code = main(["convert", "--from", "zenodo-csv", "--to", "survey-csv", "--input", str(export),
                 "--map", str(mapping)])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[1] == "7,a,a;b,a;b,"


def test_convert_export_without_mapping(tmp_path):
    export = tmp_path / "export.csv"
    export.write_text("id\n7\n", encoding="utf-8")
    assert main(["convert", "--from", "zenodo-csv", "--to", "survey-csv", "--input", str(export)]) == 2
