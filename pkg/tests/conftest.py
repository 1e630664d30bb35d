import pytest
from fastapi.testclient import TestClient

from main import app
from src.repository import fixtures


@pytest.fixture(scope="module")
def client():
    yield TestClient(app)


@pytest.fixture()
def three_blocks_file(tmp_path):
    path = tmp_path / "three_blocks.txt"
    path.write_text(fixtures.THREE_BLOCKS, encoding="utf-8")
    return str(path)


@pytest.fixture()
def survey_files(tmp_path):
    survey = tmp_path / "survey.csv"
    survey.write_text("respondent_id,intention,two_vote,full_ranking,completed_at\n"
                      "1,a,a,a;b,2024-06-01\n"
                      "2,a,c;a,c;a;b,2024-06-02\n"
                      "3,b,b,b;a,2024-06-03\n"
                      "4,,c,c,2024-06-04\n", encoding="utf-8")
    results = tmp_path / "results.csv"
    results.write_text("party,votes\na,60\nb,38\nc,2\n", encoding="utf-8")
    return str(survey), str(results)
