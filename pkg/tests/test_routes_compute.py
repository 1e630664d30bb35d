from src.repository import fixtures


def test_healthchecker(client):
    response = client.get("/api/healthchecker")
    assert response.status_code == 200, response.text
    assert response.json() == {"message": "Welcome to party selection!"}


def test_compute(client):
    response = client.post("/api/compute/", json={"profile": fixtures.THREE_BLOCKS, "rule": "stv"})
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["outcome"] == ["b", "d"]
    assert data["scores"]["b"]["exact"] == "9"
    assert data["meta"]["tau"]["exact"] == "5"


def test_compute_threshold_and_seats(client):
    response = client.post("/api/compute/", json={"profile": fixtures.THREE_BLOCKS, "rule": "stv", "tau": "5",
                                                  "seats": 10})
    assert response.status_code == 200, response.text
    assert response.json()["seats"] == {"b": 6, "d": 4}


def test_compute_parallel_universes(client):
    response = client.post("/api/compute/", json={"profile": "#! tau: 2\n1: a>b\n1: b>a\n", "rule": "gp",
                                                  "parallel_universe": True})
    assert response.status_code == 200, response.text
    assert response.json()["universes"] == [["a"], ["b"]]


def test_compute_default_rule(client):
    response = client.post("/api/compute/", json={"profile": fixtures.THREE_BLOCKS, "tau": "20%"})
    assert response.status_code == 200, response.text
    assert response.json()["meta"]["rule"] == "stv"


def test_compute_invalid_profile(client):
    response = client.post("/api/compute/", json={"profile": "#! parties: a\n#! tau: 1\n1: b\n", "rule": "do"})
    assert response.status_code == 422, response.text
    assert "line 3" in response.json()["detail"]


def test_compute_missing_threshold(client):
    response = client.post("/api/compute/", json={"profile": "1: a\n", "rule": "do"})
    assert response.status_code == 422, response.text


def test_compute_threshold_too_high(client):
    response = client.post("/api/compute/", json={"profile": fixtures.THREE_BLOCKS, "rule": "do", "tau": "16"})
    assert response.status_code == 422, response.text


def test_compute_guard(client):
    parties = ",".join(f"p{index}" for index in range(17))
    response = client.post("/api/compute/", json={"profile": f"#! parties: {parties}\n#! tau: 1\n1: p0\n",
                                                  "rule": "maxp"})
    assert response.status_code == 413, response.text


def test_compute_unknown_rule(client):
    response = client.post("/api/compute/", json={"profile": fixtures.THREE_BLOCKS, "rule": "borda"})
    assert response.status_code == 422, response.text
