"""
Tests for the HTTP surface of the contest solver
"""

import pytest
from fastapi.testclient import TestClient

from src.main import app

client = TestClient(app)

EFFORTLESS = {"valuations": [1], "impact": {"r": 1}, "choice_set": [0, [0.6, 1]]}
FIRST_GAME = {"valuations": [1, 2], "efforts_1": ["0.18", "0.2", "5/9"], "efforts_2": ["0.18", "0.2", "5/9"]}


def test_root_endpoint():
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert data["message"] == "Contest Solver"
    assert data["version"] == "1.0.0"


def test_health_endpoint():
    """Test the health check endpoint"""
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert "timestamp" in data


def test_metrics_endpoint():
    client.get("/health")
    response = client.get("/metrics")
    assert response.status_code == 200
    assert "http_requests_total" in response.text


class TestContestEndpoints:
    def test_solve(self):
        response = client.post("/v1/contests/solve", json=EFFORTLESS)
        assert response.status_code == 200
        data = response.json()
        assert data["case"] == "CaseA"
        assert data["equilibria"] == [[0.0, 0.0]]

    def test_solve_asymmetric_rejected(self):
        response = client.post("/v1/contests/solve", json=FIRST_GAME)
        assert response.status_code == 422
        data = response.json()
        assert data["type"] == "AsymmetricSpecError"
        assert "matrix" in data["error"]

    def test_invalid_body(self):
        response = client.post("/v1/contests/solve", json={"valuations": [1]})
        assert response.status_code == 422

    def test_matrix(self):
        response = client.post("/v1/contests/matrix", json={"spec": FIRST_GAME})
        assert response.status_code == 200
        nash = response.json()["nash"]
        assert [(c["effort_1"], c["effort_2"]) for c in nash["pure_equilibria"]] == [(0.18, pytest.approx(5 / 9))]

    def test_matrix_interval_without_grid_step(self):
        response = client.post("/v1/contests/matrix", json={"spec": EFFORTLESS})
        assert response.status_code == 422
        assert response.json()["field"] == "choice_set"

    def test_sweep(self):
        body = {"spec": {"valuations": [1], "choice_set": [[0, 1]]}, "e_high_min": 0.25, "e_high_max": 0.5, "steps": 6}
        response = client.post("/v1/contests/sweep", json=body)
        assert response.status_code == 200
        rows = response.json()
        assert len(rows) == 6
        assert rows[-1] == {"e_high": 0.5, "e_hat": 0.0, "case": "CaseA"}

    def test_oracle(self):
        response = client.post("/v1/contests/oracle", json={"spec": EFFORTLESS, "grid_step": 0.01})
        assert response.status_code == 200
        assert response.json()["confirmed"] is True

    def test_oracle_corrupted(self):
        body = {"spec": EFFORTLESS, "grid_step": 0.01, "self_test_corrupt": True}
        data = client.post("/v1/contests/oracle", json=body).json()
        assert data["confirmed"] is False
        assert data["predicted_missing"]

    def test_identity_check(self):
        response = client.post("/v1/contests/identity-check", json={"samples": 500, "seed": 3, "r": 0.5})
        assert response.status_code == 200
        data = response.json()
        assert data["passed"] is True
        assert data["max_residual"] <= data["tolerance"]
