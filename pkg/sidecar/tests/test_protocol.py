"""Wire-protocol conformance for the sidecar endpoints."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from citeval_sidecar.app import create_app
from citeval_sidecar.config import ModelConfig

LABELS = {"entailment", "contradiction", "neutral"}


@pytest.fixture()
def client():
    config = ModelConfig(batch_limit=8, max_seq_len=32)
    return TestClient(create_app(config))


def assert_nli_schema(payload, expected_count):
    assert set(payload) <= {"verdicts", "warnings"}
    assert isinstance(payload["verdicts"], list)
    assert len(payload["verdicts"]) == expected_count
    for verdict in payload["verdicts"]:
        assert verdict["label"] in LABELS
        assert verdict["score"] is None or 0.0 <= verdict["score"] <= 1.0


def test_healthz_reports_models(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert set(body["models"]) == {"nli", "claimsplit"}


def test_nli_batch_order_and_schema(client):
    pairs = [
        {"premise": "北京是中国的首都。", "hypothesis": "北京是首都。"},
        {"premise": "北京是中国的首都。", "hypothesis": "上海很大。"},
        {"premise": "北京是中国的首都。", "hypothesis": "北京不是首都。"},
    ]
    response = client.post("/nli", json={"pairs": pairs})
    assert response.status_code == 200
    body = response.json()
    assert_nli_schema(body, 3)
    labels = [v["label"] for v in body["verdicts"]]
    assert labels == ["entailment", "neutral", "contradiction"]


def test_nli_deterministic_across_requests(client):
    payload = {"pairs": [{"premise": "甲乙丙丁。", "hypothesis": "甲乙。"}]}
    first = client.post("/nli", json=payload).json()
    second = client.post("/nli", json=payload).json()
    assert first == second


def test_nli_truncates_overlong_premise_per_item(client):
    long_premise = "长" * 100
    response = client.post(
        "/nli",
        json={
            "pairs": [
                {"premise": long_premise, "hypothesis": "长。"},
                {"premise": "短前提。", "hypothesis": "短。"},
            ]
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert_nli_schema(body, 2)
    assert body["warnings"] == [{"index": 0, "warning": "premise truncated to 32 characters"}]


def test_nli_malformed_body_is_client_error(client):
    response = client.post("/nli", json={"pairs": [{"premise": "只有前提"}]})
    assert 400 <= response.status_code < 500
    response = client.post("/nli", json={"wrong": []})
    assert 400 <= response.status_code < 500


def test_nli_batch_limit_enforced(client):
    pairs = [{"premise": "p", "hypothesis": "h"}] * 9
    response = client.post("/nli", json={"pairs": pairs})
    assert response.status_code == 413


def test_claimsplit_order_and_fallback(client):
    response = client.post(
        "/claimsplit",
        json={"sentences": ["西瓜富含水分，热量也很低。", "短句。"]},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["claims"][0] == ["西瓜富含水分。", "热量也很低。"]
    assert body["claims"][1] == ["短句。"]
    assert all(claims for claims in body["claims"])


def test_claimsplit_empty_sentence_rejected_per_item(client):
    response = client.post("/claimsplit", json={"sentences": ["好句子。", "  "]})
    assert response.status_code == 200
    body = response.json()
    assert body["claims"][0] == ["好句子。"]
    assert body["claims"][1] == []
    assert body["warnings"] == [{"index": 1, "warning": "empty sentence"}]


def test_claimsplit_batch_limit_enforced(client):
    response = client.post("/claimsplit", json={"sentences": ["句。"] * 9})
    assert response.status_code == 413


def test_unknown_route_is_404(client):
    assert client.get("/nope").status_code == 404
