import json

import pytest
from fastapi.testclient import TestClient

from nlidb.server import create_app

TABLE1_QUERY = (
    "Who is the director of the series House of Cards produced by Netflix?"
)


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_list_databases(client):
    resp = client.get("/api/dbs")
    assert resp.status_code == 200
    assert "movie" in resp.json()["databases"]


def test_unknown_database_is_404(client):
    resp = client.post(
        "/api/translate", json={"db": "ghost", "query": "anything"}
    )
    assert resp.status_code == 404


def test_translate_worked_example(client):
    resp = client.post(
        "/api/translate",
        json={"db": "movie", "query": TABLE1_QUERY, "explain": True},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["tokens"]) == 13
    assert len(body["tags"]) == 13
    assert body["result"]["sql"].startswith("SELECT * FROM tv_series")
    assert len(body["token_explanations"]) == 7
    highlighted = {
        n["label"]
        for n in body["graph"]["nodes"]
        if n["highlight"] and n["kind"] == "table"
    }
    assert highlighted == {
        "tv_series", "copyright", "company", "directed_by", "director",
    }
    reasons = {e["part"]: e["reason"] for e in body["result"]["explanations"]}
    assert "required table to connect" in reasons["directed_by"]


def test_explain_flag_does_not_change_sql(client):
    with_explain = client.post(
        "/api/translate",
        json={"db": "movie", "query": TABLE1_QUERY, "explain": True},
    ).json()
    without = client.post(
        "/api/translate", json={"db": "movie", "query": TABLE1_QUERY}
    ).json()
    assert with_explain["result"]["sql"] == without["result"]["sql"]
    assert "token_explanations" not in without


def test_untranslatable_query_returns_structured_error(client):
    resp = client.post(
        "/api/translate",
        json={"db": "movie", "query": "hello world", "tagger": "auto"},
    )
    assert resp.status_code == 200
    assert resp.json()["error"]["stage"] == "collect_table_set"


def test_gold_tagger_requires_known_query(client):
    resp = client.post(
        "/api/translate", json={"db": "movie", "query": "hello world"}
    )
    assert resp.json()["error"]["stage"] == "tagging"


def test_auto_tagger_translates_single_table(client):
    resp = client.post(
        "/api/translate",
        json={"db": "movie", "query": "director", "tagger": "auto"},
    )
    assert resp.json()["result"]["sql"] == "SELECT * FROM director"


def test_schema_graph_endpoint(client):
    resp = client.get("/api/schema/movie/graph")
    assert resp.status_code == 200
    body = resp.json()
    tables = [n for n in body["nodes"] if n["kind"] == "table"]
    assert len(tables) == 5
    assert all(not n["highlight"] for n in body["nodes"])
    assert client.get("/api/schema/ghost/graph").status_code == 404


def test_explain_endpoint_matches_batch_seed(client):
    resp = client.post(
        "/api/explain",
        json={"db": "movie", "query": TABLE1_QUERY, "token_index": 3},
    )
    assert resp.status_code == 200
    single = resp.json()
    batch = client.post(
        "/api/translate",
        json={"db": "movie", "query": TABLE1_QUERY, "explain": True},
    ).json()["token_explanations"]
    matching = next(e for e in batch if e["token_index"] == 3)
    assert single == matching


def test_explain_endpoint_rejects_o_tokens(client):
    resp = client.post(
        "/api/explain",
        json={"db": "movie", "query": TABLE1_QUERY, "token_index": 0},
    )
    assert resp.json()["error"]["stage"] == "explain"
