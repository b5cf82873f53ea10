from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from chronogram.api import CorpusRegistry, create_app
from chronogram.cli import main
from chronogram.store import import_gb_tsv, save_index
from conftest import FRANK_PLANTED_ID


@pytest.fixture(scope="module")
def client(frankenstein_index, tmp_path_factory):
    registry = CorpusRegistry()
    registry.add(frankenstein_index)
    registry.add(
        import_gb_tsv(
            "imported",
            ["Frankenstein\t1818\t21\t3"],
            ["1818\t1000,900,800,700,600\t40"],
        )
    )
    return TestClient(create_app(registry=registry))


def test_corpora_listing(client):
    body = client.get("/api/v1/corpora").json()
    by_id = {c["corpus_id"]: c for c in body}
    assert by_id["gothic"]["has_postings"] is True
    assert by_id["gothic"]["document_count"] == 84
    assert by_id["gothic"]["year_span"] == [1594, 1900]
    assert by_id["imported"]["has_postings"] is False
    assert by_id["imported"]["document_count"] == 0


def test_series_alignment(client):
    r = client.get(
        "/api/v1/series",
        params={"corpus": "gothic", "phrases": "Frankenstein, creature",
                "start": 1800, "end": 2000},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["start_year"] == 1800
    assert body["end_year"] == 2000
    assert len(body["series"]) == 2
    for s in body["series"]:
        assert len(s["values"]) == 201


def test_series_matches_cli_json(client, frankenstein_index, tmp_path):
    save_index(frankenstein_index, tmp_path / "idx")
    import subprocess, sys

    cli = subprocess.run(
        [sys.executable, "-m", "chronogram.cli", "query", "Frankenstein, creature",
         "--corpus", str(tmp_path / "idx"), "--start", "1500", "--end", "1900",
         "--smoothing", "2", "--format", "json"],
        capture_output=True, text=True,
    )
    assert cli.returncode == 0
    cli_payload = json.loads(cli.stdout)
    api_payload = client.get(
        "/api/v1/series",
        params={"corpus": "gothic", "phrases": "Frankenstein, creature",
                "start": 1500, "end": 1900, "smoothing": 2},
    ).json()
    assert cli_payload["series"] == api_payload["series"]


def test_series_deterministic(client):
    params = {"corpus": "gothic", "phrases": "Frankenstein", "start": 1500,
              "end": 1900, "smoothing": 3}
    a = client.get("/api/v1/series", params=params)
    b = client.get("/api/v1/series", params=params)
    assert a.content == b.content


def test_series_case_insensitive_param(client):
    ci = client.get(
        "/api/v1/series",
        params={"corpus": "gothic", "phrases": "frankenstein", "start": 1818,
                "end": 1818, "smoothing": 0, "case": "insensitive"},
    ).json()
    cs = client.get(
        "/api/v1/series",
        params={"corpus": "gothic", "phrases": "Frankenstein", "start": 1818,
                "end": 1818, "smoothing": 0},
    ).json()
    assert ci["series"][0]["values"] == cs["series"][0]["values"]


def test_unknown_corpus_404(client):
    r = client.get(
        "/api/v1/series",
        params={"corpus": "nope", "phrases": "x", "start": 1800, "end": 1900},
    )
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "unknown_corpus"


def test_bad_query_400(client):
    r = client.get(
        "/api/v1/series",
        params={"corpus": "gothic", "phrases": "", "start": 1800, "end": 1900},
    )
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "parse_error"


def test_completions_endpoint(client):
    r = client.get(
        "/api/v1/completions",
        params={"corpus": "gothic", "history": "creature of", "unit": "word"},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["entries"] == [{"symbol": "Frankenstein", "probability": 1.0}]
    assert body["support_count"] == 83


def test_completions_unseen_history(client):
    body = client.get(
        "/api/v1/completions",
        params={"corpus": "gothic", "history": "zzzz", "unit": "word"},
    ).json()
    assert body["entries"] == []
    assert body["support_count"] == 0


def test_anomalies_endpoint(client):
    body = client.get(
        "/api/v1/anomalies", params={"corpus": "gothic", "phrase": "Frankenstein"}
    ).json()
    assert [r["year"] for r in body] == [1594]
    assert body[0]["doc_ids"] == [FRANK_PLANTED_ID]


def test_documents_endpoint(client):
    body = client.get(
        "/api/v1/documents",
        params={"corpus": "gothic", "phrase": "Frankenstein",
                "start": 1500, "end": 1796},
    ).json()
    assert [d["doc_id"] for d in body] == [FRANK_PLANTED_ID]


def test_documents_capability_error_409(client):
    r = client.get(
        "/api/v1/documents",
        params={"corpus": "imported", "phrase": "Frankenstein",
                "start": 1500, "end": 1900},
    )
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "capability_missing"


def test_registry_loads_saved_corpora(frankenstein_index, tmp_path):
    save_index(frankenstein_index, tmp_path / "gothic")
    app = create_app(corpus_dir=tmp_path)
    with TestClient(app) as c:
        body = c.get("/api/v1/corpora").json()
        assert [x["corpus_id"] for x in body] == ["gothic"]
