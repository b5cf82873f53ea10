from __future__ import annotations

import json

import pytest

from chronogram.cli import main
from chronogram.store import save_index
from conftest import FRANK_PLANTED_ID, frankenstein_docs


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    """Saved frankenstein fixture, plus the source texts and manifest."""
    root = tmp_path_factory.mktemp("cli")
    docs_dir = root / "texts"
    docs_dir.mkdir()
    manifest_lines = []
    for meta, text in frankenstein_docs():
        path = docs_dir / f"{meta.doc_id}.txt"
        path.write_text(text, encoding="utf-8")
        manifest_lines.append(
            json.dumps(
                {
                    "doc_id": meta.doc_id,
                    "title": meta.title,
                    "year": meta.year,
                    "path": str(path),
                }
            )
        )
    manifest = root / "manifest.jsonl"
    manifest.write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    out = root / "gothic"
    code = main(
        [
            "ingest",
            "--corpus",
            "gothic",
            "--manifest",
            str(manifest),
            "--postings",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    return out


def test_query_json_planted_spike(corpus_dir, capsys):
    code = main(
        [
            "query",
            "Frankenstein",
            "--corpus",
            str(corpus_dir),
            "--start",
            "1500",
            "--end",
            "1796",
            "--smoothing",
            "0",
            "--format",
            "json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["corpus"] == "gothic"
    [s] = payload["series"]
    nonzero = [
        1500 + i for i, v in enumerate(s["values"]) if v > 0
    ]
    assert nonzero == [1594]


def test_query_csv_header(corpus_dir, capsys):
    code = main(
        ["query", "Frankenstein, creature", "--corpus", str(corpus_dir),
         "--start", "1818", "--end", "1820", "--smoothing", "0"]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "year,Frankenstein,creature"
    assert len(lines) == 4
    assert lines[1].startswith("1818,")


def test_query_chart_renders(corpus_dir, capsys):
    code = main(
        ["query", "Frankenstein", "--corpus", str(corpus_dir),
         "--start", "1800", "--end", "1900", "--format", "chart"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "*" in out
    assert "Frankenstein" in out


def test_empty_query_is_usage_error(corpus_dir, capsys):
    assert main(["query", "", "--corpus", str(corpus_dir),
                 "--start", "1800", "--end", "1900"]) == 1
    assert "error" in capsys.readouterr().err


def test_unknown_subcommand_exits_1(capsys):
    assert main(["frobnicate"]) == 1
    assert capsys.readouterr().err


def test_missing_corpus_is_data_error(tmp_path, capsys):
    assert main(["query", "cat", "--corpus", str(tmp_path / "nope"),
                 "--start", "1800", "--end", "1900"]) == 2


def test_complete_command(corpus_dir, capsys):
    code = main(["complete", "creature of", "--corpus", str(corpus_dir),
                 "--unit", "word", "--top", "5"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["entries"] == [{"symbol": "Frankenstein", "probability": 1.0}]
    assert payload["support_count"] == 83


def test_anomalies_command(corpus_dir, capsys):
    code = main(["anomalies", "Frankenstein", "--corpus", str(corpus_dir)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 1
    assert payload[0]["year"] == 1594
    assert payload[0]["doc_ids"] == [FRANK_PLANTED_ID]


def test_docs_command(corpus_dir, capsys):
    code = main(["docs", "Frankenstein", "--corpus", str(corpus_dir),
                 "--start", "1500", "--end", "1796"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert [d["doc_id"] for d in payload] == [FRANK_PLANTED_ID]


def test_import_then_query(tmp_path, capsys):
    counts = tmp_path / "counts.tsv"
    counts.write_text("Frankenstein\t1818\t21\t3\n", encoding="utf-8")
    totals = tmp_path / "totals.tsv"
    totals.write_text("1818\t1000,900,800,700,600\t40\n", encoding="utf-8")
    out = tmp_path / "gb"
    assert main(["import", "--corpus", "gb", "--counts", str(counts),
                 "--totals", str(totals), "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["query", "Frankenstein", "--corpus", str(out),
                 "--start", "1818", "--end", "1818", "--smoothing", "0",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["series"][0]["values"] == [pytest.approx(21 / 1000)]


def test_docs_on_imported_corpus_is_data_error(tmp_path, capsys):
    counts = tmp_path / "counts.tsv"
    counts.write_text("cat\t1900\t1\t1\n", encoding="utf-8")
    totals = tmp_path / "totals.tsv"
    totals.write_text("1900\t10,0,0,0,0\t1\n", encoding="utf-8")
    out = tmp_path / "gb"
    assert main(["import", "--corpus", "gb", "--counts", str(counts),
                 "--totals", str(totals), "--out", str(out)]) == 0
    assert main(["docs", "cat", "--corpus", str(out),
                 "--start", "1800", "--end", "2000"]) == 2
