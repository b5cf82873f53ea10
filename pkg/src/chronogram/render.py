"""Output shaping shared by the CLI and the HTTP API: JSON payload dicts,
CSV tables, and a fixed-width ASCII line chart.

The CLI's JSON output and the /api/v1/series response are built by the
same function so the two surfaces cannot drift apart.
"""

from __future__ import annotations

from .analysis import AnomalyReport, CompletionDistribution
from .query import FrequencySeries, PhraseQuery
from .store import CorpusIndex, DocumentMeta

CHART_WIDTH = 72
CHART_HEIGHT = 16
CHART_GLYPHS = "*+ox#@%&"


def series_payload(
    corpus_id: str, q: PhraseQuery, results: list[FrequencySeries]
) -> dict:
    return {
        "corpus": corpus_id,
        "start_year": q.start_year,
        "end_year": q.end_year,
        "smoothing": q.smoothing,
        "series": [
            {
                "phrase": s.phrase,
                "values": s.values,
                "missing_years": sorted(s.missing_years),
            }
            for s in results
        ],
    }


def completion_payload(dist: CompletionDistribution) -> dict:
    return {
        "history": dist.history,
        "unit": dist.unit,
        "entries": [{"symbol": s, "probability": p} for s, p in dist.entries],
        "support_count": dist.support_count,
    }


def anomaly_payload(reports: list[AnomalyReport]) -> list[dict]:
    return [
        {
            "phrase": r.phrase,
            "year": r.year,
            "volume_count": r.volume_count,
            "doc_ids": r.doc_ids,
            "nearest_other_year": r.nearest_other_year,
            "gap": r.gap,
            "note": r.note,
        }
        for r in reports
    ]


def document_payload(docs: list[DocumentMeta]) -> list[dict]:
    return [
        {"doc_id": d.doc_id, "title": d.title, "year": d.year, "language": d.language}
        for d in docs
    ]


def corpus_payload(index: CorpusIndex) -> dict:
    span = index.year_span
    return {
        "corpus_id": index.corpus_id,
        "year_span": list(span) if span else None,
        "max_order": index.max_order,
        "document_count": len(index.documents),
        "has_postings": index.has_postings,
    }


def _csv_field(text: str) -> str:
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def series_csv(results: list[FrequencySeries]) -> str:
    """Header ``year,<phrase1>,...`` with one row per year."""
    header = "year," + ",".join(_csv_field(s.phrase) for s in results)
    lines = [header]
    if results:
        for i, year in enumerate(results[0].years):
            lines.append(f"{year}," + ",".join(repr(s.values[i]) for s in results))
    return "\n".join(lines) + "\n"


def series_chart(results: list[FrequencySeries]) -> str:
    """ASCII line chart, one glyph per phrase, years resampled to fit."""
    if not results:
        return ""
    span = len(results[0].values)
    width = min(span, CHART_WIDTH)
    peak = max((v for s in results for v in s.values), default=0.0)

    grid = [[" "] * width for _ in range(CHART_HEIGHT)]
    for si, s in enumerate(results):
        glyph = CHART_GLYPHS[si % len(CHART_GLYPHS)]
        for col in range(width):
            # Each column shows the largest value of the years it covers.
            lo = col * span // width
            hi = max(lo + 1, (col + 1) * span // width)
            v = max(s.values[lo:hi])
            if peak <= 0:
                row = CHART_HEIGHT - 1
            else:
                row = CHART_HEIGHT - 1 - round(v / peak * (CHART_HEIGHT - 1))
            grid[row][col] = glyph

    start = results[0].start_year
    end = results[0].end_year
    lines = [f"{peak:10.3e} |" + "".join(r) for r in [grid[0]]]
    lines += ["           |" + "".join(r) for r in grid[1:]]
    lines.append("           +" + "-" * width)
    axis = f"{start}"
    axis += " " * max(1, width - len(str(start)) - len(str(end))) + f"{end}"
    lines.append("            " + axis)
    for si, s in enumerate(results):
        lines.append(f"  {CHART_GLYPHS[si % len(CHART_GLYPHS)]} {s.phrase}")
    return "\n".join(lines) + "\n"
