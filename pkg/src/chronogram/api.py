"""Read-only HTTP JSON API over saved corpus indexes.

All endpoints live under /api/v1 and are stateless: identical GETs return
identical bodies. Errors use ``{"error": {"code", "message"}}`` with 400
for malformed parameters, 404 for unknown corpora, and 409 for capability
errors (e.g. drill-down on a corpus without postings).
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse

from . import analysis, query, render
from .errors import (
    CapabilityError,
    ChronogramError,
    ParameterError,
    UnknownCorpusError,
)
from .store import MANIFEST_FILE, CorpusIndex, load_index

_STATUS = {
    CapabilityError: 409,
    UnknownCorpusError: 404,
}


class CorpusRegistry:
    """Lazily loads saved indexes found under a corpus directory.

    A directory is a corpus if it contains a manifest.json; both the root
    itself and its immediate subdirectories are considered. Loading happens
    once per corpus under a lock; loaded indexes are immutable.
    """

    def __init__(self, corpus_dir: str | Path | None = None):
        self._lock = threading.Lock()
        self._indexes: dict[str, CorpusIndex] = {}
        self._paths: dict[str, Path] = {}
        if corpus_dir is not None:
            root = Path(corpus_dir)
            candidates = [root] + sorted(p for p in root.iterdir() if p.is_dir())
            for path in candidates:
                if (path / MANIFEST_FILE).is_file():
                    self._paths[path.name] = path

    def add(self, index: CorpusIndex) -> None:
        self._indexes[index.corpus_id] = index

    def ids(self) -> list[str]:
        return sorted(set(self._indexes) | set(self._paths))

    def get(self, corpus_id: str) -> CorpusIndex:
        if corpus_id in self._indexes:
            return self._indexes[corpus_id]
        if corpus_id not in self._paths:
            raise UnknownCorpusError(f"unknown corpus {corpus_id!r}")
        with self._lock:
            if corpus_id not in self._indexes:
                self._indexes[corpus_id] = load_index(self._paths[corpus_id])
        return self._indexes[corpus_id]


def _error(exc: ChronogramError) -> JSONResponse:
    status = _STATUS.get(type(exc), 400)
    return JSONResponse(
        status_code=status,
        content={"error": {"code": exc.code, "message": str(exc)}},
    )


def create_app(
    corpus_dir: str | Path | None = None,
    registry: CorpusRegistry | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    reg = registry or CorpusRegistry(corpus_dir)
    app = FastAPI(title="chronogram", docs_url=None, redoc_url=None)

    @app.exception_handler(ChronogramError)
    async def _chronogram_error(request: Request, exc: ChronogramError):
        return _error(exc)

    @app.get("/api/v1/corpora")
    def corpora():
        return [render.corpus_payload(reg.get(cid)) for cid in reg.ids()]

    @app.get("/api/v1/series")
    def series(
        corpus: str,
        phrases: str,
        start: int,
        end: int,
        smoothing: int = query.DEFAULT_SMOOTHING,
        case: str = "sensitive",
        normalize: str = query.NORMALIZE_TOKENS,
    ):
        if case not in ("sensitive", "insensitive"):
            raise ParameterError(f"case must be sensitive or insensitive, got {case!r}")
        index = reg.get(corpus)
        q = query.parse_query(
            phrases,
            start_year=start,
            end_year=end,
            max_order=index.max_order,
            smoothing=smoothing,
            normalization=normalize,
            case_insensitive=(case == "insensitive"),
        )
        return render.series_payload(index.corpus_id, q, query.series(index, q))

    @app.get("/api/v1/completions")
    def completions(
        corpus: str, history: str, unit: str = analysis.UNIT_WORD, top: int = 10
    ):
        index = reg.get(corpus)
        return render.completion_payload(analysis.complete(index, history, unit, top))

    @app.get("/api/v1/anomalies")
    def anomalies(
        corpus: str,
        phrase: str,
        window: int = analysis.DEFAULT_ISOLATION_WINDOW,
        gap: int = analysis.DEFAULT_MIN_GAP,
    ):
        index = reg.get(corpus)
        return render.anomaly_payload(
            analysis.find_misdated(index, phrase, window, gap)
        )

    @app.get("/api/v1/documents")
    def documents(corpus: str, phrase: str, start: int, end: int):
        index = reg.get(corpus)
        return render.document_payload(analysis.documents(index, phrase, start, end))

    if static_dir is not None:
        static_root = Path(static_dir)

        @app.get("/")
        def ui_root():
            return FileResponse(static_root / "index.html")

        @app.get("/{asset_path:path}")
        def ui_asset(asset_path: str):
            target = (static_root / asset_path).resolve()
            if static_root.resolve() not in target.parents or not target.is_file():
                return JSONResponse(status_code=404, content={"error": {"code": "not_found", "message": asset_path}})
            return FileResponse(target)

    return app
