"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable corpus,
malformed import, missing capability, ...).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, query, render, store
from .errors import ChronogramError, ParameterError, QueryParseError

_USAGE_ERRORS = (QueryParseError, ParameterError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="chronogram", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build an index from a corpus manifest")
    p.add_argument("--corpus", required=True, help="corpus identifier")
    p.add_argument("--manifest", required=True, help="JSON Lines corpus manifest")
    p.add_argument("--max-order", type=int, default=store.MAX_ORDER)
    p.add_argument("--postings", action="store_true", help="record per-document postings")
    p.add_argument("--out", required=True, help="output index directory")

    p = sub.add_parser("import", help="import Google-format n-gram TSV counts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--counts", required=True, help="ngram/year/match/volume TSV")
    p.add_argument("--totals", required=True, help="year/per-order-totals/volumes TSV")
    p.add_argument("--max-order", type=int, default=store.MAX_ORDER)
    p.add_argument("--out", required=True)

    p = sub.add_parser("query", help="frequency time-series for comma-separated phrases")
    p.add_argument("phrases")
    p.add_argument("--corpus", required=True, help="saved index directory")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--end", type=int, required=True)
    p.add_argument("--smoothing", type=int, default=query.DEFAULT_SMOOTHING)
    p.add_argument(
        "--normalize",
        choices=[query.NORMALIZE_TOKENS, query.NORMALIZE_VOLUMES],
        default=query.NORMALIZE_TOKENS,
    )
    p.add_argument("--case-insensitive", action="store_true")
    p.add_argument("--format", choices=["csv", "json", "chart"], default="csv")

    p = sub.add_parser("complete", help="next-symbol distribution for a history")
    p.add_argument("history")
    p.add_argument("--corpus", required=True)
    p.add_argument("--unit", choices=[analysis.UNIT_WORD, analysis.UNIT_CHAR],
                   default=analysis.UNIT_WORD)
    p.add_argument("--top", type=int, default=10)

    p = sub.add_parser("anomalies", help="isolated-spike / misdating candidates")
    p.add_argument("phrase")
    p.add_argument("--corpus", required=True)
    p.add_argument("--window", type=int, default=analysis.DEFAULT_ISOLATION_WINDOW)
    p.add_argument("--gap", type=int, default=analysis.DEFAULT_MIN_GAP)

    p = sub.add_parser("docs", help="documents containing a phrase in a year range")
    p.add_argument("phrase")
    p.add_argument("--corpus", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--end", type=int, required=True)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--corpus-dir", required=True)
    p.add_argument("--ui", help="directory of built web UI assets to serve at /")

    return parser


def _cmd_ingest(args) -> None:
    index = store.build_from_manifest(
        args.corpus, args.manifest, args.max_order, args.postings
    )
    store.save_index(index, args.out)
    span = index.year_span
    print(
        f"indexed {len(index.documents)} documents, {len(index.counts)} distinct "
        f"n-grams, years {span[0]}..{span[1]}" if span else "indexed empty corpus"
    )


def _cmd_import(args) -> None:
    with open(args.counts, encoding="utf-8") as counts_f, open(
        args.totals, encoding="utf-8"
    ) as totals_f:
        index = store.import_gb_tsv(args.corpus, counts_f, totals_f, args.max_order)
    store.save_index(index, args.out)
    print(f"imported {len(index.counts)} distinct n-grams")


def _cmd_query(args) -> None:
    index = store.load_index(args.corpus)
    q = query.parse_query(
        args.phrases,
        start_year=args.start,
        end_year=args.end,
        max_order=index.max_order,
        smoothing=args.smoothing,
        normalization=args.normalize,
        case_insensitive=args.case_insensitive,
    )
    results = query.series(index, q)
    if args.format == "json":
        print(json.dumps(render.series_payload(index.corpus_id, q, results)))
    elif args.format == "chart":
        sys.stdout.write(render.series_chart(results))
    else:
        sys.stdout.write(render.series_csv(results))


def _cmd_complete(args) -> None:
    index = store.load_index(args.corpus)
    dist = analysis.complete(index, args.history, args.unit, args.top)
    print(json.dumps(render.completion_payload(dist)))


def _cmd_anomalies(args) -> None:
    index = store.load_index(args.corpus)
    reports = analysis.find_misdated(index, args.phrase, args.window, args.gap)
    print(json.dumps(render.anomaly_payload(reports)))


def _cmd_docs(args) -> None:
    index = store.load_index(args.corpus)
    docs = analysis.documents(index, args.phrase, args.start, args.end)
    print(json.dumps(render.document_payload(docs)))


def _cmd_serve(args) -> None:
    import uvicorn

    from .api import create_app

    app = create_app(args.corpus_dir, static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port)


_COMMANDS = {
    "ingest": _cmd_ingest,
    "import": _cmd_import,
    "query": _cmd_query,
    "complete": _cmd_complete,
    "anomalies": _cmd_anomalies,
    "docs": _cmd_docs,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"chronogram: error: {exc}", file=sys.stderr)
        return 1
    try:
        _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"chronogram: error: {exc}", file=sys.stderr)
        return 1
    except ChronogramError as exc:
        print(f"chronogram: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
