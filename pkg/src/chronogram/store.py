"""Per-year n-gram count index: build, import, save, load.

The index maps each n-gram (tuple of tokens) to its yearly
(match_count, volume_count) pair, alongside per-year totals used as
normalization denominators. Persistence is plain sorted TSV plus a JSON
manifest, so a saved index is inspectable, diffable, and byte-deterministic.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, NamedTuple

from .errors import (
    IndexLoadError,
    IngestError,
    IntegrityError,
    ManifestError,
    ParameterError,
    TsvImportError,
)
from .extract import MAX_ORDER, Ngram, ngram_text, tokenize

YEAR_MIN = 1400
YEAR_MAX = 2100

COUNTS_FILE = "counts.tsv"
TOTALS_FILE = "totals.tsv"
POSTINGS_FILE = "postings.tsv"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class DocumentMeta:
    doc_id: str
    title: str
    year: int
    language: str | None = None
    path: str | None = None


class YearlyCount(NamedTuple):
    match_count: int
    volume_count: int


@dataclass
class YearTotals:
    year: int
    # total_matches[n] is the year's total count of order-n grams; slot 0 unused.
    total_matches: list[int]
    volumes: int


@dataclass
class CorpusIndex:
    """Immutable once built or loaded; safe for concurrent readers."""

    corpus_id: str
    max_order: int
    documents: list[DocumentMeta]
    counts: dict[Ngram, dict[int, YearlyCount]]
    totals: dict[int, YearTotals]
    postings: dict[Ngram, dict[int, list[str]]] | None = None
    # Raw document text kept when the corpus was built in-process; documents
    # loaded from disk are re-read through DocumentMeta.path instead.
    texts: dict[str, str] = field(default_factory=dict, repr=False)
    _fold_map: dict[Ngram, list[Ngram]] | None = field(default=None, repr=False)
    _char_models: dict[int, dict[str, Counter]] = field(
        default_factory=dict, repr=False
    )

    @property
    def year_span(self) -> tuple[int, int] | None:
        if not self.totals:
            return None
        years = self.totals.keys()
        return (min(years), max(years))

    @property
    def has_postings(self) -> bool:
        return self.postings is not None

    def document_text(self, doc_id: str) -> str:
        if doc_id in self.texts:
            return self.texts[doc_id]
        meta = next((d for d in self.documents if d.doc_id == doc_id), None)
        if meta is None or meta.path is None:
            raise IngestError(f"no text available for document {doc_id!r}")
        try:
            return Path(meta.path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IngestError(f"cannot read document {doc_id!r}: {exc}") from exc

    def fold_map(self) -> dict[Ngram, list[Ngram]]:
        """Casefolded gram -> indexed case variants, built once on demand."""
        if self._fold_map is None:
            fold: dict[Ngram, list[Ngram]] = {}
            for gram in self.counts:
                key = tuple(t.casefold() for t in gram)
                fold.setdefault(key, []).append(gram)
            self._fold_map = fold
        return self._fold_map


def _check_year(year: int, doc_id: str) -> None:
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise ManifestError(
            f"document {doc_id!r} has year {year} outside {YEAR_MIN}..{YEAR_MAX}"
        )


def _doc_gram_counts(tokens: list[str], max_order: int) -> Counter:
    counts: Counter = Counter()
    for n in range(1, max_order + 1):
        counts.update(zip(*(tokens[i:] for i in range(n))))
    return counts


def build_index(
    corpus_id: str,
    docs: Iterable[tuple[DocumentMeta, str]],
    max_order: int = MAX_ORDER,
    with_postings: bool = False,
) -> CorpusIndex:
    """Aggregate n-gram counts of all documents, bucketed by print year.

    The merge is commutative, so the result is independent of document
    order; documents and postings lists are sorted before the index is
    returned.
    """
    if not 1 <= max_order <= MAX_ORDER:
        raise ParameterError(f"max_order must be in 1..{MAX_ORDER}, got {max_order}")

    year_matches: dict[int, Counter] = {}
    year_volumes: dict[int, Counter] = {}
    year_docs: Counter = Counter()
    postings: dict[Ngram, dict[int, list[str]]] | None = {} if with_postings else None
    documents: list[DocumentMeta] = []
    texts: dict[str, str] = {}
    seen_ids: set[str] = set()

    for meta, text in docs:
        if meta.doc_id in seen_ids:
            raise ManifestError(f"duplicate doc_id {meta.doc_id!r}")
        seen_ids.add(meta.doc_id)
        _check_year(meta.year, meta.doc_id)
        documents.append(meta)
        texts[meta.doc_id] = text
        year_docs[meta.year] += 1

        grams = _doc_gram_counts(tokenize(text), max_order)
        ym = year_matches.setdefault(meta.year, Counter())
        ym.update(grams)
        yv = year_volumes.setdefault(meta.year, Counter())
        yv.update(grams.keys())
        if postings is not None:
            for gram in grams:
                postings.setdefault(gram, {}).setdefault(meta.year, []).append(
                    meta.doc_id
                )

    counts: dict[Ngram, dict[int, YearlyCount]] = {}
    totals: dict[int, YearTotals] = {}
    for year in year_docs:
        per_order = [0] * (max_order + 1)
        ym = year_matches.get(year, Counter())
        yv = year_volumes.get(year, Counter())
        for gram, match in ym.items():
            per_order[len(gram)] += match
            counts.setdefault(gram, {})[year] = YearlyCount(match, yv[gram])
        totals[year] = YearTotals(year, per_order, year_docs[year])

    if postings is not None:
        for gram_years in postings.values():
            for ids in gram_years.values():
                ids.sort()

    documents.sort(key=lambda d: d.doc_id)
    return CorpusIndex(
        corpus_id=corpus_id,
        max_order=max_order,
        documents=documents,
        counts=counts,
        totals=totals,
        postings=postings,
        texts=texts,
    )


def read_manifest(path: str | os.PathLike) -> Iterator[DocumentMeta]:
    """Read a JSON Lines corpus manifest: one document object per line."""
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"manifest line {lineno}: invalid JSON: {exc}")
            try:
                yield DocumentMeta(
                    doc_id=obj["doc_id"],
                    title=obj.get("title", ""),
                    year=int(obj["year"]),
                    language=obj.get("language"),
                    path=obj["path"],
                )
            except KeyError as exc:
                raise ManifestError(f"manifest line {lineno}: missing field {exc}")


def build_from_manifest(
    corpus_id: str,
    manifest_path: str | os.PathLike,
    max_order: int = MAX_ORDER,
    with_postings: bool = False,
) -> CorpusIndex:
    base = Path(manifest_path).parent

    def _iter() -> Iterator[tuple[DocumentMeta, str]]:
        for meta in read_manifest(manifest_path):
            path = Path(meta.path)
            if not path.is_absolute():
                path = base / path
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise IngestError(f"cannot read document {meta.doc_id!r}: {exc}")
            yield meta, text

    return build_index(corpus_id, _iter(), max_order, with_postings)


def import_gb_tsv(
    corpus_id: str,
    rows: Iterable[str] | IO[str],
    totals_rows: Iterable[str] | IO[str],
    max_order: int = MAX_ORDER,
) -> CorpusIndex:
    """Build an index from Google-Books-format count exports.

    ``rows``: lines ``ngram<TAB>year<TAB>match_count<TAB>volume_count``;
    duplicate (ngram, year) rows are summed. ``totals_rows``: lines
    ``year<TAB>m1,..,mN<TAB>volumes``. The result has no documents and no
    postings, so drill-down over it is a capability error.
    """
    counts: dict[Ngram, dict[int, list[int]]] = {}
    for lineno, line in enumerate(rows, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise TsvImportError(
                f"counts line {lineno}: expected 4 tab-separated fields, got {len(fields)}"
            )
        gram = tuple(fields[0].split(" "))
        if not all(gram):
            raise TsvImportError(f"counts line {lineno}: empty token in ngram")
        if len(gram) > max_order:
            raise TsvImportError(
                f"counts line {lineno}: order {len(gram)} exceeds max_order {max_order}"
            )
        try:
            year, match, volume = int(fields[1]), int(fields[2]), int(fields[3])
        except ValueError:
            raise TsvImportError(f"counts line {lineno}: non-integer field")
        if match < 0 or volume < 0:
            raise TsvImportError(f"counts line {lineno}: negative count")
        cell = counts.setdefault(gram, {}).setdefault(year, [0, 0])
        cell[0] += match
        cell[1] += volume

    totals: dict[int, YearTotals] = {}
    for lineno, line in enumerate(totals_rows, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise TsvImportError(
                f"totals line {lineno}: expected 3 tab-separated fields, got {len(fields)}"
            )
        try:
            year = int(fields[0])
            per_order = [0] + [int(x) for x in fields[1].split(",")]
            volumes = int(fields[2])
        except ValueError:
            raise TsvImportError(f"totals line {lineno}: non-integer field")
        if len(per_order) - 1 != max_order:
            per_order += [0] * (max_order + 1 - len(per_order))
        totals[year] = YearTotals(year, per_order[: max_order + 1], volumes)

    frozen = {
        gram: {y: YearlyCount(m, v) for y, (m, v) in years.items()}
        for gram, years in counts.items()
    }
    return CorpusIndex(
        corpus_id=corpus_id,
        max_order=max_order,
        documents=[],
        counts=frozen,
        totals=totals,
        postings=None,
    )


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def save_index(index: CorpusIndex, directory: str | os.PathLike) -> None:
    """Write counts.tsv, totals.tsv, manifest.json and optional postings.tsv.

    Output is fully deterministic: rows sorted by (order, ngram text, year),
    LF endings, checksums recorded in the manifest.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)

    def gram_sort_key(gram: Ngram):
        return (len(gram), ngram_text(gram))

    with open(out / COUNTS_FILE, "w", encoding="utf-8", newline="\n") as f:
        for gram in sorted(index.counts, key=gram_sort_key):
            text = ngram_text(gram)
            years = index.counts[gram]
            for year in sorted(years):
                c = years[year]
                f.write(f"{text}\t{len(gram)}\t{year}\t{c.match_count}\t{c.volume_count}\n")

    with open(out / TOTALS_FILE, "w", encoding="utf-8", newline="\n") as f:
        for year in sorted(index.totals):
            t = index.totals[year]
            per_order = ",".join(str(m) for m in t.total_matches[1:])
            f.write(f"{year}\t{per_order}\t{t.volumes}\n")

    if index.postings is not None:
        with open(out / POSTINGS_FILE, "w", encoding="utf-8", newline="\n") as f:
            for gram in sorted(index.postings, key=gram_sort_key):
                text = ngram_text(gram)
                years = index.postings[gram]
                for year in sorted(years):
                    f.write(f"{text}\t{year}\t{','.join(sorted(years[year]))}\n")

    checksums = {
        COUNTS_FILE: _sha256(out / COUNTS_FILE),
        TOTALS_FILE: _sha256(out / TOTALS_FILE),
    }
    if index.postings is not None:
        checksums[POSTINGS_FILE] = _sha256(out / POSTINGS_FILE)

    manifest = {
        "corpus_id": index.corpus_id,
        "max_order": index.max_order,
        "year_span": list(index.year_span) if index.year_span else None,
        "has_postings": index.postings is not None,
        "documents": [
            {
                "doc_id": d.doc_id,
                "title": d.title,
                "year": d.year,
                "language": d.language,
                "path": d.path,
            }
            for d in sorted(index.documents, key=lambda d: d.doc_id)
        ],
        "checksums": checksums,
    }
    with open(out / MANIFEST_FILE, "w", encoding="utf-8", newline="\n") as f:
        json.dump(manifest, f, ensure_ascii=False, sort_keys=True, indent=2)
        f.write("\n")


def load_index(directory: str | os.PathLike) -> CorpusIndex:
    """Reconstruct an index saved by save_index; verifies file checksums."""
    src = Path(directory)
    manifest_path = src / MANIFEST_FILE
    if not manifest_path.is_file():
        raise IndexLoadError(f"missing {MANIFEST_FILE} in {src}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IndexLoadError(f"cannot parse {MANIFEST_FILE}: {exc}")

    for name, digest in manifest.get("checksums", {}).items():
        path = src / name
        if not path.is_file():
            raise IndexLoadError(f"missing {name} in {src}")
        if _sha256(path) != digest:
            raise IntegrityError(f"checksum mismatch for {name}")

    max_order = int(manifest["max_order"])
    counts: dict[Ngram, dict[int, YearlyCount]] = {}
    counts_path = src / COUNTS_FILE
    if not counts_path.is_file():
        raise IndexLoadError(f"missing {COUNTS_FILE} in {src}")
    with open(counts_path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 5:
                raise IndexLoadError(f"{COUNTS_FILE} line {lineno}: bad field count")
            gram = tuple(fields[0].split(" "))
            counts.setdefault(gram, {})[int(fields[2])] = YearlyCount(
                int(fields[3]), int(fields[4])
            )

    totals: dict[int, YearTotals] = {}
    totals_path = src / TOTALS_FILE
    if not totals_path.is_file():
        raise IndexLoadError(f"missing {TOTALS_FILE} in {src}")
    with open(totals_path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise IndexLoadError(f"{TOTALS_FILE} line {lineno}: bad field count")
            year = int(fields[0])
            per_order = [0] + [int(x) for x in fields[1].split(",")]
            totals[year] = YearTotals(year, per_order, int(fields[2]))

    postings: dict[Ngram, dict[int, list[str]]] | None = None
    if manifest.get("has_postings"):
        postings_path = src / POSTINGS_FILE
        if not postings_path.is_file():
            raise IndexLoadError(f"missing {POSTINGS_FILE} in {src}")
        postings = {}
        with open(postings_path, encoding="utf-8") as f:
            for line in f:
                gram_text, year, ids = line.rstrip("\n").split("\t")
                gram = tuple(gram_text.split(" "))
                postings.setdefault(gram, {})[int(year)] = ids.split(",")

    documents = [
        DocumentMeta(
            doc_id=d["doc_id"],
            title=d.get("title", ""),
            year=int(d["year"]),
            language=d.get("language"),
            path=d.get("path"),
        )
        for d in manifest.get("documents", [])
    ]
    return CorpusIndex(
        corpus_id=manifest["corpus_id"],
        max_order=max_order,
        documents=documents,
        counts=counts,
        totals=totals,
        postings=postings,
    )
