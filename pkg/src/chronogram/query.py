"""Phrase-query parsing and normalized, smoothed frequency time-series.

Query grammar: phrases separated by commas, each optionally suffixed with
``:ci`` to match case-insensitively. A phrase of order n is normalized per
year either by the year's total count of order-n grams (``tokens`` mode,
the default) or by the number of documents printed that year (``volumes``
mode). Smoothing is a centered moving average over [y-k, y+k], truncated
at the requested range edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import QueryParseError
from .extract import Ngram, ngram_text, tokenize
from .store import CorpusIndex

DEFAULT_SMOOTHING = 3

NORMALIZE_TOKENS = "tokens"
NORMALIZE_VOLUMES = "volumes"


@dataclass(frozen=True)
class Phrase:
    tokens: Ngram
    case_insensitive: bool = False

    @property
    def text(self) -> str:
        return ngram_text(self.tokens)

    @property
    def order(self) -> int:
        return len(self.tokens)


@dataclass
class PhraseQuery:
    phrases: list[Phrase]
    start_year: int
    end_year: int
    smoothing: int = DEFAULT_SMOOTHING
    normalization: str = NORMALIZE_TOKENS


@dataclass
class FrequencySeries:
    phrase: str
    start_year: int
    end_year: int
    values: list[float]
    missing_years: set[int]
    # Per-year normalization denominators; kept for downstream spike scoring,
    # not part of the serialized series payload.
    denominators: list[int] = field(default_factory=list)

    @property
    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)


def parse_phrases(text: str, max_order: int) -> list[Phrase]:
    """Split a comma-separated query into phrases; honor ``:ci`` suffixes."""
    parts = [p.strip() for p in text.split(",")]
    if not any(parts):
        raise QueryParseError("empty query")
    phrases: list[Phrase] = []
    for part in parts:
        if not part:
            raise QueryParseError("empty phrase in query")
        ci = False
        if part.endswith(":ci"):
            ci = True
            part = part[: -len(":ci")].rstrip()
            if not part:
                raise QueryParseError("empty phrase before :ci marker")
        tokens = tuple(tokenize(part))
        if not tokens:
            raise QueryParseError(f"phrase {part!r} has no tokens")
        if len(tokens) > max_order:
            raise QueryParseError(
                f"phrase {part!r} has order {len(tokens)}, maximum is {max_order}"
            )
        phrases.append(Phrase(tokens, ci))
    return phrases


def parse_query(
    text: str,
    start_year: int,
    end_year: int,
    max_order: int,
    smoothing: int = DEFAULT_SMOOTHING,
    normalization: str = NORMALIZE_TOKENS,
    case_insensitive: bool = False,
) -> PhraseQuery:
    if start_year > end_year:
        raise QueryParseError(f"start year {start_year} after end year {end_year}")
    if smoothing < 0:
        raise QueryParseError("smoothing must be >= 0")
    if normalization not in (NORMALIZE_TOKENS, NORMALIZE_VOLUMES):
        raise QueryParseError(f"unknown normalization {normalization!r}")
    phrases = parse_phrases(text, max_order)
    if case_insensitive:
        phrases = [Phrase(p.tokens, True) for p in phrases]
    return PhraseQuery(phrases, start_year, end_year, smoothing, normalization)


def smooth(values: list[float], k: int) -> list[float]:
    """Centered moving average over a +-k window truncated at the edges."""
    if k == 0:
        return list(values)
    out = []
    for i in range(len(values)):
        lo = max(0, i - k)
        hi = min(len(values), i + k + 1)
        out.append(sum(values[lo:hi]) / (hi - lo))
    return out


def _match_count(index: CorpusIndex, phrase: Phrase, year: int) -> int:
    if not phrase.case_insensitive:
        years = index.counts.get(phrase.tokens)
        return years[year].match_count if years and year in years else 0
    folded = tuple(t.casefold() for t in phrase.tokens)
    total = 0
    for variant in index.fold_map().get(folded, []):
        cell = index.counts[variant].get(year)
        if cell:
            total += cell.match_count
    return total


def raw_series(index: CorpusIndex, phrase: Phrase, q: PhraseQuery) -> FrequencySeries:
    """Unsmoothed relative-frequency series for one phrase."""
    values: list[float] = []
    denominators: list[int] = []
    missing: set[int] = set()
    for year in range(q.start_year, q.end_year + 1):
        totals = index.totals.get(year)
        if totals is None:
            denom = 0
        elif q.normalization == NORMALIZE_TOKENS:
            denom = totals.total_matches[phrase.order]
        else:
            denom = totals.volumes
        denominators.append(denom)
        if denom == 0:
            missing.add(year)
            values.append(0.0)
        else:
            values.append(_match_count(index, phrase, year) / denom)
    return FrequencySeries(
        phrase=phrase.text,
        start_year=q.start_year,
        end_year=q.end_year,
        values=values,
        missing_years=missing,
        denominators=denominators,
    )


def series(index: CorpusIndex, q: PhraseQuery) -> list[FrequencySeries]:
    """One smoothed series per phrase, aligned on the requested year span."""
    out = []
    for phrase in q.phrases:
        s = raw_series(index, phrase, q)
        s.values = smooth(s.values, q.smoothing)
        out.append(s)
    return out
