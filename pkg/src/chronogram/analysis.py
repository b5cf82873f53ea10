"""Analytics over a built index: next-symbol completion distributions,
isolated-spike detection, misdated-document flagging, and drill-down.
"""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass

from .errors import CapabilityError, ParameterError
from .extract import Ngram, ngram_text, tokenize
from .query import FrequencySeries
from .store import CorpusIndex, DocumentMeta

UNIT_WORD = "word"
UNIT_CHAR = "char"

# Character models are built on demand; cap the history so a typo'd request
# cannot trigger an absurdly wide model.
CHAR_MAX_ORDER = 20

DEFAULT_SPIKE_WINDOW = 5
DEFAULT_SPIKE_THRESHOLD = 10.0
DEFAULT_ISOLATION_WINDOW = 10
DEFAULT_MIN_GAP = 50


@dataclass
class CompletionDistribution:
    history: list[str]
    unit: str
    entries: list[tuple[str, float]]
    support_count: int


@dataclass
class AnomalyReport:
    phrase: str
    year: int
    volume_count: int
    doc_ids: list[str]
    nearest_other_year: int | None
    gap: int | None
    note: str


def _word_completions(index: CorpusIndex, history: Ngram) -> Counter:
    m = len(history) + 1
    continuations: Counter = Counter()
    for gram, years in index.counts.items():
        if len(gram) == m and gram[:-1] == history:
            continuations[gram[-1]] += sum(c.match_count for c in years.values())
    return continuations


def _char_model(index: CorpusIndex, m: int) -> dict[str, Counter]:
    """History-string -> next-character counts, built once per order."""
    if m not in index._char_models:
        model: dict[str, Counter] = {}
        for doc in index.documents:
            text = index.document_text(doc.doc_id)
            for i in range(len(text) - m + 1):
                h = text[i : i + m - 1]
                model.setdefault(h, Counter())[text[i + m - 1]] += 1
        index._char_models[m] = model
    return index._char_models[m]


def complete(
    index: CorpusIndex, history: str, unit: str = UNIT_WORD, top: int = 10
) -> CompletionDistribution:
    """Maximum-likelihood next-symbol distribution conditioned on history.

    Probabilities are ratios of raw continuation counts; no smoothing. The
    support count is the number of history occurrences that actually have a
    continuation, so the full distribution always sums to 1 when nonempty.
    """
    if top < 1:
        raise ParameterError("top must be >= 1")
    if unit == UNIT_WORD:
        symbols = tuple(tokenize(history))
        if not symbols:
            raise ParameterError("history has no tokens")
        if len(symbols) + 1 > index.max_order:
            raise ParameterError(
                f"history of {len(symbols)} tokens needs order {len(symbols) + 1}, "
                f"index max_order is {index.max_order}"
            )
        continuations = _word_completions(index, symbols)
        history_symbols = list(symbols)
    elif unit == UNIT_CHAR:
        if not history:
            raise ParameterError("history is empty")
        if len(history) + 1 > CHAR_MAX_ORDER:
            raise ParameterError(
                f"character history longer than {CHAR_MAX_ORDER - 1} symbols"
            )
        if not index.documents:
            raise CapabilityError(
                "character completion needs document text; this corpus has none"
            )
        model = _char_model(index, len(history) + 1)
        continuations = model.get(history, Counter())
        history_symbols = list(history)
    else:
        raise ParameterError(f"unknown unit {unit!r}")

    support = sum(continuations.values())
    entries = [
        (symbol, count / support)
        for symbol, count in sorted(
            continuations.items(), key=lambda kv: (-kv[1], kv[0])
        )
    ]
    return CompletionDistribution(
        history=history_symbols,
        unit=unit,
        entries=entries[:top],
        support_count=support,
    )


def spikes(
    series: FrequencySeries,
    window: int = DEFAULT_SPIKE_WINDOW,
    threshold: float = DEFAULT_SPIKE_THRESHOLD,
) -> list[tuple[int, float]]:
    """Years whose value towers over the median of their neighborhood.

    A year with a positive value and an all-zero neighborhood always flags;
    its score uses the smallest frequency representable that year (one match
    over the year's denominator) as the median surrogate.
    """
    if window < 1:
        raise ParameterError("window must be >= 1")
    if threshold <= 1:
        raise ParameterError("threshold must be > 1")
    values = series.values
    if len(values) < 3:
        raise ParameterError("series must cover at least 3 years")

    min_positive = min((v for v in values if v > 0), default=0.0)
    flagged = []
    for i, v in enumerate(values):
        if v <= 0:
            continue
        lo = max(0, i - window)
        hi = min(len(values), i + window + 1)
        neighborhood = values[lo:i] + values[i + 1 : hi]
        if not neighborhood:
            continue
        med = statistics.median(neighborhood)
        if med > 0:
            if v > threshold * med:
                flagged.append((series.start_year + i, v / med))
        else:
            if series.denominators and series.denominators[i] > 0:
                surrogate = 1.0 / series.denominators[i]
            else:
                surrogate = min_positive
            flagged.append((series.start_year + i, v / surrogate))
    return flagged


def find_misdated(
    index: CorpusIndex,
    phrase: str,
    isolation_window: int = DEFAULT_ISOLATION_WINDOW,
    min_gap: int = DEFAULT_MIN_GAP,
) -> list[AnomalyReport]:
    """Flag years where the phrase occurs in total isolation.

    A year flags when no other occurrence falls inside the isolation window
    and the nearest other occurrence (if any) is at least min_gap years
    away; such spikes are candidate evidence of a misdated document.
    """
    if isolation_window < 1:
        raise ParameterError("isolation_window must be >= 1")
    if min_gap < 1:
        raise ParameterError("min_gap must be >= 1")
    gram = tuple(tokenize(phrase))
    years_map = index.counts.get(gram, {})
    years = sorted(y for y, c in years_map.items() if c.match_count >= 1)

    reports = []
    for y in years:
        gaps = [abs(other - y) for other in years if other != y]
        nearest = min(gaps, default=None)
        if nearest is not None and nearest <= isolation_window:
            continue
        if nearest is not None and nearest < min_gap:
            continue
        if index.postings is not None:
            doc_ids = list(index.postings.get(gram, {}).get(y, []))
            note = (
                f"isolated occurrence of {ngram_text(gram)!r} in {y}; nearest other "
                f"occurrence {'never' if nearest is None else f'{nearest} years away'}; "
                "candidate misdated document(s) listed"
            )
        else:
            doc_ids = []
            note = (
                f"isolated occurrence of {ngram_text(gram)!r} in {y}; drill-down "
                "unavailable (corpus has no postings)"
            )
        nearest_year = None
        if nearest is not None:
            candidates = [o for o in years if o != y]
            nearest_year = min(candidates, key=lambda o: (abs(o - y), o))
        reports.append(
            AnomalyReport(
                phrase=ngram_text(gram),
                year=y,
                volume_count=years_map[y].volume_count,
                doc_ids=doc_ids,
                nearest_other_year=nearest_year,
                gap=nearest,
                note=note,
            )
        )
    return reports


def documents(
    index: CorpusIndex, phrase: str, start_year: int, end_year: int
) -> list[DocumentMeta]:
    """All documents in the year range containing the phrase at least once."""
    if index.postings is None:
        raise CapabilityError("postings not available for this corpus")
    gram = tuple(tokenize(phrase))
    doc_ids: set[str] = set()
    for year, ids in index.postings.get(gram, {}).items():
        if start_year <= year <= end_year:
            doc_ids.update(ids)
    by_id = {d.doc_id: d for d in index.documents}
    found = [by_id[i] for i in doc_ids if i in by_id]
    found.sort(key=lambda d: (d.year, d.doc_id))
    return found
