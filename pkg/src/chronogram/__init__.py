"""chronogram: yearly n-gram frequency indexing and time-series analysis."""

from .analysis import AnomalyReport, CompletionDistribution, complete, documents, find_misdated, spikes
from .extract import MAX_ORDER, Ngram, extract_ngrams, ngram_text, parse_ngram, tokenize
from .query import FrequencySeries, Phrase, PhraseQuery, parse_phrases, parse_query, series, smooth
from .store import (
    CorpusIndex,
    DocumentMeta,
    YearlyCount,
    YearTotals,
    build_from_manifest,
    build_index,
    import_gb_tsv,
    load_index,
    save_index,
)

__version__ = "0.1.0"
