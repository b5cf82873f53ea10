"""Deterministic Unicode tokenization and contiguous n-gram enumeration.

Tokens are plain strings: a token is either a maximal run of letters/digits
(apostrophes and hyphens are kept when they sit between such runs, so
"Shelley's" and "e-mail" stay single tokens) or a single non-whitespace
punctuation character. Case is never altered; whitespace only separates.

N-grams are tuples of token strings; the canonical text form joins the
tokens with single spaces.
"""

from __future__ import annotations

import re

from .errors import ParameterError

MAX_ORDER = 5

Ngram = tuple[str, ...]

# Word branch first so letter/digit runs win over the single-char fallback.
# [^\W_] is "alphanumeric": \w minus underscore. Underscore and every other
# punctuation mark fall through to \S and become one-character tokens.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*|\S")


def tokenize(text: str) -> list[str]:
    """Split text into word and punctuation tokens. Empty text gives []."""
    return _TOKEN_RE.findall(text)


def extract_ngrams(tokens: list[str], max_order: int) -> list[Ngram]:
    """Every contiguous window of length 1..max_order, grouped by order.

    For T tokens there are max(T - n + 1, 0) windows of order n. No padding
    or sentence-boundary symbols are inserted.
    """
    if not 1 <= max_order <= MAX_ORDER:
        raise ParameterError(f"max_order must be in 1..{MAX_ORDER}, got {max_order}")
    grams: list[Ngram] = []
    for n in range(1, max_order + 1):
        for i in range(len(tokens) - n + 1):
            grams.append(tuple(tokens[i : i + n]))
    return grams


def ngram_text(gram: Ngram) -> str:
    return " ".join(gram)


def parse_ngram(text: str, max_order: int = MAX_ORDER) -> Ngram:
    """Parse a phrase into its canonical n-gram, enforcing the order cap."""
    tokens = tokenize(text)
    if not tokens:
        raise ParameterError("phrase has no tokens")
    if len(tokens) > max_order:
        raise ParameterError(
            f"phrase {text!r} has order {len(tokens)}, maximum is {max_order}"
        )
    return tuple(tokens)
