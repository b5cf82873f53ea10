from __future__ import annotations

import random

import pytest

from chronogram.extract import tokenize
from chronogram.store import DocumentMeta, build_index


def brute_force_counts(docs, max_order):
    """Naive nested-loop recount used as the indexing oracle.

    Returns (counts, totals) where counts[gram][year] == (match, volume)
    and totals[year] == (per_order_matches list, volumes).
    """
    counts: dict = {}
    totals: dict = {}
    for meta, text in docs:
        toks = tokenize(text)
        per_order, volumes = totals.setdefault(
            meta.year, ([0] * (max_order + 1), [0])
        )
        volumes[0] += 1
        seen = set()
        for n in range(1, max_order + 1):
            for i in range(len(toks) - n + 1):
                g = tuple(toks[i : i + n])
                per_order[n] += 1
                cell = counts.setdefault(g, {}).setdefault(meta.year, [0, 0])
                cell[0] += 1
                if g not in seen:
                    cell[1] += 1
                    seen.add(g)
    return counts, totals


def brute_force_continuations(token_stream_per_doc, history):
    """Count continuations of `history` by scanning each document stream."""
    from collections import Counter

    m = len(history)
    out = Counter()
    for stream in token_stream_per_doc:
        for i in range(len(stream) - m):
            if tuple(stream[i : i + m]) == tuple(history):
                out[stream[i + m]] += 1
    return out


def random_corpus(rng: random.Random, max_docs=50, max_tokens=200):
    vocab = ["the", "cat", "sat", "mat", "dog", "ran", "Frankenstein", "a", ",", "1818"]
    docs = []
    for d in range(rng.randint(1, max_docs)):
        year = rng.randint(1500, 2000)
        text = " ".join(rng.choice(vocab) for _ in range(rng.randint(0, max_tokens)))
        docs.append((DocumentMeta(f"doc{d:03d}", f"Doc {d}", year), text))
    return docs


@pytest.fixture
def sentence_index():
    docs = [(DocumentMeta("d1", "One sentence", 1900), "the cat sat on the mat")]
    return build_index("sentence", docs, max_order=5, with_postings=True)


FRANK_PLANTED_ID = "reid-1594"


def frankenstein_docs():
    """One misdated document at 1594, then sustained usage 1818..1900."""
    docs = [
        (
            DocumentMeta(FRANK_PLANTED_ID, "Essays on Some Pressing Problems", 1594),
            "we would shrink back in dismay from the Frankenstein we had raised",
        )
    ]
    for year in range(1818, 1901):
        docs.append(
            (
                DocumentMeta(f"novel-{year}", f"Gothic volume {year}", year),
                "the creature of Frankenstein haunts the novel again this year",
            )
        )
    return docs


@pytest.fixture(scope="session")
def frankenstein_index():
    return build_index("gothic", frankenstein_docs(), max_order=5, with_postings=True)
