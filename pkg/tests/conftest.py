"""Shared generators for randomized property tests.

Everything is seeded through numpy Generators so each test controls its
own reproducibility; helpers return library types so the tests exercise
the real construction paths.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from topicsum.corpus import corpus_from_token_lists
from topicsum.hdp import TopicAssignments, TopicModel
from topicsum.hypergraph import FuzzyHypergraph
from topicsum.ranking import base_transition

MINI_CORPUS = Path(__file__).resolve().parent.parent / "src" / "topicsum" / "data" / "mini_corpus"


@pytest.fixture
def mini_corpus_dir() -> Path:
    return MINI_CORPUS


def random_hypergraph(rng, n_s: int | None = None, k: int | None = None) -> FuzzyHypergraph:
    """Dense random fuzzy hypergraph: every row a positive distribution."""
    if n_s is None:
        n_s = int(rng.integers(2, 51))
    if k is None:
        k = int(rng.integers(1, 21))
    psi = rng.dirichlet(np.full(n_s, 0.7), size=k)
    weights = rng.uniform(0.1, 10.0, size=k)
    return FuzzyHypergraph(psi, weights)


def random_instance(rng, n_min: int = 3, n_max: int = 10,
                    len_lo: int = 3, len_hi: int = 12):
    """(scores p, transition P, integer lengths) for selection tests."""
    n = int(rng.integers(n_min, n_max + 1))
    h = random_hypergraph(rng, n_s=n, k=int(rng.integers(1, 8)))
    P = base_transition(h)
    p = rng.uniform(0.05, 1.0, size=n)
    p = p / p.sum()
    lengths = rng.integers(len_lo, len_hi + 1, size=n).tolist()
    return p, P, lengths


def random_token_corpus(rng, n_docs: int = 3, max_sents: int = 6,
                        vocab: int = 30, max_len: int = 8):
    docs = []
    for _ in range(n_docs):
        sents = []
        for _ in range(int(rng.integers(1, max_sents + 1))):
            length = int(rng.integers(3, max_len + 1))
            sents.append([f"w{int(rng.integers(vocab))}" for _ in range(length)])
        docs.append(sents)
    return corpus_from_token_lists(docs)


def random_assignments(rng, corpus, k_max: int = 20):
    """Random word tags, densified so every topic id in range is used."""
    raw = [tuple(int(rng.integers(k_max)) for _ in s.tokens)
           for s in corpus.sentences]
    used = sorted({t for tags in raw for t in tags})
    remap = {t: i for i, t in enumerate(used)}
    z = tuple(tuple(remap[t] for t in tags) for tags in raw)
    return TopicAssignments(z), len(used)


def random_model(rng, k: int, n_terms: int) -> TopicModel:
    phi = rng.dirichlet(np.full(n_terms, 0.5), size=k)
    return TopicModel(k, phi)
