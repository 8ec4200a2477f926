"""Fuzzy hypergraph construction over sentences.

Each topic is a hyperedge whose membership distribution over sentences
is proportional to per-sentence tag counts.  Edge weights combine topic
relevance (occurrence count discounted by sentence spread) with the
salience of the topic's terms: corpus frequency, inverse sentence
frequency and a topic-concentration discount.  Natural log is used for
every logarithmic quantity so results are bit-reproducible.

An alternate builder treats each term as its own hyperedge, weighted by
corpus frequency times inverse sentence frequency; it reuses the same
hypergraph type so the downstream ranking stage is unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoTopics

# positive floor applied to degenerate edge weights; relative to the
# largest raw weight, absolute when every raw weight is zero
WEIGHT_FLOOR_REL = 1e-9
WEIGHT_FLOOR_ABS = 1e-12


@dataclass(frozen=True)
class TermStats:
    tfc: np.ndarray        # corpus count per term
    sent_freq: np.ndarray  # number of sentences containing the term
    isf: np.ndarray        # ln(N_s / sent_freq)
    entropy: np.ndarray    # entropy of the term's distribution over topics
    tdp: np.ndarray        # 1 / (1 + entropy)


@dataclass(frozen=True)
class TopicStats:
    occurrences: np.ndarray  # f(e): corpus tag count per topic
    sent_freq: np.ndarray    # number of sentences where the topic appears
    rel: np.ndarray          # occurrences * ln(N_s / sent_freq)
    tft: np.ndarray          # (K, N_t): p(term | topic), taken from phi


@dataclass(frozen=True)
class FuzzyHypergraph:
    psi: np.ndarray      # (K, N_s): per-edge distribution over sentences
    weights: np.ndarray  # (K,): positive edge weights

    @property
    def n_edges(self) -> int:
        return self.psi.shape[0]

    @property
    def n_vertices(self) -> int:
        return self.psi.shape[1]


def _tag_count_matrix(corpus, assignments, k: int) -> np.ndarray:
    """counts[e, i] = number of words in sentence i tagged with topic e."""
    counts = np.zeros((k, corpus.n_sentences), dtype=np.int64)
    for i, tags in enumerate(assignments.z):
        for e in tags:
            counts[e, i] += 1
    return counts


def term_topic_counts(corpus, assignments, k: int) -> np.ndarray:
    """counts[e, t] = occurrences of term t tagged with topic e."""
    counts = np.zeros((k, corpus.n_terms), dtype=np.int64)
    for sent, tags in zip(corpus.sentences, assignments.z):
        for term, e in zip(sent.tokens, tags):
            counts[e, term] += 1
    return counts


def compute_term_stats(corpus, assignments, k: int) -> TermStats:
    n_s = corpus.n_sentences
    n_t = corpus.n_terms
    tfc = np.zeros(n_t, dtype=np.int64)
    sent_freq = np.zeros(n_t, dtype=np.int64)
    for sent in corpus.sentences:
        for term in set(sent.tokens):
            sent_freq[term] += 1
        for term in sent.tokens:
            tfc[term] += 1
    isf = np.log(n_s / sent_freq)

    te = term_topic_counts(corpus, assignments, k)
    totals = te.sum(axis=0)
    entropy = np.zeros(n_t)
    for t in range(n_t):
        col = te[:, t]
        nz = col[col > 0]
        if nz.size:
            p = nz / totals[t]
            entropy[t] = float(-(p * np.log(p)).sum())
    tdp = 1.0 / (1.0 + entropy)
    return TermStats(tfc, sent_freq, isf, entropy, tdp)


def compute_topic_stats(corpus, model, assignments) -> TopicStats:
    n_s = corpus.n_sentences
    tag_counts = _tag_count_matrix(corpus, assignments, model.k)
    occurrences = tag_counts.sum(axis=1)
    sent_freq = (tag_counts > 0).sum(axis=1)
    rel = np.where(sent_freq > 0, occurrences * np.log(n_s / np.maximum(sent_freq, 1)), 0.0)
    return TopicStats(occurrences, sent_freq, rel, model.phi)


def _floor_weights(raw: np.ndarray) -> np.ndarray:
    top = raw.max(initial=0.0)
    eps = WEIGHT_FLOOR_REL * top if top > 0 else WEIGHT_FLOOR_ABS
    return np.maximum(raw, eps)


def build_hypergraph(corpus, model, assignments) -> FuzzyHypergraph:
    """Assemble the topic-edge fuzzy hypergraph.

    psi[e, i] is the share of topic e's tags that fall in sentence i;
    the weight of edge e is rel(e) * sum_t tfc(t)*isf(t)*tft(t,e)*tdp(t),
    floored to keep every weight positive.
    """
    if model.k == 0:
        raise NoTopics("topic inference produced no topics")
    tag_counts = _tag_count_matrix(corpus, assignments, model.k)
    occurrences = tag_counts.sum(axis=1)
    psi = tag_counts / occurrences[:, None]

    term_stats = compute_term_stats(corpus, assignments, model.k)
    topic_stats = compute_topic_stats(corpus, model, assignments)
    salience = term_stats.tfc * term_stats.isf * term_stats.tdp
    raw = topic_stats.rel * (model.phi @ salience)
    return FuzzyHypergraph(psi, _floor_weights(raw))


def build_term_hypergraph(corpus) -> FuzzyHypergraph:
    """Alternate builder: one hyperedge per term, no topic model needed.

    psi[t, i] is the share of term t's occurrences found in sentence i
    and the weight of edge t is tfc(t) * isf(t), floored as above.
    """
    n_s = corpus.n_sentences
    n_t = corpus.n_terms
    tf = np.zeros((n_t, n_s), dtype=np.int64)
    for i, sent in enumerate(corpus.sentences):
        for term in sent.tokens:
            tf[term, i] += 1
    tfc = tf.sum(axis=1)
    sent_freq = (tf > 0).sum(axis=1)
    psi = tf / tfc[:, None]
    raw = tfc * np.log(n_s / sent_freq)
    return FuzzyHypergraph(psi, _floor_weights(raw))


def tfisf_vectors(corpus) -> np.ndarray:
    """(N_s, N_t) matrix of within-sentence term frequency times isf."""
    n_s = corpus.n_sentences
    n_t = corpus.n_terms
    tf = np.zeros((n_s, n_t), dtype=np.int64)
    sent_freq = np.zeros(n_t, dtype=np.int64)
    for i, sent in enumerate(corpus.sentences):
        for term in sent.tokens:
            tf[i, term] += 1
        for term in set(sent.tokens):
            sent_freq[term] += 1
    isf = np.log(n_s / sent_freq)
    return tf * isf


def term_topic_matrix(corpus, assignments, k: int) -> np.ndarray:
    """(K, N_t) column-normalized p(topic | term) from word-level tags."""
    te = term_topic_counts(corpus, assignments, k).astype(float)
    totals = te.sum(axis=0)
    nz = totals > 0
    te[:, nz] /= totals[nz]
    return te
