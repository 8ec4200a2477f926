"""Hypergraph construction tests: hand-computed case plus properties."""

import math

import numpy as np
import pytest

from conftest import random_assignments, random_model, random_token_corpus
from topicsum.corpus import corpus_from_token_lists
from topicsum.errors import NoTopics
from topicsum.hdp import TopicAssignments, TopicModel
from topicsum.hypergraph import (WEIGHT_FLOOR_REL, build_hypergraph,
                                 build_term_hypergraph, compute_term_stats,
                                 compute_topic_stats, term_topic_matrix,
                                 tfisf_vectors)

LN2 = math.log(2.0)


@pytest.fixture
def hand_case():
    """Two sentences [a a] and [b c c]; tags (0,0) and (0,1,1)."""
    corpus = corpus_from_token_lists([[["a", "a"], ["b", "c", "c"]]])
    assignments = TopicAssignments(((0, 0), (0, 1, 1)))
    model = TopicModel(2, np.array([[0.5, 0.5, 0.0], [0.0, 0.0, 1.0]]))
    return corpus, model, assignments


def test_incidence_is_tag_share(hand_case):
    corpus, model, assignments = hand_case
    h = build_hypergraph(corpus, model, assignments)
    np.testing.assert_allclose(h.psi, [[2 / 3, 1 / 3], [0.0, 1.0]])
    np.testing.assert_allclose(h.psi.sum(axis=1), 1.0)


def test_term_stats_hand_values(hand_case):
    corpus, model, assignments = hand_case
    ts = compute_term_stats(corpus, assignments, model.k)
    np.testing.assert_array_equal(ts.tfc, [2, 1, 2])
    np.testing.assert_array_equal(ts.sent_freq, [1, 1, 1])
    np.testing.assert_allclose(ts.isf, [LN2, LN2, LN2])
    # every term is tagged by exactly one topic: zero entropy, full tdp
    np.testing.assert_allclose(ts.entropy, 0.0)
    np.testing.assert_allclose(ts.tdp, 1.0)


def test_topic_stats_hand_values(hand_case):
    corpus, model, assignments = hand_case
    st = compute_topic_stats(corpus, model, assignments)
    np.testing.assert_array_equal(st.occurrences, [3, 2])
    np.testing.assert_array_equal(st.sent_freq, [2, 1])
    # topic 0 appears in every sentence: its spread discount is ln(2/2)=0
    np.testing.assert_allclose(st.rel, [0.0, 2 * LN2])


def test_edge_weights_hand_values(hand_case):
    corpus, model, assignments = hand_case
    h = build_hypergraph(corpus, model, assignments)
    w1 = 2 * LN2 * (2 * LN2)  # rel(e1) * phi1 . (tfc*isf*tdp)
    assert h.weights[1] == pytest.approx(w1, rel=1e-12)
    # topic 0's raw weight is exactly zero -> floored relative to the max
    assert h.weights[0] == pytest.approx(WEIGHT_FLOOR_REL * w1, rel=1e-9)
    assert np.all(h.weights > 0)


def test_mixed_term_entropy():
    # term "x" split between two topics 1:1 -> entropy ln 2
    corpus = corpus_from_token_lists([[["x", "x"]]])
    assignments = TopicAssignments(((0, 1),))
    ts = compute_term_stats(corpus, assignments, 2)
    assert ts.entropy[0] == pytest.approx(LN2)
    assert ts.tdp[0] == pytest.approx(1.0 / (1.0 + LN2))


def test_no_topics_raises(hand_case):
    corpus, _, _ = hand_case
    with pytest.raises(NoTopics):
        build_hypergraph(corpus, TopicModel(0, np.zeros((0, 3))),
                         TopicAssignments(((), ())))


def test_term_hypergraph_hand_values(hand_case):
    corpus, _, _ = hand_case
    h = build_term_hypergraph(corpus)
    np.testing.assert_allclose(h.psi, [[1, 0], [0, 1], [0, 1]])
    np.testing.assert_allclose(h.weights, [2 * LN2, LN2, 2 * LN2])


def test_tfisf_vectors_hand_values(hand_case):
    corpus, _, _ = hand_case
    v = tfisf_vectors(corpus)
    np.testing.assert_allclose(v, [[2 * LN2, 0, 0], [0, LN2, 2 * LN2]])


def test_term_topic_matrix_columns_normalized(hand_case):
    corpus, model, assignments = hand_case
    m = term_topic_matrix(corpus, assignments, model.k)
    np.testing.assert_allclose(m, [[1, 1, 0], [0, 0, 1]])


def test_random_hypergraphs_are_valid():
    rng = np.random.default_rng(12)
    for _ in range(25):
        corpus = random_token_corpus(rng)
        assignments, k = random_assignments(rng, corpus)
        model = random_model(rng, k, corpus.n_terms)
        h = build_hypergraph(corpus, model, assignments)
        assert h.psi.shape == (k, corpus.n_sentences)
        np.testing.assert_allclose(h.psi.sum(axis=1), 1.0, atol=1e-9)
        assert np.all(h.psi >= 0)
        assert np.all(h.weights > 0)


def test_term_hypergraph_valid_on_random_corpora():
    rng = np.random.default_rng(13)
    for _ in range(10):
        corpus = random_token_corpus(rng)
        h = build_term_hypergraph(corpus)
        assert h.n_edges == corpus.n_terms
        np.testing.assert_allclose(h.psi.sum(axis=1), 1.0, atol=1e-9)
        assert np.all(h.weights > 0)
