"""Selection tests: objective identities, greedy, oracles, baselines."""

import itertools
import time
import warnings

import numpy as np
import pytest

from conftest import random_hypergraph, random_instance
from topicsum.errors import ConfigError, EmptySelection, OracleGuard
from topicsum.hypergraph import FuzzyHypergraph
from topicsum.ranking import RankConfig, base_transition, pagerank_scores
from topicsum.selection import (GREEDY_GUARANTEE, BaselineConfig, SelectConfig,
                                coverage, exhaustive_optimum, grr_select,
                                mcs_select, mr_knapsack, mrc_select,
                                mrms_select, objective_F, oph_select)


def _uniform_pair_transition():
    h = FuzzyHypergraph(np.array([[0.5, 0.5]]), np.array([1.0]))
    return base_transition(h)


# ---------------------------------------------------------------- coverage

def test_coverage_empty_is_zero():
    P = _uniform_pair_transition()
    assert coverage([], P) == 0.0


def test_coverage_full_set_is_sentence_count():
    rng = np.random.default_rng(0)
    for _ in range(10):
        h = random_hypergraph(rng, n_s=int(rng.integers(2, 12)))
        P = base_transition(h)
        n = P.shape[0]
        assert coverage(range(n), P) == float(n)


def test_coverage_hand_value():
    P = _uniform_pair_transition()  # all entries 0.5
    assert coverage([0], P) == pytest.approx(1.5)
    assert coverage([1], P) == pytest.approx(1.5)


def test_coverage_ignores_duplicates():
    P = _uniform_pair_transition()
    assert coverage([0, 0], P) == coverage([0], P)


# --------------------------------------------------------------- objective

def test_objective_empty_is_zero():
    P = _uniform_pair_transition()
    assert objective_F([], np.array([0.4, 0.6]), P, SelectConfig()) == 0.0


def test_objective_nu_zero_is_relevance_sum():
    P = _uniform_pair_transition()
    p = np.array([0.4, 0.6])
    cfg = SelectConfig(coverage_balance=0.0)
    assert objective_F([1], p, P, cfg) == pytest.approx(0.6)
    assert objective_F([0, 1], p, P, cfg) == pytest.approx(1.0)


def test_objective_nu_one_full_set_is_one():
    rng = np.random.default_rng(1)
    h = random_hypergraph(rng, n_s=7)
    P = base_transition(h)
    p = rng.dirichlet(np.ones(7))
    cfg = SelectConfig(coverage_balance=1.0)
    assert objective_F(range(7), p, P, cfg) == pytest.approx(1.0)


# -------------------------------------------------------------------- mrc

def test_mrc_single_sentence():
    P = np.array([[1.0]])
    sel = mrc_select(np.array([1.0]), P, [10], SelectConfig(capacity=10))
    assert sel.selected == (0,)
    assert sel.total_words == 10


def test_mrc_nu_zero_equal_lengths_descending_relevance():
    rng = np.random.default_rng(2)
    h = random_hypergraph(rng, n_s=6, k=3)
    P = base_transition(h)
    p = np.array([0.05, 0.30, 0.10, 0.25, 0.20, 0.10])
    cfg = SelectConfig(coverage_balance=0.0, capacity=1000)
    sel = mrc_select(p, P, [5] * 6, cfg)
    picks = list(sel.selected)
    assert picks[:3] == [1, 3, 4]  # strictly descending p first
    assert sorted(picks) == list(range(6))


def test_mrc_respects_capacity_and_skips_infeasible():
    P = _uniform_pair_transition()
    p = np.array([0.6, 0.4])
    sel = mrc_select(p, P, [5, 5], SelectConfig(capacity=7))
    assert sel.selected == (0,)
    assert sel.total_words == 5


def test_mrc_paper_literal_budget_may_overshoot():
    P = _uniform_pair_transition()
    p = np.array([0.6, 0.4])
    sel = mrc_select(p, P, [5, 5], SelectConfig(capacity=7),
                     paper_literal_budget=True)
    assert sel.selected == (0, 1)
    assert sel.total_words == 10  # one pick past the budget, by design


def test_mrc_objective_equals_objective_f():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p, P, lengths = random_instance(rng)
        cfg = SelectConfig(capacity=int(sum(lengths) * 0.6) or 1)
        sel = mrc_select(p, P, lengths, cfg)
        assert sel.objective == pytest.approx(
            objective_F(sel.selected, p, P, cfg), abs=1e-12)
        assert sel.total_words <= cfg.capacity
        assert len(set(sel.selected)) == len(sel.selected)


def test_mrc_empty_selection_error():
    P = np.array([[1.0]])
    with pytest.raises(EmptySelection):
        mrc_select(np.array([1.0]), P, [9], SelectConfig(capacity=5))


def test_mrc_guarantee_smoke():
    rng = np.random.default_rng(4)
    for _ in range(10):
        p, P, lengths = random_instance(rng, n_max=9)
        cfg = SelectConfig(capacity=max(1, sum(lengths) // 2))
        greedy = mrc_select(p, P, lengths, cfg)
        best = exhaustive_optimum(p, P, lengths, cfg)
        assert greedy.objective >= GREEDY_GUARANTEE * best.objective - 1e-12


def test_mrc_deterministic():
    rng = np.random.default_rng(5)
    p, P, lengths = random_instance(rng)
    cfg = SelectConfig(capacity=sum(lengths) // 2)
    assert mrc_select(p, P, lengths, cfg) == mrc_select(p, P, lengths, cfg)


# ------------------------------------------------------------- exhaustive

def test_exhaustive_guard():
    rng = np.random.default_rng(6)
    h = random_hypergraph(rng, n_s=21, k=4)
    P = base_transition(h)
    with pytest.raises(OracleGuard):
        exhaustive_optimum(np.full(21, 1 / 21), P, [3] * 21, SelectConfig())


def test_exhaustive_tie_breaks_lexicographically():
    P = _uniform_pair_transition()
    p = np.array([0.5, 0.5])
    cfg = SelectConfig(coverage_balance=0.0, capacity=1)
    sel = exhaustive_optimum(p, P, [1, 1], cfg)
    assert sel.selected == (0,)


def test_exhaustive_nu_zero_matches_knapsack():
    rng = np.random.default_rng(7)
    for _ in range(15):
        p, P, lengths = random_instance(rng, n_max=10)
        cap = max(1, sum(lengths) // 2)
        cfg = SelectConfig(coverage_balance=0.0, capacity=cap)
        best = exhaustive_optimum(p, P, lengths, cfg)
        dp = mr_knapsack(p, lengths, cap)
        assert best.objective == pytest.approx(dp.objective, abs=1e-12)


def test_exhaustive_dominates_greedy():
    rng = np.random.default_rng(8)
    for _ in range(15):
        p, P, lengths = random_instance(rng, n_max=9)
        cfg = SelectConfig(capacity=max(1, sum(lengths) // 2))
        assert (exhaustive_optimum(p, P, lengths, cfg).objective
                >= mrc_select(p, P, lengths, cfg).objective - 1e-12)


# ---------------------------------------------------------------- knapsack

def test_knapsack_hand_case():
    sel = mr_knapsack(np.array([6.0, 5.0, 5.0]), [4, 3, 3], 6)
    assert sel.selected == (1, 2)
    assert sel.objective == pytest.approx(10.0)
    assert sel.total_words == 6


def test_knapsack_degenerate_budgets():
    p = np.array([1.0, 2.0, 3.0])
    all_in = mr_knapsack(p, [2, 2, 2], 100)
    assert all_in.selected == (0, 1, 2)
    nothing = mr_knapsack(p, [5, 6, 7], 4)
    assert nothing.selected == ()
    assert nothing.objective == 0.0
    assert nothing.total_words == 0


# --------------------------------------------------------------------- grr

def test_grr_rejects_identical_sentences():
    tfisf = np.array([[1.0, 2.0], [1.0, 2.0], [0.0, 1.0]])
    p = np.array([0.5, 0.3, 0.2])
    sel = grr_select(p, tfisf, [3, 3, 3], 100, 0.1)
    assert 0 in sel.selected and 1 not in sel.selected


def test_grr_threshold_one_is_pure_score_order():
    tfisf = np.array([[1.0, 0.0], [1.0, 0.0], [0.5, 0.5]])
    p = np.array([0.2, 0.5, 0.3])
    sel = grr_select(p, tfisf, [4, 4, 4], 8, 1.0)
    assert sel.selected == (1, 2)  # capacity stops the third


def test_grr_three_sentence_cosine_hand_case():
    v0 = np.array([1.0, 0.0, 0.0])
    v1 = np.array([0.05, np.sqrt(1 - 0.05 ** 2), 0.0])
    y = (0.5 - 0.0025) / np.sqrt(1 - 0.05 ** 2)
    v2 = np.array([0.05, y, np.sqrt(1 - 0.0025 - y * y)])
    tfisf = np.vstack([v0, v1, v2])
    p = np.array([0.2, 0.5, 0.3])
    sel = grr_select(p, tfisf, [3, 3, 3], 100, 0.1)
    assert sel.selected == (1, 0)  # the 0.5-similar pair never co-selected
    assert not {1, 2} <= set(sel.selected)


def test_grr_threshold_validation():
    with pytest.raises(ConfigError):
        grr_select(np.array([1.0]), np.array([[1.0]]), [1], 10, 1.5)


# --------------------------------------------------------------------- oph

def test_oph_single_edge_takes_argmax():
    h = FuzzyHypergraph(np.array([[0.2, 0.5, 0.3]]), np.array([1.0]))
    sel = oph_select(h, [3, 3, 3], 100)
    assert sel.selected == (1,)


def test_oph_duplicate_peaks_collapse():
    h = FuzzyHypergraph(np.array([[0.1, 0.9], [0.2, 0.8]]),
                        np.array([2.0, 1.0]))
    sel = oph_select(h, [3, 3], 100)
    assert sel.selected == (1,)


def test_oph_psi_tie_prefers_smallest_id():
    h = FuzzyHypergraph(np.array([[0.5, 0.5]]), np.array([1.0]))
    sel = oph_select(h, [3, 3], 100)
    assert sel.selected == (0,)


def test_oph_respects_capacity():
    h = FuzzyHypergraph(np.eye(3), np.array([3.0, 2.0, 1.0]))
    sel = oph_select(h, [4, 4, 4], 8)
    assert sel.selected == (0, 1)


# -------------------------------------------------------------------- mrms

def test_mrms_k1_hand_case():
    P = np.array([[0.2, 0.5, 0.3], [0.4, 0.1, 0.5], [0.3, 0.3, 0.4]])
    r = np.array([0.5, 0.3, 0.2])
    cfg = BaselineConfig(mrms_size=1)
    sel = mrms_select(r, P, [3, 3, 3], 100, cfg)
    assert sel.selected == (0,)
    assert sel.objective == pytest.approx(3.0 * 0.25 - 0.25 * 0.2)


def test_mrms_zero_similarity_takes_top_k():
    P = np.zeros((4, 4))
    r = np.array([0.1, 0.4, 0.2, 0.3])
    sel = mrms_select(r, P, [3, 3, 3, 3], 100, BaselineConfig(mrms_size=2))
    assert sel.selected == (1, 3)


def test_mrms_objective_nondecreasing_along_greedy_path():
    rng = np.random.default_rng(9)
    for _ in range(10):
        p, P, lengths = random_instance(rng, n_max=8)
        values = []
        for k in range(1, len(p) + 1):
            sel = mrms_select(p, P, lengths, 10 ** 6,
                              BaselineConfig(mrms_size=k))
            values.append(sel.objective)
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_mrms_budget_translation_binds():
    P = np.zeros((3, 3))
    r = np.array([0.5, 0.3, 0.2])
    sel = mrms_select(r, P, [4, 4, 4], 8, BaselineConfig())
    assert sel.selected == (0, 1)
    assert sel.total_words <= 8


def test_mrms_config_validation():
    with pytest.raises(ConfigError):
        BaselineConfig(mrms_tradeoff=1.5).validate()


# --------------------------------------------------------------------- mcs

def _mcs_value(ids, sim, chi3):
    ids = set(ids)
    cross = sum(sim[i, j] for i in range(len(sim)) if i not in ids for j in ids)
    within = sum(sim[i, j] for i in ids for j in ids)
    return cross - chi3 * within


def test_mcs_greedy_reaches_enumeration_optimum():
    # One broad topic; sentence 0 hogs it, so selecting it is penalized.
    h = FuzzyHypergraph(np.array([[0.7, 0.1, 0.1, 0.1]]), np.array([1.0]))
    P = base_transition(h)
    sim = (P + P.T) / 2
    chi3 = 2.0
    best = max(_mcs_value(s, sim, chi3)
               for r in range(5)
               for s in itertools.combinations(range(4), r))
    sel = mcs_select(np.full(4, 0.25), P, [3] * 4, 100, chi3)
    assert sel.selected == (1,)  # smallest id among the tied optima
    assert sel.objective == pytest.approx(best, abs=1e-12)


def test_mcs_may_select_nothing():
    # Three mutually peaked sentences: every subset scores below empty.
    h = FuzzyHypergraph(np.array([[0.8, 0.1, 0.1],
                                  [0.1, 0.8, 0.1],
                                  [0.1, 0.1, 0.8]]),
                        np.array([1.0, 1.0, 1.0]))
    P = base_transition(h)
    sim = (P + P.T) / 2
    best = max(_mcs_value(s, sim, 4.2)
               for r in range(4)
               for s in itertools.combinations(range(3), r))
    assert best == 0.0  # enumeration agrees the empty set is optimal
    sel = mcs_select(np.full(3, 1 / 3), P, [3, 3, 3], 100, 4.2)
    assert sel.selected == ()
    assert sel.objective == 0.0
    assert sel.total_words == 0


def test_mcs_identical_twins_never_coselected():
    h = FuzzyHypergraph(np.array([[0.45, 0.45, 0.1]]), np.array([1.0]))
    P = base_transition(h)
    sel = mcs_select(np.full(3, 1 / 3), P, [3, 3, 3], 100, 4.2)
    assert not {0, 1} <= set(sel.selected)


def test_mcs_chi_validation():
    P = _uniform_pair_transition()
    with pytest.raises(ConfigError):
        mcs_select(np.array([0.5, 0.5]), P, [1, 1], 10, 0.0)


# -------------------------------------------------- cross-selector checks

def test_every_selector_respects_capacity():
    rng = np.random.default_rng(10)
    for _ in range(10):
        p, P, lengths = random_instance(rng, n_max=9)
        cap = max(min(lengths), sum(lengths) // 2)
        cfg = SelectConfig(capacity=cap)
        tfisf = rng.uniform(0, 1, size=(len(p), 6))
        h = random_hypergraph(rng, n_s=len(p), k=4)
        for sel in (
            mrc_select(p, P, lengths, cfg),
            mr_knapsack(p, lengths, cap),
            grr_select(p, tfisf, lengths, cap, 0.5),
            oph_select(h, lengths, cap),
            mrms_select(p, P, lengths, cap, BaselineConfig()),
            mcs_select(p, P, lengths, cap, 4.2),
        ):
            assert sel.total_words <= cap
            assert len(set(sel.selected)) == len(sel.selected)


def test_selection_scoring_scales_quadratically():
    """Doubling the corpus should not blow past the quadratic regime."""
    rng = np.random.default_rng(11)

    def run(n):
        h = random_hypergraph(rng, n_s=n, k=20)
        P = base_transition(h)
        q = rng.dirichlet(np.ones(n))
        Pq = 0.25 * q[None, :] + 0.75 * P
        cfg = SelectConfig(capacity=5 * n // 2)
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                scores = pagerank_scores(Pq, RankConfig(max_iter=400))
            mrc_select(scores, P, [5] * n, cfg)
            best = min(best, time.perf_counter() - t0)
        return best

    small, large = run(250), run(500)
    assert large < 20 * max(small, 1e-4)
