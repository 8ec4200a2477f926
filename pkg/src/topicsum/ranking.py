"""Random-walk sentence ranking over the fuzzy hypergraph.

A walker at sentence i first draws a hyperedge incident to i (bigger
weight and stronger membership win), then lands on a sentence drawn
from that edge's membership distribution.  Mixing this base chain with
a query-relevance jump distribution gives the biased chain; its damped
stationary distribution is the sentence score vector.

The stationary update follows the source formula literally, excluding
the self-transition term; because that exclusion leaks probability
mass, each iterate is renormalized to sum one (a recorded decision).
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .corpus import normalize_tokens
from .errors import ConfigError, ConvergenceWarning
from .hypergraph import term_topic_matrix

logger = logging.getLogger("topicsum")


@dataclass(frozen=True)
class RankConfig:
    query_balance: float = 0.75  # weight of the content chain vs the query jump
    damping: float = 0.99
    tol: float = 1e-10
    max_iter: int = 10000

    def validate(self) -> None:
        if not 0.0 <= self.query_balance <= 1.0:
            raise ConfigError("query_balance must lie in [0, 1]")
        if not 0.0 <= self.damping < 1.0:
            raise ConfigError("damping must lie in [0, 1)")
        if self.tol <= 0 or self.max_iter < 1:
            raise ConfigError("tol must be positive and max_iter >= 1")


@dataclass(frozen=True)
class RelevanceScores:
    p: np.ndarray
    iterations: int
    converged: bool


@dataclass(frozen=True)
class TransitionModel:
    P: np.ndarray
    q_rel: np.ndarray
    Pq: np.ndarray
    query_balance: float


def base_transition(h) -> np.ndarray:
    """Row-stochastic two-step walk matrix P[i, j] = p(j | i)."""
    weighted = h.psi * h.weights[:, None]          # (K, N_s)
    m = weighted.T @ h.psi                         # Σ_e ψ_ei w_e ψ_ej
    row_mass = weighted.sum(axis=0)                # Σ_e ψ_ei w_e
    assert np.all(row_mass > 0), "every sentence must belong to some edge"
    return m / row_mass[:, None]


def _query_term_weights(query, corpus) -> tuple[np.ndarray, np.ndarray]:
    """In-vocabulary query term ids with normalized frequencies."""
    terms = normalize_tokens(query)
    ids = [corpus.vocabulary.id_of(t) for t in terms]
    ids = [t for t in ids if t is not None]
    if not terms:
        logger.warning("query empty after normalization; using uniform relevance")
        return np.empty(0, dtype=np.int64), np.empty(0)
    if not ids:
        logger.warning("no query term found in corpus vocabulary; using uniform relevance")
        return np.empty(0, dtype=np.int64), np.empty(0)
    uniq, counts = np.unique(np.asarray(ids, dtype=np.int64), return_counts=True)
    return uniq, counts / counts.sum()


def _relevance_from_edge_dist(psi, edge_given_term, term_ids, term_probs, n_s) -> np.ndarray:
    if term_ids.size == 0:
        return np.full(n_s, 1.0 / n_s)
    # q_rel[j] = Σ_t p(t|q) Σ_e ψ_{e,j} p(e|t)
    mix = edge_given_term[:, term_ids] @ term_probs  # (K,)
    return mix @ psi


def query_relevance(query, corpus, assignments, h) -> np.ndarray:
    """p(j | q) under the topic-edge hypergraph.

    Query terms missing from the vocabulary are dropped and the rest
    renormalized; a query with no usable term falls back to the uniform
    distribution (generic summarization).
    """
    term_ids, term_probs = _query_term_weights(query, corpus)
    edge_given_term = term_topic_matrix(corpus, assignments, h.n_edges)
    return _relevance_from_edge_dist(h.psi, edge_given_term, term_ids, term_probs, h.n_vertices)


def term_query_relevance(query, corpus, h) -> np.ndarray:
    """p(j | q) under the term-edge hypergraph (edge e is term e)."""
    term_ids, term_probs = _query_term_weights(query, corpus)
    if term_ids.size == 0:
        return np.full(h.n_vertices, 1.0 / h.n_vertices)
    return term_probs @ h.psi[term_ids]


def biased_transition(P, q_rel, query_balance: float) -> np.ndarray:
    if not 0.0 <= query_balance <= 1.0:
        raise ConfigError("query_balance must lie in [0, 1]")
    return (1.0 - query_balance) * q_rel[None, :] + query_balance * P


def build_transition_model(h, q_rel, cfg: RankConfig) -> TransitionModel:
    P = base_transition(h)
    Pq = biased_transition(P, q_rel, cfg.query_balance)
    return TransitionModel(P, q_rel, Pq, cfg.query_balance)


def pagerank_scores(Pq, cfg: RankConfig, init=None) -> RelevanceScores:
    """Damped stationary scores of the biased chain.

    Iterates p[j] <- (1-mu)/N_s + mu * Σ_{i != j} Pq[i, j] p[i] from the
    uniform vector (or ``init``), renormalizing each iterate to sum 1,
    until the L1 change drops below tol.  Hitting max_iter first raises
    ConvergenceWarning carrying the last iterate.
    """
    cfg.validate()
    n = Pq.shape[0]
    mu = cfg.damping
    if mu == 0.0:
        # The update is the constant vector 1/n; renormalizing it in
        # floats can perturb the last bit, so return the exact fixed
        # point directly (zero damping must give exactly uniform).
        return RelevanceScores(np.full(n, 1.0 / n), 1, True)
    diag = np.diag(Pq)
    if init is None:
        p = np.full(n, 1.0 / n)
    else:
        p = np.asarray(init, dtype=float)
        p = p / p.sum()
    for it in range(1, cfg.max_iter + 1):
        nxt = (1.0 - mu) / n + mu * (Pq.T @ p - diag * p)
        nxt /= nxt.sum()
        delta = np.abs(nxt - p).sum()
        p = nxt
        if delta < cfg.tol:
            return RelevanceScores(p, it, True)
    warnings.warn(ConvergenceWarning(
        f"power iteration did not reach tol={cfg.tol} in {cfg.max_iter} iterations",
        scores=p, iterations=cfg.max_iter))
    return RelevanceScores(p, cfg.max_iter, False)
