"""Three-level hierarchical Dirichlet process topic inference.

Topics are shared corpus-wide while every document and every sentence
keeps its own mixture over them.  Inference is collapsed Gibbs sampling
in the Chinese Restaurant Franchise view: words sit at tables inside
their sentence, sentence tables are customers of document-level tables,
and document tables are customers of corpus-level tables, each serving
one topic.  The random measures themselves are integrated out; only
seating arrangements and count statistics are tracked.

All randomness flows through one seeded generator and every categorical
draw uses a single uniform plus an inverse-CDF scan, so runs are
bit-reproducible for a given seed.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import ConfigError


@dataclass(frozen=True)
class HdpConfig:
    gamma: float = 7.0   # corpus-level concentration
    beta: float = 1.5    # document-level concentration
    alpha: float = 0.75  # sentence-level concentration
    zeta: float = 0.5    # symmetric Dirichlet concentration over terms
    sweeps: int = 200
    burn_in: int = 100
    seed: int = 0

    def validate(self) -> None:
        if min(self.gamma, self.beta, self.alpha, self.zeta) <= 0:
            raise ConfigError("concentration parameters must be positive")
        if self.sweeps < 1:
            raise ConfigError("sweeps must be >= 1")
        if not 0 <= self.burn_in < self.sweeps:
            raise ConfigError("burn_in must satisfy 0 <= burn_in < sweeps")


@dataclass(frozen=True)
class TopicModel:
    k: int
    phi: np.ndarray  # (K, N_t), rows sum to 1, entries > 0


@dataclass(frozen=True)
class TopicAssignments:
    z: tuple  # per sentence, tuple of topic ids aligned with tokens

    def flat(self):
        for tags in self.z:
            yield from tags


def _sample_index(rng, weights) -> int:
    """Draw an index proportional to ``weights`` using one uniform."""
    total = 0.0
    cum = []
    for w in weights:
        total += w
        cum.append(total)
    u = rng.random() * total
    for i, c in enumerate(cum):
        if u < c:
            return i
    return len(cum) - 1


class _SentTable:
    __slots__ = ("sent", "doc", "n", "parent", "terms")

    def __init__(self, sent, doc, parent):
        self.sent = sent
        self.doc = doc
        self.n = 0
        self.parent = parent
        self.terms = {}


class _DocTable:
    __slots__ = ("doc", "n", "parent", "children")

    def __init__(self, doc, parent):
        self.doc = doc
        self.n = 0
        self.parent = parent
        self.children = []


class _Topic:
    __slots__ = ("n", "children")

    def __init__(self):
        self.n = 0
        self.children = []


class SamplerState:
    """Mutable CRF seating state for one Gibbs chain."""

    def __init__(self, corpus, cfg: HdpConfig):
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)
        self.n_terms = corpus.n_terms
        self.zeta = cfg.zeta
        self.zeta_w = cfg.zeta / corpus.n_terms

        # flattened corpus view
        doc_of_sent = corpus.sentence_doc_indices()
        self.word_term: list[int] = []
        self.word_sent: list[int] = []
        for s, sent in enumerate(corpus.sentences):
            for t in sent.tokens:
                self.word_term.append(t)
                self.word_sent.append(s)
        self.sent_doc = doc_of_sent
        self.n_words = len(self.word_term)
        self.n_sents = corpus.n_sentences
        self.n_docs = corpus.n_documents

        # seating bookkeeping
        self.word_table: list[int] = [-1] * self.n_words
        self.tables: dict[int, _SentTable] = {}
        self.sent_table_ids: list[list[int]] = [[] for _ in range(self.n_sents)]
        self.doc_tables: dict[int, _DocTable] = {}
        self.doc_table_ids: list[list[int]] = [[] for _ in range(self.n_docs)]
        self.sent_tables_in_doc: list[int] = [0] * self.n_docs
        self.topics: dict[int, _Topic] = {}
        self.live_topics: list[int] = []
        self.total_doc_tables = 0
        self._next_table = 0
        self._next_doc_table = 0
        self._next_topic = 0

        # per-topic term counts in a growable row store
        cap = 16
        self.n_et = np.zeros((cap, self.n_terms), dtype=np.int64)
        self.n_e = np.zeros(cap, dtype=np.int64)
        self.topic_row: dict[int, int] = {}
        self._free_rows = list(range(cap - 1, -1, -1))

    # -- topic row management -------------------------------------------

    def _new_topic(self) -> int:
        e = self._next_topic
        self._next_topic += 1
        if not self._free_rows:
            old = self.n_et
            cap = old.shape[0]
            self.n_et = np.zeros((cap * 2, self.n_terms), dtype=np.int64)
            self.n_et[:cap] = old
            grown = np.zeros(cap * 2, dtype=np.int64)
            grown[:cap] = self.n_e
            self.n_e = grown
            self._free_rows = list(range(cap * 2 - 1, cap - 1, -1))
        self.topic_row[e] = self._free_rows.pop()
        self.topics[e] = _Topic()
        self.live_topics.append(e)
        return e

    def _drop_topic(self, e: int) -> None:
        row = self.topic_row.pop(e)
        self.n_et[row] = 0
        self.n_e[row] = 0
        self._free_rows.append(row)
        self.live_topics.remove(e)
        del self.topics[e]

    @property
    def n_topics(self) -> int:
        return len(self.live_topics)

    # -- structural helpers ---------------------------------------------

    def _new_doc_table(self, doc: int, topic: int) -> int:
        d = self._next_doc_table
        self._next_doc_table += 1
        self.doc_tables[d] = _DocTable(doc, topic)
        self.doc_table_ids[doc].append(d)
        self.topics[topic].n += 1
        self.topics[topic].children.append(d)
        self.total_doc_tables += 1
        return d

    def _drop_doc_table(self, d: int) -> None:
        dt = self.doc_tables.pop(d)
        self.doc_table_ids[dt.doc].remove(d)
        self.total_doc_tables -= 1
        topic = self.topics[dt.parent]
        topic.n -= 1
        topic.children.remove(d)
        if topic.n == 0:
            self._drop_topic(dt.parent)

    def _new_sent_table(self, sent: int, doc_table: int) -> int:
        t = self._next_table
        self._next_table += 1
        doc = self.doc_tables[doc_table].doc
        self.tables[t] = _SentTable(sent, doc, doc_table)
        self.sent_table_ids[sent].append(t)
        self.sent_tables_in_doc[doc] += 1
        dt = self.doc_tables[doc_table]
        dt.n += 1
        dt.children.append(t)
        return t

    def _drop_sent_table(self, t: int) -> None:
        table = self.tables.pop(t)
        self.sent_table_ids[table.sent].remove(t)
        self.sent_tables_in_doc[table.doc] -= 1
        dt = self.doc_tables[table.parent]
        dt.n -= 1
        dt.children.remove(t)
        if dt.n == 0:
            self._drop_doc_table(table.parent)

    def topic_of_table(self, t: int) -> int:
        return self.doc_tables[self.tables[t].parent].parent

    # -- word-level move -------------------------------------------------

    def _seat_word(self, w: int, remove: bool) -> None:
        term = self.word_term[w]
        s = self.word_sent[w]
        j = self.sent_doc[s]
        if remove:
            t = self.word_table[w]
            table = self.tables[t]
            table.n -= 1
            c = table.terms[term] - 1
            if c:
                table.terms[term] = c
            else:
                del table.terms[term]
            row = self.topic_row[self.doc_tables[table.parent].parent]
            self.n_et[row, term] -= 1
            self.n_e[row] -= 1
            if table.n == 0:
                self._drop_sent_table(t)

        live = self.live_topics
        rows = [self.topic_row[e] for e in live]
        # per-topic predictive for this term under Dirichlet-multinomial
        f = ((self.n_et[rows, term] + self.zeta_w) / (self.n_e[rows] + self.zeta)).tolist()
        f_of = dict(zip(live, f))

        new_term_prob = 1.0 / self.n_terms
        corpus_num = new_term_prob * self.cfg.gamma
        for e, fe in zip(live, f):
            corpus_num += self.topics[e].n * fe
        p_corpus = corpus_num / (self.total_doc_tables + self.cfg.gamma)

        doc_num = self.cfg.beta * p_corpus
        for d in self.doc_table_ids[j]:
            dt = self.doc_tables[d]
            doc_num += dt.n * f_of[dt.parent]
        p_doc = doc_num / (self.sent_tables_in_doc[j] + self.cfg.beta)

        cands = self.sent_table_ids[s]
        weights = []
        for t2 in cands:
            tab = self.tables[t2]
            weights.append(tab.n * f_of[self.doc_tables[tab.parent].parent])
        weights.append(self.cfg.alpha * p_doc)

        k = _sample_index(self.rng, weights)
        if k < len(cands):
            chosen = cands[k]
        else:
            chosen = self._open_table_for_word(s, j, term, f_of, new_term_prob)
        table = self.tables[chosen]
        table.n += 1
        table.terms[term] = table.terms.get(term, 0) + 1
        row = self.topic_row[self.doc_tables[table.parent].parent]
        self.n_et[row, term] += 1
        self.n_e[row] += 1
        self.word_table[w] = chosen

    def _open_table_for_word(self, s, j, term, f_of, new_term_prob) -> int:
        dt_ids = self.doc_table_ids[j]
        weights = [self.doc_tables[d].n * f_of[self.doc_tables[d].parent] for d in dt_ids]
        weights.append(self.cfg.beta * self._corpus_predictive(f_of, new_term_prob))
        k = _sample_index(self.rng, weights)
        if k < len(dt_ids):
            parent = dt_ids[k]
        else:
            topic = self._pick_topic_for_word(f_of, new_term_prob)
            parent = self._new_doc_table(j, topic)
        return self._new_sent_table(s, parent)

    def _corpus_predictive(self, f_of, new_term_prob) -> float:
        num = new_term_prob * self.cfg.gamma
        for e, topic in self.topics.items():
            num += topic.n * f_of[e]
        return num / (self.total_doc_tables + self.cfg.gamma)

    def _pick_topic_for_word(self, f_of, new_term_prob) -> int:
        cands = self.live_topics
        weights = [self.topics[e].n * f_of[e] for e in cands]
        weights.append(self.cfg.gamma * new_term_prob)
        k = _sample_index(self.rng, weights)
        if k < len(cands):
            return cands[k]
        return self._new_topic()

    # -- block moves -------------------------------------------------------

    def _block_logliks(self, terms, counts, total):
        """log p(block | topic) for every live topic plus a fresh one."""
        rows = [self.topic_row[e] for e in self.live_topics]
        base = self.n_et[np.ix_(rows, terms)] + self.zeta_w
        per_topic = (gammaln(base + counts) - gammaln(base)).sum(axis=1)
        tot = self.n_e[rows] + self.zeta
        per_topic -= gammaln(tot + total) - gammaln(tot)
        fresh = float((gammaln(self.zeta_w + counts) - gammaln(self.zeta_w)).sum()
                      - (gammaln(self.zeta + total) - gammaln(self.zeta)))
        return per_topic, fresh

    def _pick_topic_for_block(self, log_f, log_fresh):
        shift = max(log_f.max(initial=-math.inf), log_fresh)
        weights = [self.topics[e].n * math.exp(lf - shift)
                   for e, lf in zip(self.live_topics, log_f)]
        weights.append(self.cfg.gamma * math.exp(log_fresh - shift))
        k = _sample_index(self.rng, weights)
        if k < len(self.live_topics):
            return self.live_topics[k]
        return self._new_topic()

    def _resample_table_dish(self, t: int) -> None:
        table = self.tables[t]
        if not table.terms:
            return
        j = table.doc
        terms = np.fromiter(table.terms.keys(), dtype=np.int64)
        counts = np.fromiter(table.terms.values(), dtype=np.int64)
        total = table.n

        # detach the block from its current chain
        old_dt = table.parent
        dt = self.doc_tables[old_dt]
        row = self.topic_row[dt.parent]
        np.subtract.at(self.n_et[row], terms, counts)
        self.n_e[row] -= total
        dt.n -= 1
        dt.children.remove(t)
        if dt.n == 0:
            self._drop_doc_table(old_dt)

        log_f, log_fresh = self._block_logliks(terms, counts, total)
        topic_pos = {e: i for i, e in enumerate(self.live_topics)}

        # corpus-level predictive of the block, in log space
        shift = max(log_f.max(initial=-math.inf), log_fresh)
        corpus_num = self.cfg.gamma * math.exp(log_fresh - shift)
        for e, lf in zip(self.live_topics, log_f):
            corpus_num += self.topics[e].n * math.exp(lf - shift)
        log_corpus = math.log(corpus_num) + shift - math.log(self.total_doc_tables + self.cfg.gamma)

        dt_ids = self.doc_table_ids[j]
        log_weights = []
        for d in dt_ids:
            cand = self.doc_tables[d]
            log_weights.append(math.log(cand.n) + log_f[topic_pos[cand.parent]])
        log_weights.append(math.log(self.cfg.beta) + log_corpus)
        m = max(log_weights)
        k = _sample_index(self.rng, [math.exp(lw - m) for lw in log_weights])
        if k < len(dt_ids):
            parent = dt_ids[k]
        else:
            topic = self._pick_topic_for_block(log_f, log_fresh)
            parent = self._new_doc_table(j, topic)

        table.parent = parent
        new_dt = self.doc_tables[parent]
        new_dt.n += 1
        new_dt.children.append(t)
        row = self.topic_row[new_dt.parent]
        np.add.at(self.n_et[row], terms, counts)
        self.n_e[row] += total

    def _resample_doc_table_dish(self, d: int) -> None:
        dt = self.doc_tables[d]
        agg: dict[int, int] = {}
        total = 0
        for t in dt.children:
            for term, c in self.tables[t].terms.items():
                agg[term] = agg.get(term, 0) + c
            total += self.tables[t].n
        if not agg:
            return
        terms = np.fromiter(agg.keys(), dtype=np.int64)
        counts = np.fromiter(agg.values(), dtype=np.int64)

        old_topic = self.topics[dt.parent]
        row = self.topic_row[dt.parent]
        np.subtract.at(self.n_et[row], terms, counts)
        self.n_e[row] -= total
        old_topic.n -= 1
        old_topic.children.remove(d)
        if old_topic.n == 0:
            self._drop_topic(dt.parent)

        log_f, log_fresh = self._block_logliks(terms, counts, total)
        topic = self._pick_topic_for_block(log_f, log_fresh)
        dt.parent = topic
        self.topics[topic].n += 1
        self.topics[topic].children.append(d)
        row = self.topic_row[topic]
        np.add.at(self.n_et[row], terms, counts)
        self.n_e[row] += total

    # -- snapshots ---------------------------------------------------------

    def tag_array(self) -> np.ndarray:
        """Topic id (original, unrelabeled) for each word in corpus order."""
        return np.fromiter(
            (self.topic_of_table(self.word_table[w]) for w in range(self.n_words)),
            dtype=np.int64, count=self.n_words)

    def snapshot(self) -> dict:
        order = sorted(self.live_topics)
        return {
            "tags": self.tag_array(),
            "topics": order,
            "n_e": {e: int(self.n_e[self.topic_row[e]]) for e in order},
            "n_et": {e: self.n_et[self.topic_row[e]].copy() for e in order},
        }

    def clone(self) -> "SamplerState":
        return copy.deepcopy(self)


def init_state(corpus, cfg: HdpConfig) -> SamplerState:
    """Seat every word sequentially from its CRF conditional."""
    cfg.validate()
    state = SamplerState(corpus, cfg)
    for w in range(state.n_words):
        state._seat_word(w, remove=False)
    return state


def gibbs_sweep(state: SamplerState, corpus=None, cfg=None) -> SamplerState:
    """One full sweep: every word, then every table's dish at both levels."""
    for w in range(state.n_words):
        state._seat_word(w, remove=True)
    for s in range(state.n_sents):
        for t in list(state.sent_table_ids[s]):
            state._resample_table_dish(t)
    for j in range(state.n_docs):
        for d in list(state.doc_table_ids[j]):
            if d in state.doc_tables:
                state._resample_doc_table_dish(d)
    return state


def _crp_log_prob(sizes, concentration) -> float:
    """Log EPPF of one Chinese Restaurant seating."""
    n = sum(sizes)
    if n == 0:
        return 0.0
    ll = len(sizes) * math.log(concentration)
    ll += sum(math.lgamma(sz) for sz in sizes)
    ll += math.lgamma(concentration) - math.lgamma(concentration + n)
    return ll


def joint_log_likelihood(state: SamplerState, corpus=None, cfg=None) -> float:
    """Log of the collapsed joint probability of words and all seatings."""
    ll = 0.0
    for s in range(state.n_sents):
        sizes = [state.tables[t].n for t in state.sent_table_ids[s]]
        ll += _crp_log_prob(sizes, state.cfg.alpha)
    for j in range(state.n_docs):
        sizes = [state.doc_tables[d].n for d in state.doc_table_ids[j]]
        ll += _crp_log_prob(sizes, state.cfg.beta)
    ll += _crp_log_prob([state.topics[e].n for e in state.live_topics], state.cfg.gamma)
    for e in state.live_topics:
        row = state.topic_row[e]
        counts = state.n_et[row]
        nz = counts[counts > 0]
        ll += float((gammaln(nz + state.zeta_w) - gammaln(state.zeta_w)).sum())
        ll += math.lgamma(state.zeta) - math.lgamma(state.zeta + float(state.n_e[row]))
    return ll


def _finalize(snap: dict, corpus, cfg: HdpConfig) -> tuple[TopicModel, TopicAssignments]:
    order = sorted(snap["topics"], key=lambda e: (-snap["n_e"][e], e))
    relabel = {e: i for i, e in enumerate(order)}
    k = len(order)
    phi = np.empty((k, corpus.n_terms))
    for e in order:
        row = snap["n_et"][e]
        phi[relabel[e]] = (row + cfg.zeta / corpus.n_terms) / (snap["n_e"][e] + cfg.zeta)
    tags = snap["tags"]
    z = []
    pos = 0
    for sent in corpus.sentences:
        w = len(sent.tokens)
        z.append(tuple(relabel[int(e)] for e in tags[pos:pos + w]))
        pos += w
    return TopicModel(k, phi), TopicAssignments(tuple(z))


def run_inference(corpus, cfg: HdpConfig) -> tuple[TopicModel, TopicAssignments]:
    """Gibbs-sample and return the best post-burn-in state's estimators.

    The kept state maximizes joint_log_likelihood over post-burn-in
    sweeps; phi is the smoothed posterior mean under that state and
    topics are relabeled densely by decreasing token count (ties by
    smallest original id).
    """
    cfg.validate()
    state = init_state(corpus, cfg)
    best_ll = -math.inf
    best = None
    for sweep in range(cfg.sweeps):
        gibbs_sweep(state)
        if sweep >= cfg.burn_in:
            ll = joint_log_likelihood(state)
            if ll > best_ll:
                best_ll = ll
                best = state.snapshot()
    if best is None:
        best = state.snapshot()
    return _finalize(best, corpus, cfg)
