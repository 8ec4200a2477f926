"""Summary selection: submodular objective, greedy selector, baselines.

The main objective trades off total relevance against topical coverage,
where coverage counts the sentences that can reach the summary in at
most one step of the base random walk.  The objective is monotone and
submodular, so a length-normalized greedy sweep with a best-singleton
fallback carries a (1 - e^{-1/2}) approximation guarantee.

Exact small-instance oracles (full enumeration, 0-1 knapsack dynamic
program) and four alternative selectors used for comparison live here
as well.  Every tie anywhere is broken by the smallest sentence id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptySelection, OracleGuard

# greedy-vs-optimum guarantee constant, 1 - e^(-1/2)
GREEDY_GUARANTEE = 0.39346934028736658


@dataclass(frozen=True)
class SelectConfig:
    coverage_balance: float = 0.35  # weight of coverage vs relevance
    capacity: int = 250             # summary budget in raw words

    def validate(self) -> None:
        if not 0.0 <= self.coverage_balance <= 1.0:
            raise ConfigError("coverage_balance must lie in [0, 1]")
        if self.capacity < 1:
            raise ConfigError("capacity must be a positive word count")


@dataclass(frozen=True)
class BaselineConfig:
    grr_threshold: float = 0.1       # max pairwise cosine admitted by GRR
    mrms_tradeoff: float = 3.0       # relevance weight in the MRMS objective
    mcs_tradeoff: float = 4.2        # redundancy weight in the MCS objective
    mrms_size: int | None = None     # explicit cardinality cap; None = from budget

    def validate(self) -> None:
        if not 0.0 <= self.grr_threshold <= 1.0:
            raise ConfigError("grr_threshold must lie in [0, 1]")
        if self.mrms_tradeoff < 2.0:
            raise ConfigError("mrms_tradeoff must be >= 2")
        if self.mcs_tradeoff <= 0.0:
            raise ConfigError("mcs_tradeoff must be positive")
        if self.mrms_size is not None and self.mrms_size < 1:
            raise ConfigError("mrms_size must be positive when given")


@dataclass(frozen=True)
class SummarySelection:
    selected: tuple[int, ...]   # in pick order
    total_words: int
    objective: float            # value of the objective this selector optimizes
    scores: tuple[float, ...]   # relevance of the selected sentences, same order


def _score_vector(scores) -> np.ndarray:
    p = getattr(scores, "p", scores)
    return np.asarray(p, dtype=float)


def coverage(sentence_ids, P) -> float:
    """|S| plus the mass flowing from outside S into S in one step."""
    ids = sorted(set(int(i) for i in sentence_ids))
    if not ids:
        return 0.0
    mask = np.zeros(P.shape[0], dtype=bool)
    mask[ids] = True
    cross = P[~mask][:, mask].sum()
    return float(len(ids) + cross)


def objective_F(sentence_ids, scores, P, cfg: SelectConfig) -> float:
    ids = sorted(set(int(i) for i in sentence_ids))
    if not ids:
        return 0.0
    p = _score_vector(scores)
    nu = cfg.coverage_balance
    n = P.shape[0]
    return float((1.0 - nu) * p[ids].sum() + (nu / n) * coverage(ids, P))


def _pack(ids, lengths, objective, p) -> SummarySelection:
    ids = [int(i) for i in ids]
    total = int(sum(int(lengths[i]) for i in ids))
    return SummarySelection(tuple(ids), total, float(objective),
                            tuple(float(p[i]) for i in ids))


def mrc_select(scores, P, lengths, cfg: SelectConfig,
               paper_literal_budget: bool = False) -> SummarySelection:
    """Greedy maximization of the relevance + coverage objective.

    Candidates are picked by descending length-normalized marginal gain.
    By default a candidate that would blow the budget is dropped from
    the pool and the scan continues, keeping the output feasible; the
    literal variant instead adds unconditionally and stops once the
    budget is crossed, so its output may overshoot (comparison only).
    The final answer is the better, under the objective, of the greedy
    set and the best feasible singleton.
    """
    cfg.validate()
    p = _score_vector(scores)
    l = np.asarray(lengths, dtype=float)
    n = P.shape[0]
    nu = cfg.coverage_balance
    cap = cfg.capacity

    incoming = P.sum(axis=0) - np.diag(P)  # Σ_{i != j} P[i, j]
    singleton_gain = (nu / n) * (1.0 + incoming) + (1.0 - nu) * p
    pi = singleton_gain / l
    active = np.ones(n, dtype=bool)
    chosen: list[int] = []
    used = 0

    while active.any():
        if paper_literal_budget and used > cap:
            break
        j = int(np.argmax(np.where(active, pi, -np.inf)))
        if paper_literal_budget or used + int(l[j]) <= cap:
            active[j] = False
            chosen.append(j)
            used += int(l[j])
            pi = pi - (nu / n) * (P[:, j] + P[j, :]) / l
        else:
            active[j] = False

    feasible = np.flatnonzero(np.asarray(lengths) <= cap)
    if not chosen and feasible.size == 0:
        raise EmptySelection(f"no sentence fits the budget of {cap} words")

    best_ids = chosen
    best_f = objective_F(chosen, p, P, cfg)
    if feasible.size:
        s = int(feasible[np.argmax(singleton_gain[feasible])])
        f_s = objective_F([s], p, P, cfg)
        if f_s > best_f:
            best_ids, best_f = [s], f_s
    return _pack(best_ids, lengths, best_f, p)


def exhaustive_optimum(scores, P, lengths, cfg: SelectConfig) -> SummarySelection:
    """Exact argmax of the objective over all feasible subsets.

    Brute-force oracle; guarded to 20 sentences.  Ties are broken by
    the lexicographically smallest ascending id tuple.
    """
    cfg.validate()
    n = P.shape[0]
    if n > 20:
        raise OracleGuard(f"exhaustive search limited to 20 sentences, got {n}")
    p = _score_vector(scores)
    l = np.asarray(lengths, dtype=np.int64)
    nu = cfg.coverage_balance

    n_masks = 1 << n
    masks = np.arange(n_masks)
    value = np.zeros(n_masks)
    weight = np.zeros(n_masks, dtype=np.int64)
    member = []
    for j in range(n):
        bit = ((masks >> j) & 1).astype(bool)
        member.append(bit)
        value[bit] += p[j]
        weight[bit] += l[j]

    if nu > 0.0:
        size = np.zeros(n_masks)
        col_in = np.zeros(n_masks)
        full_col = P.sum(axis=0)
        for j in range(n):
            size[member[j]] += 1.0
            col_in[member[j]] += full_col[j]
        quad = np.zeros(n_masks)
        for i in range(n):
            rowdot = np.zeros(n_masks)
            for j in range(n):
                rowdot[member[j]] += P[i, j]
            quad[member[i]] += rowdot[member[i]]
        f_all = (1.0 - nu) * value + (nu / n) * (size + col_in - quad)
    else:
        f_all = value

    feasible = weight <= cfg.capacity
    best_f = f_all[feasible].max()
    tied = np.flatnonzero(feasible & (f_all == best_f))
    best_ids = min(tuple(j for j in range(n) if (int(m) >> j) & 1) for m in tied)
    return _pack(best_ids, lengths, objective_F(best_ids, p, P, cfg), p)


def mr_knapsack(scores, lengths, capacity: int) -> SummarySelection:
    """Exact relevance-only selection via 0-1 knapsack dynamic program."""
    p = _score_vector(scores)
    l = [int(x) for x in lengths]
    n = len(p)
    cap = int(capacity)
    dp = np.zeros(cap + 1)
    take = np.zeros((n, cap + 1), dtype=bool)
    for i in range(n):
        li = l[i]
        if li > cap:
            continue
        cand = dp[:cap + 1 - li] + p[i]
        improved = cand > dp[li:]
        take[i, li:] = improved
        dp[li:] = np.where(improved, cand, dp[li:])
    ids = []
    c = cap
    for i in reversed(range(n)):
        if take[i, c]:
            ids.append(i)
            c -= l[i]
    ids.reverse()
    return _pack(ids, lengths, float(dp[cap]), p)


def grr_select(scores, tfisf, lengths, capacity: int, threshold: float) -> SummarySelection:
    """Descending-score scan admitting only sentences dissimilar to the
    summary so far (max pairwise tfisf cosine <= threshold)."""
    if not 0.0 <= threshold <= 1.0:
        raise ConfigError("threshold must lie in [0, 1]")
    p = _score_vector(scores)
    tfisf = np.asarray(tfisf, dtype=float)
    norms = np.linalg.norm(tfisf, axis=1)
    order = sorted(range(len(p)), key=lambda i: (-p[i], i))
    chosen: list[int] = []
    used = 0
    for i in order:
        if used + int(lengths[i]) > capacity:
            continue
        ok = True
        for t in chosen:
            denom = norms[i] * norms[t]
            cos = float(tfisf[i] @ tfisf[t] / denom) if denom > 0 else 0.0
            if cos > threshold:
                ok = False
                break
        if ok:
            chosen.append(i)
            used += int(lengths[i])
    return _pack(chosen, lengths, float(p[chosen].sum()) if chosen else 0.0, p)


def oph_select(h, lengths, capacity: int) -> SummarySelection:
    """One sentence per hyperedge: edges by descending weight, each
    contributing its strongest member sentence if it fits."""
    topic_order = sorted(range(h.n_edges), key=lambda e: (-h.weights[e], e))
    chosen: list[int] = []
    used = 0
    for e in topic_order:
        i = int(np.argmax(h.psi[e]))
        if i in chosen or used + int(lengths[i]) > capacity:
            continue
        chosen.append(i)
        used += int(lengths[i])
    scores = np.zeros(h.n_vertices)
    return _pack(chosen, lengths, float(len(chosen)), scores)


def _similarity(P) -> np.ndarray:
    return (P + P.T) / 2.0


def mrms_select(scores, P, lengths, capacity: int,
                cfg: BaselineConfig) -> SummarySelection:
    """Greedy ascent on relevance-minus-similarity.

    The objective is chi2 * Σ r_i^2 - Σ_{i,j in S} r_i Sim(i,j) r_j.
    The cardinality cap is taken as the largest greedy prefix that fits
    the word budget (or cfg.mrms_size when given, whichever binds
    first); the ascent also stops if the best marginal gain is negative.
    """
    cfg.validate()
    r = _score_vector(scores)
    n = len(r)
    sim = _similarity(P)
    chi2 = cfg.mrms_tradeoff
    base_gain = chi2 * r * r - r * r * np.diag(sim)
    svec = np.zeros(n)  # Σ_{i in S} r_i Sim(i, ·)
    active = np.ones(n, dtype=bool)
    chosen: list[int] = []
    used = 0
    k_cap = cfg.mrms_size if cfg.mrms_size is not None else n
    while active.any() and len(chosen) < k_cap:
        gains = base_gain - 2.0 * r * svec
        j = int(np.argmax(np.where(active, gains, -np.inf)))
        if gains[j] < 0 or used + int(lengths[j]) > capacity:
            break
        active[j] = False
        chosen.append(j)
        used += int(lengths[j])
        svec += r[j] * sim[j]
    if chosen:
        ids = np.asarray(chosen)
        cross = r[ids] @ sim[np.ix_(ids, ids)] @ r[ids]
        q_val = float(chi2 * (r[ids] ** 2).sum() - cross)
    else:
        q_val = 0.0
    return _pack(chosen, lengths, q_val, r)


def _mcs_objective(ids, sim, chi3: float) -> float:
    if not ids:
        return 0.0
    mask = np.zeros(sim.shape[0], dtype=bool)
    mask[list(ids)] = True
    cross = sim[~mask][:, mask].sum()
    within = sim[mask][:, mask].sum()
    return float(cross - chi3 * within)


def mcs_select(scores, P, lengths, capacity: int, chi3: float) -> SummarySelection:
    """Budgeted greedy on corpus-similarity-minus-redundancy.

    Mirrors the main greedy loop (length-normalized gains, infeasible
    candidates dropped from the pool, best-singleton fallback) but the
    objective is not monotone, so the ascent also stops once the best
    marginal gain turns negative.  May legitimately select nothing.
    """
    if chi3 <= 0:
        raise ConfigError("chi3 must be positive")
    p = _score_vector(scores)
    sim = _similarity(P)
    n = sim.shape[0]
    l = np.asarray(lengths, dtype=float)
    colsum = sim.sum(axis=0)
    diag = np.diag(sim)
    svec = np.zeros(n)  # Σ_{i in S} Sim(i, ·)
    active = np.ones(n, dtype=bool)
    chosen: list[int] = []
    used = 0
    while active.any():
        gains = colsum - (1.0 + chi3) * diag - 2.0 * (1.0 + chi3) * svec
        j = int(np.argmax(np.where(active, gains / l, -np.inf)))
        if gains[j] < 0:
            break
        if used + int(lengths[j]) > capacity:
            active[j] = False
            continue
        active[j] = False
        chosen.append(j)
        used += int(lengths[j])
        svec += sim[j]

    best_ids = chosen
    best_r = _mcs_objective(chosen, sim, chi3)
    feasible = np.flatnonzero(np.asarray(lengths) <= capacity)
    if feasible.size:
        singles = colsum[feasible] - (1.0 + chi3) * diag[feasible]
        s = int(feasible[np.argmax(singles)])
        r_s = _mcs_objective([s], sim, chi3)
        if r_s > best_r:
            best_ids, best_r = [s], r_s
    return _pack(best_ids, lengths, best_r, p)
