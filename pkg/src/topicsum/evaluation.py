"""Recall-oriented summary metrics.

Implements bigram recall, the skip-bigram-with-unigrams variant (skip
pairs allow at most four intervening words, counted within each text
separately), and normalized-entropy lexical diversity.  Matching is
clipped multiset intersection; with several references the score is
either pooled (matches and totals summed over references) or, when
jackknifing, the average over leave-one-out reference subsets of the
best single-reference score.  Counting rules are frozen by the hand
oracles in the test suite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import STOPWORDS, normalize_tokens, tokenize
from .errors import ConfigError, MetricUndefined
from .stemming import stem

SKIP_GAP = 4  # max words allowed between the two ends of a skip pair


@dataclass(frozen=True)
class EvalConfig:
    stem: bool = True
    remove_stopwords: bool = False
    jackknife: bool = True  # applies when there are >= 2 references


@dataclass(frozen=True)
class EvalResult:
    rouge2: float
    rouge_su4: float
    diversity: float


def _eval_tokens(text: str, cfg: EvalConfig) -> list[str]:
    toks = tokenize(text)
    if cfg.remove_stopwords:
        toks = [t for t in toks if t not in STOPWORDS]
    if cfg.stem:
        toks = [stem(t) for t in toks]
    return toks


def _ngram_counts(tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _su_unit_counts(tokens) -> Counter:
    units = Counter()
    for tok in tokens:
        units[("u", tok)] += 1
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + SKIP_GAP + 2, len(tokens))):
            units[("s", tokens[i], tokens[j])] += 1
    return units


def _clipped_matches(cand: Counter, ref: Counter) -> int:
    return sum(min(c, ref[g]) for g, c in cand.items() if g in ref)


def _recall(cand: Counter, refs: list[Counter], jackknife: bool) -> float:
    def single(ref: Counter) -> float:
        total = sum(ref.values())
        return _clipped_matches(cand, ref) / total if total else 0.0

    if jackknife and len(refs) >= 2:
        folds = []
        for held_out in range(len(refs)):
            kept = [r for i, r in enumerate(refs) if i != held_out]
            folds.append(max(single(r) for r in kept))
        return sum(folds) / len(folds)
    total = sum(sum(r.values()) for r in refs)
    if total == 0:
        return 0.0
    matched = sum(_clipped_matches(cand, r) for r in refs)
    return matched / total


def rouge_n(candidate: str, references, n: int, cfg: EvalConfig = EvalConfig()) -> float:
    """N-gram recall of the candidate against the reference summaries."""
    refs = list(references)
    if not refs:
        raise ConfigError("at least one reference summary is required")
    if n < 1:
        raise ConfigError("n must be >= 1")
    cand = _ngram_counts(_eval_tokens(candidate, cfg), n)
    ref_counts = [_ngram_counts(_eval_tokens(r, cfg), n) for r in refs]
    return _recall(cand, ref_counts, cfg.jackknife)


def rouge_su4(candidate: str, references, cfg: EvalConfig = EvalConfig()) -> float:
    """Unigram plus 4-skip-bigram recall against the references."""
    refs = list(references)
    if not refs:
        raise ConfigError("at least one reference summary is required")
    cand = _su_unit_counts(_eval_tokens(candidate, cfg))
    ref_counts = [_su_unit_counts(_eval_tokens(r, cfg)) for r in refs]
    return _recall(cand, ref_counts, cfg.jackknife)


def lexical_diversity(summary_text: str) -> float:
    """Normalized entropy of the summary's term distribution.

    Terms come from the standard normalization pipeline.  0 for a
    single-term summary (by convention), 1 for a uniform distribution
    over two or more terms.
    """
    terms = normalize_tokens(summary_text)
    if not terms:
        raise MetricUndefined("summary has no terms after normalization")
    counts = Counter(terms)
    if len(counts) == 1:
        return 0.0
    total = len(terms)
    entropy = -sum((c / total) * math.log(c / total) for c in counts.values())
    return entropy / math.log(len(counts))


def evaluate_summary(candidate: str, references, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    return EvalResult(
        rouge2=rouge_n(candidate, references, 2, cfg),
        rouge_su4=rouge_su4(candidate, references, cfg),
        diversity=lexical_diversity(candidate),
    )
