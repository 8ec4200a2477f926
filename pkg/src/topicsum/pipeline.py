"""End-to-end orchestration of the summarization stages.

Wires ingestion, topic inference, hypergraph construction, ranking and
budgeted selection together; provides parameter sweeps that reuse the
inferred topic structure across grid points; assembles the metadata
echo (every effective parameter, stage runtimes, objective values) that
makes a run exactly replayable.
"""

from __future__ import annotations

import dataclasses
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping

from .corpus import ProcessedCorpus, build_corpus, load_directory
from .errors import ConfigError
from .evaluation import EvalConfig, lexical_diversity, rouge_n, rouge_su4
from .hdp import HdpConfig, TopicAssignments, TopicModel, run_inference
from .hypergraph import (FuzzyHypergraph, build_hypergraph,
                         build_term_hypergraph, tfisf_vectors)
from .ranking import (RankConfig, RelevanceScores, base_transition,
                      biased_transition, pagerank_scores, query_relevance,
                      term_query_relevance)
from .selection import (BaselineConfig, SelectConfig, SummarySelection,
                        coverage, grr_select, mcs_select, mr_knapsack,
                        mrc_select, mrms_select, objective_F, oph_select)

SCHEMA_VERSION = 1

HYPEREDGE_MODELS = ("hdp", "terms")
SELECTORS = ("mrc", "mr", "grr", "oph", "mrms", "mcs")
SWEEP_PARAMS = ("lambda", "mu", "nu")


@dataclass(frozen=True)
class PipelineConfig:
    corpus_dir: str | None = None
    query: str = ""
    hyperedge_model: str = "hdp"
    selector: str = "mrc"
    paper_literal_budget: bool = False
    seed: int = 0
    hdp: HdpConfig = field(default_factory=HdpConfig)
    rank: RankConfig = field(default_factory=RankConfig)
    select: SelectConfig = field(default_factory=SelectConfig)
    baseline: BaselineConfig = field(default_factory=BaselineConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)

    def validate(self) -> None:
        if self.hyperedge_model not in HYPEREDGE_MODELS:
            raise ConfigError(
                f"hyperedge_model must be one of {HYPEREDGE_MODELS}, "
                f"got {self.hyperedge_model!r}")
        if self.selector not in SELECTORS:
            raise ConfigError(
                f"selector must be one of {SELECTORS}, got {self.selector!r}")
        self.hdp.validate()
        self.rank.validate()
        self.select.validate()
        self.baseline.validate()

    def effective_hdp(self) -> HdpConfig:
        """The topic-inference config with the pipeline seed applied."""
        return replace(self.hdp, seed=self.seed)


_SECTIONS: dict[str, type] = {
    "hdp": HdpConfig,
    "rank": RankConfig,
    "select": SelectConfig,
    "baseline": BaselineConfig,
    "eval": EvalConfig,
}
_TOP_FIELDS = ("corpus_dir", "query", "hyperedge_model", "selector",
               "paper_literal_budget", "seed")


def merge_config_layers(*layers: Mapping) -> dict:
    """Two-level dict merge; later layers win field by field."""
    merged: dict = {}
    for layer in layers:
        if not layer:
            continue
        for key, value in layer.items():
            if key in _SECTIONS and isinstance(value, Mapping):
                merged.setdefault(key, {}).update(value)
            else:
                merged[key] = value
    return merged


def config_from_dict(data: Mapping) -> PipelineConfig:
    """Build a validated PipelineConfig, rejecting unknown keys."""
    kwargs: dict = {}
    for key, value in data.items():
        if key in _TOP_FIELDS:
            kwargs[key] = value
        elif key in _SECTIONS:
            cls = _SECTIONS[key]
            known = {f.name for f in dataclasses.fields(cls)}
            bad = set(value) - known
            if bad:
                raise ConfigError(
                    f"unknown key(s) in section {key!r}: {sorted(bad)}")
            kwargs[key] = cls(**value)
        else:
            raise ConfigError(f"unknown configuration key: {key!r}")
    cfg = PipelineConfig(**kwargs)
    cfg.validate()
    return cfg


def config_echo(cfg: PipelineConfig) -> dict:
    """Every effective parameter, as plain JSON-serializable data."""
    echo = dataclasses.asdict(cfg)
    echo["hdp"]["seed"] = cfg.seed  # the pipeline seed is the one used
    return echo


@dataclass
class TopicStructure:
    """Everything upstream of the query-biased walk, reusable across
    ranking/selection parameter settings."""
    corpus: ProcessedCorpus
    model: TopicModel | None
    assignments: TopicAssignments | None
    hypergraph: FuzzyHypergraph
    transition: "np.ndarray"
    query_rel: "np.ndarray"
    timings: dict


def infer_structure(corpus: ProcessedCorpus, cfg: PipelineConfig) -> TopicStructure:
    cfg.validate()
    timings: dict = {}
    t0 = time.perf_counter()
    if cfg.hyperedge_model == "hdp":
        model, assignments = run_inference(corpus, cfg.effective_hdp())
        timings["topic_inference"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        h = build_hypergraph(corpus, model, assignments)
        q_rel = query_relevance(cfg.query, corpus, assignments, h)
    else:
        model = assignments = None
        h = build_term_hypergraph(corpus)
        timings["topic_inference"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        q_rel = term_query_relevance(cfg.query, corpus, h)
    P = base_transition(h)
    timings["hypergraph"] = time.perf_counter() - t0
    return TopicStructure(corpus, model, assignments, h, P, q_rel, timings)


def run_selector(name: str, scores, structure: TopicStructure,
                 cfg: PipelineConfig) -> SummarySelection:
    lengths = structure.corpus.sentence_lengths()
    capacity = cfg.select.capacity
    if name == "mrc":
        return mrc_select(scores, structure.transition, lengths, cfg.select,
                          paper_literal_budget=cfg.paper_literal_budget)
    if name == "mr":
        return mr_knapsack(scores, lengths, capacity)
    if name == "grr":
        return grr_select(scores, tfisf_vectors(structure.corpus), lengths,
                          capacity, cfg.baseline.grr_threshold)
    if name == "oph":
        return oph_select(structure.hypergraph, lengths, capacity)
    if name == "mrms":
        return mrms_select(scores, structure.transition, lengths, capacity,
                           cfg.baseline)
    if name == "mcs":
        return mcs_select(scores, structure.transition, lengths, capacity,
                          cfg.baseline.mcs_tradeoff)
    raise ConfigError(f"unknown selector {name!r}")


def rank_and_select(structure: TopicStructure, cfg: PipelineConfig
                    ) -> tuple[RelevanceScores, SummarySelection, dict]:
    timings: dict = {}
    t0 = time.perf_counter()
    Pq = biased_transition(structure.transition, structure.query_rel,
                           cfg.rank.query_balance)
    scores = pagerank_scores(Pq, cfg.rank)
    timings["ranking"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    selection = run_selector(cfg.selector, scores, structure, cfg)
    timings["selection"] = time.perf_counter() - t0
    return scores, selection, timings


def assemble_summary(corpus: ProcessedCorpus, selection: SummarySelection,
                     scores: RelevanceScores) -> tuple[str, list[int]]:
    """Summary text: selected sentences, most relevant first, one per line."""
    order = sorted(selection.selected, key=lambda i: (-scores.p[i], i))
    text = "\n".join(corpus.sentences[i].raw_text for i in order)
    return text, order


@dataclass
class PipelineResult:
    structure: TopicStructure
    scores: RelevanceScores
    selection: SummarySelection
    summary_text: str
    output_order: list[int]
    metadata: dict


def _build_metadata(cfg: PipelineConfig, structure: TopicStructure,
                    scores: RelevanceScores, selection: SummarySelection,
                    output_order: list[int], timings: dict) -> dict:
    corpus = structure.corpus
    ids = list(selection.selected)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config_echo(cfg),
        "corpus": {
            "documents": corpus.n_documents,
            "sentences": corpus.n_sentences,
            "terms": corpus.n_terms,
            "excluded_sentences": len(corpus.excluded),
        },
        "topics": structure.hypergraph.n_edges,
        "selected": output_order,
        "selection_order": ids,
        "relevance": {str(i): float(scores.p[i]) for i in output_order},
        "selector_objective": float(selection.objective),
        "objective_f": float(objective_F(ids, scores, structure.transition,
                                         cfg.select)),
        "coverage": float(coverage(ids, structure.transition)),
        "total_words": selection.total_words,
        "pagerank": {"iterations": scores.iterations,
                     "converged": scores.converged},
        "runtimes": timings,
    }


def run_pipeline(corpus: ProcessedCorpus, cfg: PipelineConfig) -> PipelineResult:
    total0 = time.perf_counter()
    structure = infer_structure(corpus, cfg)
    scores, selection, stage_times = rank_and_select(structure, cfg)
    summary_text, output_order = assemble_summary(corpus, selection, scores)
    timings = dict(structure.timings)
    timings.update(stage_times)
    timings["total"] = time.perf_counter() - total0
    metadata = _build_metadata(cfg, structure, scores, selection,
                               output_order, timings)
    return PipelineResult(structure, scores, selection, summary_text,
                          output_order, metadata)


def summarize_directory(cfg: PipelineConfig) -> PipelineResult:
    """Load the corpus directory named by the config and run end to end."""
    if not cfg.corpus_dir:
        raise ConfigError("corpus_dir is required")
    t0 = time.perf_counter()
    corpus = build_corpus(load_directory(cfg.corpus_dir))
    ingest = time.perf_counter() - t0
    result = run_pipeline(corpus, cfg)
    result.metadata["runtimes"]["ingest"] = ingest
    result.metadata["runtimes"]["total"] += ingest
    return result


def apply_sweep_param(cfg: PipelineConfig, param: str, value: float
                      ) -> PipelineConfig:
    if param == "lambda":
        return replace(cfg, rank=replace(cfg.rank, query_balance=value))
    if param == "mu":
        return replace(cfg, rank=replace(cfg.rank, damping=value))
    if param == "nu":
        return replace(cfg, select=replace(cfg.select, coverage_balance=value))
    raise ConfigError(f"sweep parameter must be one of {SWEEP_PARAMS}, "
                      f"got {param!r}")


@dataclass(frozen=True)
class SweepPoint:
    value: float
    rouge2: float
    rouge_su4: float
    diversity: float


def run_sweep(corpus: ProcessedCorpus, cfg: PipelineConfig, param: str,
              grid, references) -> list[SweepPoint]:
    """Score the summary at each grid value of one ranking/selection knob.

    Topic inference and the hypergraph are computed once and shared;
    each grid point re-runs only the biased walk and the selection, in
    its own isolated state, so points can execute concurrently while
    the output order stays that of the grid.
    """
    refs = list(references)
    if not refs:
        raise ConfigError("sweep scoring requires at least one reference")
    values = [float(v) for v in grid]
    if not values:
        raise ConfigError("sweep grid must contain at least one value")
    # Validate every grid point before spending time on inference.
    for v in values:
        apply_sweep_param(cfg, param, v).validate()
    structure = infer_structure(corpus, cfg)

    def at_point(value: float) -> SweepPoint:
        point_cfg = apply_sweep_param(cfg, param, value)
        scores, selection, _ = rank_and_select(structure, point_cfg)
        text, _ = assemble_summary(corpus, selection, scores)
        return SweepPoint(
            value=value,
            rouge2=rouge_n(text, refs, 2, point_cfg.eval),
            rouge_su4=rouge_su4(text, refs, point_cfg.eval),
            diversity=lexical_diversity(text),
        )

    workers = min(len(values), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(at_point, values))


def corpus_dump(corpus: ProcessedCorpus) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "documents": list(corpus.documents),
        "sentences": [
            {"sent_id": s.sent_id, "doc_id": s.doc_id, "text": s.raw_text,
             "terms": [corpus.vocabulary.term_of(t) for t in s.tokens],
             "word_length": s.word_length}
            for s in corpus.sentences
        ],
        "vocabulary_size": corpus.n_terms,
        "excluded": [
            {"doc_id": e.doc_id, "text": e.raw_text, "reason": e.reason}
            for e in corpus.excluded
        ],
    }


def topics_dump(structure: TopicStructure) -> dict:
    if structure.model is None or structure.assignments is None:
        raise ConfigError("no topic model to dump (term hyperedges in use)")
    return {
        "schema_version": SCHEMA_VERSION,
        "topics": structure.model.k,
        "word_topic_distributions": structure.model.phi.tolist(),
        "word_tags": [list(z) for z in structure.assignments.z],
    }


def hypergraph_dump(structure: TopicStructure) -> dict:
    h = structure.hypergraph
    return {
        "schema_version": SCHEMA_VERSION,
        "n_edges": h.n_edges,
        "n_vertices": h.n_vertices,
        "incidence": h.psi.tolist(),
        "edge_weights": h.weights.tolist(),
    }


def scores_dump(structure: TopicStructure, scores: RelevanceScores) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "relevance": scores.p.tolist(),
        "query_relevance": structure.query_rel.tolist(),
        "iterations": scores.iterations,
        "converged": scores.converged,
    }
