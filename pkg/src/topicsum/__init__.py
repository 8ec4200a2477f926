"""Query-oriented extractive multi-document summarization.

Sentence topics are inferred with a nonparametric hierarchical topic
model, the sentence collection is organized as a fuzzy hypergraph whose
hyperedges are topics, sentences are ranked by a query-biased random
walk on that hypergraph, and the summary is selected by budgeted greedy
maximization of a monotone submodular relevance-plus-coverage
objective.
"""

from .corpus import (ProcessedCorpus, RawDocument, Sentence, Vocabulary,
                     build_corpus, load_directory, normalize_tokens,
                     split_sentences, tokenize)
from .errors import (ConfigError, ConvergenceWarning, EmptyCorpus,
                     EmptyDocument, EmptySelection, MetricUndefined, NoTopics,
                     OracleGuard, TopicSumError)
from .evaluation import (EvalConfig, EvalResult, evaluate_summary,
                         lexical_diversity, rouge_n, rouge_su4)
from .hdp import HdpConfig, TopicAssignments, TopicModel, run_inference
from .hypergraph import (FuzzyHypergraph, build_hypergraph,
                         build_term_hypergraph, tfisf_vectors)
from .pipeline import (PipelineConfig, PipelineResult, SweepPoint,
                       TopicStructure, assemble_summary, config_from_dict,
                       infer_structure, rank_and_select, run_pipeline,
                       run_selector, run_sweep, summarize_directory)
from .ranking import (RankConfig, RelevanceScores, TransitionModel,
                      base_transition, biased_transition,
                      build_transition_model, pagerank_scores,
                      query_relevance, term_query_relevance)
from .selection import (GREEDY_GUARANTEE, BaselineConfig, SelectConfig,
                        SummarySelection, coverage, exhaustive_optimum,
                        grr_select, mcs_select, mr_knapsack, mrc_select,
                        mrms_select, objective_F, oph_select)
from .stemming import stem

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig", "ConfigError", "ConvergenceWarning", "EmptyCorpus",
    "EmptyDocument", "EmptySelection", "EvalConfig", "EvalResult",
    "FuzzyHypergraph", "GREEDY_GUARANTEE", "HdpConfig", "MetricUndefined",
    "NoTopics", "OracleGuard", "PipelineConfig", "PipelineResult",
    "ProcessedCorpus", "RankConfig", "RawDocument", "RelevanceScores",
    "SelectConfig", "Sentence", "SummarySelection", "SweepPoint",
    "TopicAssignments", "TopicModel", "TopicStructure", "TopicSumError",
    "TransitionModel", "Vocabulary", "assemble_summary", "base_transition",
    "biased_transition", "build_corpus", "build_hypergraph",
    "build_term_hypergraph", "build_transition_model", "config_from_dict",
    "coverage", "evaluate_summary", "exhaustive_optimum", "grr_select",
    "infer_structure", "lexical_diversity", "load_directory", "mcs_select",
    "mr_knapsack", "mrc_select", "mrms_select", "normalize_tokens",
    "objective_F", "oph_select", "pagerank_scores", "query_relevance",
    "rank_and_select", "rouge_n", "rouge_su4", "run_inference",
    "run_pipeline", "run_selector", "run_sweep", "split_sentences", "stem",
    "summarize_directory", "term_query_relevance", "tfisf_vectors",
    "tokenize",
]
