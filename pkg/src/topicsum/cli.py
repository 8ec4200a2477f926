"""Command-line interface.

Subcommands:
  summarize  run the full pipeline on a corpus directory
  sweep      score summaries over a parameter grid (CSV + figures)
  eval       score a candidate summary against reference files

Configuration precedence: command-line flags > --config file >
built-in defaults; the SUMM_SEED environment variable overrides the
seed from any source.  Exit codes: 0 success, 2 configuration or file
error, 3 empty corpus, 4 non-convergence under --strict.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
import warnings
from pathlib import Path

from .corpus import build_corpus, load_directory
from .errors import ConfigError, ConvergenceWarning, EmptyCorpus, TopicSumError
from .evaluation import EvalConfig, evaluate_summary
from .pipeline import (HYPEREDGE_MODELS, SCHEMA_VERSION, SELECTORS,
                       SWEEP_PARAMS, config_from_dict, corpus_dump,
                       hypergraph_dump, merge_config_layers, run_sweep,
                       scores_dump, summarize_directory, topics_dump)
from .plotting import render_metric_curves


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {what} file {path!r}: {exc}") from exc


def _write_json(data: dict, path: str | None, stream=None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text, "utf-8")
    else:
        (stream or sys.stdout).write(text)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("corpus_dir", nargs="?", default=None,
                   help="directory of input documents (one file each)")
    p.add_argument("--config", metavar="FILE",
                   help="JSON config file; flags given here override it")
    q = p.add_mutually_exclusive_group()
    q.add_argument("--query", help="query text")
    q.add_argument("--query-file", metavar="FILE",
                   help="file containing the query text")
    p.add_argument("--seed", type=int, help="random seed (SUMM_SEED wins)")
    p.add_argument("--hyperedge-model", choices=HYPEREDGE_MODELS,
                   help="hyperedge source: inferred topics or raw terms")
    p.add_argument("--selector", choices=SELECTORS,
                   help="summary selection strategy")
    p.add_argument("--paper-literal-budget", action="store_true", default=None,
                   help="let the greedy pass add one sentence past capacity")
    p.add_argument("--hdp-gamma", type=float, metavar="G",
                   help="corpus-level concentration")
    p.add_argument("--hdp-beta", type=float, metavar="B",
                   help="document-level concentration")
    p.add_argument("--hdp-alpha", type=float, metavar="A",
                   help="sentence-level concentration")
    p.add_argument("--hdp-zeta", type=float, metavar="Z",
                   help="topic-word smoothing")
    p.add_argument("--hdp-sweeps", type=int, help="total Gibbs sweeps")
    p.add_argument("--hdp-burnin", type=int, help="burn-in sweeps")
    p.add_argument("--lambda", dest="query_balance", type=float,
                   help="query-jump vs graph-propagation mix in [0, 1]")
    p.add_argument("--mu", dest="damping", type=float,
                   help="walk-following probability in [0, 1)")
    p.add_argument("--pr-tol", type=float, help="ranking convergence tolerance")
    p.add_argument("--pr-max-iter", type=int, help="ranking iteration cap")
    p.add_argument("--nu", dest="coverage_balance", type=float,
                   help="coverage weight in the selection objective")
    p.add_argument("--capacity", type=int, help="summary budget in words")
    p.add_argument("--grr-threshold", type=float,
                   help="max pairwise cosine for the redundancy baseline")
    p.add_argument("--mrms-tradeoff", type=float,
                   help="relevance weight for the relevance-minus-similarity baseline")
    p.add_argument("--mrms-size", type=int,
                   help="explicit cardinality cap for that baseline")
    p.add_argument("--mcs-tradeoff", type=float,
                   help="redundancy weight for the coverage-similarity baseline")
    p.add_argument("--strict", action="store_true",
                   help="treat ranking non-convergence as a fatal error")


def _collect(args, names: dict) -> dict:
    out = {}
    for attr, key in names.items():
        value = getattr(args, attr, None)
        if value is not None:
            out[key] = value
    return out


def _cli_layer(args) -> dict:
    layer: dict = _collect(args, {
        "corpus_dir": "corpus_dir", "hyperedge_model": "hyperedge_model",
        "selector": "selector", "paper_literal_budget": "paper_literal_budget",
        "seed": "seed",
    })
    if getattr(args, "query", None) is not None:
        layer["query"] = args.query
    elif getattr(args, "query_file", None) is not None:
        layer["query"] = _read_text(args.query_file, "query").strip()
    hdp = _collect(args, {"hdp_gamma": "gamma", "hdp_beta": "beta",
                          "hdp_alpha": "alpha", "hdp_zeta": "zeta",
                          "hdp_sweeps": "sweeps", "hdp_burnin": "burn_in"})
    if hdp:
        layer["hdp"] = hdp
    rank = _collect(args, {"query_balance": "query_balance",
                           "damping": "damping", "pr_tol": "tol",
                           "pr_max_iter": "max_iter"})
    if rank:
        layer["rank"] = rank
    select = _collect(args, {"coverage_balance": "coverage_balance",
                             "capacity": "capacity"})
    if select:
        layer["select"] = select
    baseline = _collect(args, {"grr_threshold": "grr_threshold",
                               "mrms_tradeoff": "mrms_tradeoff",
                               "mrms_size": "mrms_size",
                               "mcs_tradeoff": "mcs_tradeoff"})
    if baseline:
        layer["baseline"] = baseline
    return layer


def _build_config(args):
    layers = []
    if getattr(args, "config", None):
        try:
            file_data = json.loads(_read_text(args.config, "config"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_data, dict):
            raise ConfigError("config file must hold a JSON object")
        layers.append(file_data)
    layers.append(_cli_layer(args))
    merged = merge_config_layers(*layers)
    env_seed = os.environ.get("SUMM_SEED")
    if env_seed is not None:
        try:
            merged["seed"] = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"SUMM_SEED must be an integer, "
                              f"got {env_seed!r}") from exc
    return config_from_dict(merged)


def cmd_summarize(args) -> int:
    cfg = _build_config(args)
    with warnings.catch_warnings():
        if args.strict:
            warnings.simplefilter("error", ConvergenceWarning)
        result = summarize_directory(cfg)
    if args.dump_corpus:
        _write_json(corpus_dump(result.structure.corpus), args.dump_corpus)
    if args.dump_topics:
        _write_json(topics_dump(result.structure), args.dump_topics)
    if args.dump_hypergraph:
        _write_json(hypergraph_dump(result.structure), args.dump_hypergraph)
    if args.dump_scores:
        _write_json(scores_dump(result.structure, result.scores),
                    args.dump_scores)
    summary = result.summary_text + "\n"
    if args.out:
        Path(args.out).write_text(summary, "utf-8")
    else:
        sys.stdout.write(summary)
    meta_path = args.metadata_out
    if meta_path is None and args.out:
        meta_path = args.out + ".meta.json"
    # With no file targets the metadata goes to stderr so stdout stays
    # exactly the summary, one sentence per line.
    _write_json(result.metadata, meta_path, stream=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    cfg = _build_config(args)
    try:
        grid = [float(v) for v in args.grid.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"grid must be comma-separated numbers: "
                          f"{args.grid!r}") from exc
    refs = [_read_text(p, "reference") for p in args.refs]
    if not cfg.corpus_dir:
        raise ConfigError("corpus_dir is required")
    corpus = build_corpus(load_directory(cfg.corpus_dir))
    with warnings.catch_warnings():
        if args.strict:
            warnings.simplefilter("error", ConvergenceWarning)
        points = run_sweep(corpus, cfg, args.param, grid, refs)
    csv_path = Path(args.out_csv)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([args.param, "rouge2", "rouge_su4", "diversity"])
        for pt in points:
            writer.writerow([repr(pt.value), repr(pt.rouge2),
                             repr(pt.rouge_su4), repr(pt.diversity)])
    figures = render_metric_curves(points, args.param, csv_path.parent,
                                   csv_path.stem)
    for path in [csv_path, *figures]:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_eval(args) -> int:
    candidate = _read_text(args.candidate, "candidate")
    if not candidate.strip():
        raise ConfigError(f"candidate summary {args.candidate!r} is empty")
    refs = [_read_text(p, "reference") for p in args.refs]
    cfg = EvalConfig(stem=not args.no_stem,
                     remove_stopwords=args.remove_stopwords,
                     jackknife=not args.no_jackknife)
    result = evaluate_summary(candidate, refs, cfg)
    _write_json({
        "schema_version": SCHEMA_VERSION,
        "rouge2": result.rouge2,
        "rouge_su4": result.rouge_su4,
        "diversity": result.diversity,
        "config": dataclasses.asdict(cfg),
        "candidate": args.candidate,
        "references": list(args.refs),
    }, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="topicsum",
        description="Query-oriented extractive multi-document summarizer "
                    "built on topic hyperedges and a biased random walk.")
    sub = root.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="summarize a corpus directory")
    _add_config_flags(p_sum)
    p_sum.add_argument("--out", metavar="FILE",
                       help="write the summary here instead of stdout")
    p_sum.add_argument("--metadata-out", metavar="FILE",
                       help="write run metadata JSON here")
    p_sum.add_argument("--dump-corpus", metavar="FILE",
                       help="write the processed corpus as JSON")
    p_sum.add_argument("--dump-topics", metavar="FILE",
                       help="write inferred topics as JSON")
    p_sum.add_argument("--dump-hypergraph", metavar="FILE",
                       help="write the hypergraph as JSON")
    p_sum.add_argument("--dump-scores", metavar="FILE",
                       help="write relevance scores as JSON")
    p_sum.set_defaults(func=cmd_summarize)

    p_swp = sub.add_parser("sweep", help="sweep one parameter and score")
    _add_config_flags(p_swp)
    p_swp.add_argument("--param", required=True, choices=SWEEP_PARAMS,
                       help="which knob to sweep")
    p_swp.add_argument("--grid", required=True,
                       help="comma-separated parameter values")
    p_swp.add_argument("--refs", required=True, nargs="+", metavar="FILE",
                       help="reference summary files for scoring")
    p_swp.add_argument("--out-csv", default="sweep.csv", metavar="FILE",
                       help="CSV output path (figures go alongside)")
    p_swp.set_defaults(func=cmd_sweep)

    p_ev = sub.add_parser("eval", help="score a candidate summary")
    p_ev.add_argument("--candidate", required=True, metavar="FILE")
    p_ev.add_argument("--refs", required=True, nargs="+", metavar="FILE")
    p_ev.add_argument("--no-stem", action="store_true",
                      help="disable stemming during matching")
    p_ev.add_argument("--remove-stopwords", action="store_true",
                      help="drop stopwords before matching")
    p_ev.add_argument("--no-jackknife", action="store_true",
                      help="pool references instead of jackknifing")
    p_ev.add_argument("--out", metavar="FILE",
                      help="write the JSON result here instead of stdout")
    p_ev.set_defaults(func=cmd_eval)
    return root


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceWarning as exc:
        print(f"error: ranking did not converge: {exc}", file=sys.stderr)
        return 4
    except EmptyCorpus as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, TopicSumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
