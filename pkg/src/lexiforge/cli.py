"""Command-line entry point.

Subcommands: ``extract`` (corpus -> filtered unit list), ``translate``
(units -> lexicon + summary), ``evaluate`` (lexicon + gold -> metrics),
``world`` (print the lexical world of a phrase) and ``cache`` (inspect or
compact a response cache). Exit codes: 0 success, 2 usage or configuration
error, 3 finished but some units are still unresolved at the oracle.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .backends import CacheOnlyBackend, HttpBackend, LocalIndexBackend
from .config import API_KEY_ENV, ConfigError, RunConfig, load_config
from .corpus import CorpusParseError, Tagset, parse_tagged_corpus
from .dictionary import load_dictionary
from .extraction import FilterStatus, extract_ulcs, filter_ulcs, read_ulcs, write_ulcs
from .oracle import ResponseCache, SearchOracle
from .pipeline import PipelineSettings, read_lexicon, run_pipeline, write_report
from .evaluation import GoldError, compute_metrics, format_metrics, load_gold
from .phase2 import WorldContext, build_lexical_world, write_world
from .tagging import LexiconTagger, default_tagger, load_stopwords

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNRESOLVED = 3


def build_oracle(cfg: RunConfig) -> SearchOracle:
    cache = ResponseCache(cfg.cache_path) if cfg.cache_path else None
    if cfg.offline:
        if cache is None:
            raise ConfigError("--offline requires oracle.cache")
        return SearchOracle(None, cache, offline=True)
    if cfg.backend == "local":
        backend = LocalIndexBackend.from_jsonl(cfg.docs_path)
    elif cfg.backend == "http":
        backend = HttpBackend(cfg.endpoint, cfg.api_key, cfg.rate_per_sec)
    else:
        backend = CacheOnlyBackend(cfg.cache_path)
    return SearchOracle(backend, cache, max_parallel=cfg.parallelism)


def build_tagset(cfg: RunConfig) -> Tagset:
    tagset = Tagset.named(cfg.tagset_name)
    if cfg.tagset_overrides:
        tagset = tagset.extended(cfg.tagset_overrides)
    return tagset


def build_world_context(cfg: RunConfig, oracle: SearchOracle, dictionary) -> WorldContext:
    source_tagger = (
        LexiconTagger.from_file(cfg.source_tagger_path)
        if cfg.source_tagger_path
        else default_tagger(cfg.source_lang)
    )
    target_tagger = (
        LexiconTagger.from_file(cfg.target_tagger_path)
        if cfg.target_tagger_path
        else default_tagger(cfg.target_lang)
    )
    return WorldContext(
        oracle=oracle,
        dictionary=dictionary,
        source_lang=cfg.source_lang,
        target_lang=cfg.target_lang,
        source_tagger=source_tagger,
        target_tagger=target_tagger,
        source_stopwords=load_stopwords(cfg.source_lang),
        target_stopwords=load_stopwords(cfg.target_lang),
        snippet_limit=cfg.snippet_limit,
        world_size=cfg.world_size,
        noun_jaccard_min=cfg.noun_jaccard_min,
        adj_jaccard_min=cfg.adj_jaccard_min,
        pair_top_k=cfg.pair_top_k,
    )


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {
        "corpus": "corpus_path",
        "dictionary": "dictionary_path",
        "cache": "cache_path",
        "docs": "docs_path",
        "backend": "backend",
        "endpoint": "endpoint",
        "out_dir": "output_dir",
        "max_ulcs": "max_ulcs",
        "workers": "workers",
        "source_lang": "source_lang",
        "target_lang": "target_lang",
        "tagset": "tagset_name",
    }
    for arg_name, attr in overrides.items():
        value = getattr(args, arg_name, None)
        if value is not None:
            setattr(cfg, attr, value)
    if getattr(args, "offline", False):
        cfg.offline = True
    if getattr(args, "use_an", False):
        cfg.use_an = True
    if os.environ.get(API_KEY_ENV):
        cfg.api_key = os.environ[API_KEY_ENV]
    cfg.source_tagger_path = getattr(args, "source_tagger", None)
    cfg.target_tagger_path = getattr(args, "target_tagger", None)
    cfg.validate()
    return cfg


def _require_file(path: str | None, what: str) -> Path:
    if not path:
        raise ConfigError(f"missing {what}")
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"{what} not found: {p}")
    return p


def cmd_extract(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    corpus_file = _require_file(cfg.corpus_path, "corpus file")
    with open(corpus_file, encoding="utf-8") as fh:
        corpus = parse_tagged_corpus(fh, build_tagset(cfg))
    units = extract_ulcs(corpus, cfg.corpus_freq_min)

    oracle = build_oracle(cfg)
    verdicts = filter_ulcs(
        units, oracle, cfg.literal_freq_min, cfg.article_freq_min, cfg.max_ulcs
    )
    kept = [v.ulc for v in verdicts if v.status is not FilterStatus.REJECTED]
    unresolved = sum(1 for v in verdicts if v.status is FilterStatus.UNRESOLVED_ORACLE)

    out_path = Path(args.out) if args.out else Path(cfg.output_dir) / "ulcs.tsv"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as fh:
        write_ulcs(kept, fh)
    print(f"extracted {len(units)} units, kept {len(kept)} -> {out_path}")
    if unresolved:
        print(f"{unresolved} units unresolved at the oracle; re-run to retry", file=sys.stderr)
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_translate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    dict_file = _require_file(cfg.dictionary_path, "dictionary file")
    dictionary = load_dictionary(dict_file)

    if args.ulcs:
        with open(_require_file(args.ulcs, "unit file"), encoding="utf-8") as fh:
            units = read_ulcs(fh)
    else:
        corpus_file = _require_file(cfg.corpus_path, "corpus file")
        with open(corpus_file, encoding="utf-8") as fh:
            corpus = parse_tagged_corpus(fh, build_tagset(cfg))
        units = extract_ulcs(corpus, cfg.corpus_freq_min)

    oracle = build_oracle(cfg)
    ctx = build_world_context(cfg, oracle, dictionary)
    settings = PipelineSettings(
        use_an=cfg.use_an,
        phase3_snippet_limit=cfg.phase3_snippet_limit,
        phase3_min_pair_freq=cfg.min_pair_freq,
        phase3_top_pairs=cfg.top_pairs,
        workers=cfg.workers,
    )

    if args.phase:
        units = _restrict_to_phase(units, dictionary, args.phase)

    report = run_pipeline(units, dictionary, ctx, settings)
    lexicon_path, summary_path = write_report(report, cfg.output_dir)
    translated = len(report.translated())
    print(f"{translated}/{len(report.records)} units translated -> {lexicon_path}")
    print(f"summary -> {summary_path}")
    if report.unresolved_count():
        print(f"{report.unresolved_count()} units unresolved at the oracle", file=sys.stderr)
        return EXIT_UNRESOLVED
    return EXIT_OK


def _restrict_to_phase(units, dictionary, phase: int):
    from .dictionary import UlcClassKind, classify_ulc

    wanted = {
        1: UlcClassKind.NON_POLYSEMOUS,
        2: UlcClassKind.POLYSEMOUS,
        3: UlcClassKind.UNKNOWN,
    }[phase]
    kept = []
    for ulc in units:
        classification = classify_ulc(ulc, dictionary)
        if classification.dictionary_translation is not None:
            # stored translations are folded into phase 1, never re-derived
            if phase == 1:
                kept.append(ulc)
        elif classification.kind is wanted:
            kept.append(ulc)
    return kept


def cmd_evaluate(args: argparse.Namespace) -> int:
    gold = load_gold(_require_file(args.gold, "gold file"))
    report = read_lexicon(_require_file(args.lexicon, "lexicon file"))
    try:
        metrics = compute_metrics(report, gold, args.total_sources)
    except GoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(format_metrics(metrics))
    return EXIT_OK


def cmd_world(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    oracle = build_oracle(cfg)
    tagger = (
        LexiconTagger.from_file(args.tagger) if args.tagger else default_tagger(args.lang)
    )
    world = build_lexical_world(
        args.phrase,
        args.lang,
        oracle,
        tagger,
        load_stopwords(args.lang),
        snippet_limit=cfg.snippet_limit,
        world_size=cfg.world_size,
    )
    write_world(world, sys.stdout)
    return EXIT_OK


def cmd_cache(args: argparse.Namespace) -> int:
    path = _require_file(args.cache_file, "cache file")
    cache = ResponseCache(path)
    if args.action == "stats":
        by_kind: dict[str, int] = {}
        for key in cache._entries:
            by_kind[key[0]] = by_kind.get(key[0], 0) + 1
        print(f"{len(cache)} entries in {path}")
        for kind in sorted(by_kind):
            print(f"  {kind}\t{by_kind[kind]}")
    else:
        kept = cache.compact()
        print(f"compacted {path} to {kept} records")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexiforge",
        description="Extract complex lexical units from a tagged corpus and translate them",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_dict: bool = False):
        p.add_argument("--config", help="flat key=value configuration file")
        p.add_argument("--cache", help="response cache file")
        p.add_argument("--backend", choices=("local", "http", "cache"))
        p.add_argument("--docs", help="document collection (JSONL) for the local backend")
        p.add_argument("--endpoint", help="HTTP search API endpoint")
        p.add_argument("--offline", action="store_true", help="never call a backend")
        p.add_argument("--source-lang", dest="source_lang")
        p.add_argument("--target-lang", dest="target_lang")
        if needs_dict:
            p.add_argument("--dictionary", help="bilingual dictionary file")

    p_extract = sub.add_parser("extract", help="extract and web-filter source units")
    add_common(p_extract)
    p_extract.add_argument("--corpus", help="tagged corpus file")
    p_extract.add_argument("--tagset", help="tagset name (coarse, treetagger-fr)")
    p_extract.add_argument("--max-ulcs", dest="max_ulcs", type=int)
    p_extract.add_argument("--out", help="output unit file")
    p_extract.set_defaults(func=cmd_extract)

    p_translate = sub.add_parser("translate", help="run the translation cascade")
    add_common(p_translate, needs_dict=True)
    p_translate.add_argument("--corpus", help="tagged corpus file")
    p_translate.add_argument("--ulcs", help="pre-extracted unit file")
    p_translate.add_argument("--tagset", help="tagset name (coarse, treetagger-fr)")
    p_translate.add_argument("--out-dir", dest="out_dir", help="report output directory")
    p_translate.add_argument("--phase", type=int, choices=(1, 2, 3), help="restrict to units eligible for one phase")
    p_translate.add_argument("--workers", type=int)
    p_translate.add_argument("--use-an", dest="use_an", action="store_true", help='use "an" before vowels in validation queries')
    p_translate.add_argument("--source-tagger", help="snippet tagger lexicon for the source language")
    p_translate.add_argument("--target-tagger", help="snippet tagger lexicon for the target language")
    p_translate.set_defaults(func=cmd_translate)

    p_eval = sub.add_parser("evaluate", help="score a lexicon against gold grades")
    p_eval.add_argument("--lexicon", required=True, help="lexicon.tsv from translate")
    p_eval.add_argument("--gold", required=True, help="gold grade file")
    p_eval.add_argument("--total-sources", dest="total_sources", type=int)
    p_eval.set_defaults(func=cmd_evaluate)

    p_world = sub.add_parser("world", help="print the lexical world of a phrase")
    add_common(p_world)
    p_world.add_argument("--phrase", required=True)
    p_world.add_argument("--lang", required=True)
    p_world.add_argument("--tagger", help="snippet tagger lexicon file")
    p_world.set_defaults(func=cmd_world)

    p_cache = sub.add_parser("cache", help="inspect or compact a response cache")
    p_cache.add_argument("action", choices=("stats", "compact"))
    p_cache.add_argument("cache_file")
    p_cache.set_defaults(func=cmd_cache)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CorpusParseError, GoldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
