"""Run configuration: flat ``section.key = value`` files plus CLI overrides.

Example::

    oracle.backend = local
    oracle.docs = fixtures/docs.jsonl
    oracle.cache = run.cache
    phase2.noun_jaccard_min = 0.05
    lang.source = fr
    lang.target = en

CLI flags override file values; the API key may also come from the
LEXIFORGE_ORACLE_KEY environment variable, which wins over both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

API_KEY_ENV = "LEXIFORGE_ORACLE_KEY"

BACKENDS = ("local", "http", "cache")


class ConfigError(ValueError):
    pass


def parse_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw_line in enumerate(fh, start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


# config-file key -> RunConfig attribute
KEY_MAP = {
    "corpus.path": "corpus_path",
    "corpus.tagset": "tagset_name",
    "dictionary.path": "dictionary_path",
    "output.dir": "output_dir",
    "lang.source": "source_lang",
    "lang.target": "target_lang",
    "oracle.backend": "backend",
    "oracle.cache": "cache_path",
    "oracle.docs": "docs_path",
    "oracle.endpoint": "endpoint",
    "oracle.api_key": "api_key",
    "oracle.rate_per_sec": "rate_per_sec",
    "oracle.parallelism": "parallelism",
    "extract.corpus_freq_min": "corpus_freq_min",
    "extract.literal_freq_min": "literal_freq_min",
    "extract.article_freq_min": "article_freq_min",
    "extract.max_ulcs": "max_ulcs",
    "generation.use_an": "use_an",
    "phase2.snippet_limit": "snippet_limit",
    "phase2.world_size": "world_size",
    "phase2.noun_jaccard_min": "noun_jaccard_min",
    "phase2.adj_jaccard_min": "adj_jaccard_min",
    "phase2.pair_top_k": "pair_top_k",
    "phase3.snippet_limit": "phase3_snippet_limit",
    "phase3.min_pair_freq": "min_pair_freq",
    "phase3.top_pairs": "top_pairs",
    "pipeline.workers": "workers",
}

_ATTR_TO_KEY = {attr: key for key, attr in KEY_MAP.items()}


@dataclass
class RunConfig:
    corpus_path: str | None = None
    dictionary_path: str | None = None
    output_dir: str = "out"
    tagset_name: str = "coarse"
    tagset_overrides: dict[str, str] = field(default_factory=dict)
    source_lang: str = "fr"
    target_lang: str = "en"

    backend: str = "local"
    cache_path: str | None = None
    docs_path: str | None = None
    endpoint: str = ""
    api_key: str = ""
    rate_per_sec: float = 2.0
    parallelism: int = 4
    offline: bool = False

    corpus_freq_min: int = 10
    literal_freq_min: int = 10_000
    article_freq_min: int = 1_000
    max_ulcs: int | None = None

    use_an: bool = False
    snippet_limit: int = 1_000
    world_size: int = 50
    noun_jaccard_min: float = 0.05
    adj_jaccard_min: float = 0.05
    pair_top_k: int | None = None

    phase3_snippet_limit: int = 1_000
    min_pair_freq: int = 2
    top_pairs: int = 10

    workers: int = 4

    # Snippet tagger overrides (paths to lexicon files); CLI-only knobs.
    source_tagger_path: str | None = None
    target_tagger_path: str | None = None

    def apply_mapping(self, values: Mapping[str, str]) -> None:
        for key, raw in values.items():
            if key.startswith("tagset."):
                self.tagset_overrides[key[len("tagset.") :]] = raw
                continue
            attr = KEY_MAP.get(key)
            if attr is None:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(self, attr, _coerce(attr, raw, type(getattr(self, attr))))
        if os.environ.get(API_KEY_ENV):
            self.api_key = os.environ[API_KEY_ENV]

    def validate(self) -> None:
        if self.backend not in BACKENDS:
            raise ConfigError(f"oracle.backend must be one of {BACKENDS}")
        for attr in (
            "corpus_freq_min",
            "literal_freq_min",
            "article_freq_min",
            "snippet_limit",
            "world_size",
            "noun_jaccard_min",
            "adj_jaccard_min",
            "phase3_snippet_limit",
            "min_pair_freq",
            "top_pairs",
            "rate_per_sec",
            "parallelism",
            "workers",
        ):
            if getattr(self, attr) < 0:
                raise ConfigError(f"{_ATTR_TO_KEY.get(attr, attr)} must be non-negative")
        for attr in ("max_ulcs", "pair_top_k"):
            value = getattr(self, attr)
            if value is not None and value < 0:
                raise ConfigError(f"{_ATTR_TO_KEY.get(attr, attr)} must be non-negative")
        if self.backend == "http" and not self.endpoint and not self.offline:
            raise ConfigError("http backend requires oracle.endpoint")
        if self.backend == "local" and not self.docs_path and not self.offline:
            raise ConfigError("local backend requires oracle.docs")
        if self.backend == "cache" and not self.cache_path:
            raise ConfigError("cache backend requires oracle.cache")

    def dump(self, out) -> None:
        """Write every mapped key so a dump reloads to identical behavior."""
        for key in sorted(KEY_MAP):
            value = getattr(self, KEY_MAP[key])
            if value is None:
                continue
            if isinstance(value, bool):
                value = "true" if value else "false"
            out.write(f"{key} = {value}\n")
        for raw, coarse in sorted(self.tagset_overrides.items()):
            out.write(f"tagset.{raw} = {coarse}\n")


def _coerce(attr: str, raw: str, current_type: type):
    if attr in ("max_ulcs", "pair_top_k"):
        return None if raw.lower() in ("", "none", "off") else int(raw)
    if current_type is bool:
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"cannot parse boolean from {raw!r}")
    if current_type is int:
        return int(raw)
    if current_type is float:
        return float(raw)
    return raw


def load_config(path: str | Path | None = None) -> RunConfig:
    config = RunConfig()
    if path is not None:
        config.apply_mapping(parse_config_file(path))
    return config
