"""Search oracle: one interface for hit counts, snippets, pair-document
counts and language-restricted "mixed" snippets, in front of a persistent
response cache.

Every response is cached under the canonical form of its query, so a warm
cache makes a whole pipeline run deterministic and fully offline. A query
string may be a single exact phrase or an OR-disjunction of quoted phrases
(``"the snare drum" OR "a snare drum"``); backends return the engine count
for the disjunction.
"""

from __future__ import annotations

import enum
import json
import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

log = logging.getLogger(__name__)


class OracleError(RuntimeError):
    """Backend unavailable and no cached response; safe to retry later."""


class QueryKind(enum.Enum):
    PHRASE_COUNT = "PHRASE_COUNT"
    SNIPPETS = "SNIPPETS"
    PAIR_COUNT = "PAIR_COUNT"
    MIXED_SNIPPETS = "MIXED_SNIPPETS"


@dataclass(frozen=True)
class Snippet:
    text: str
    doc_id: str | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty snippet text")


@dataclass(frozen=True)
class OracleQuery:
    kind: QueryKind
    phrases: tuple[str, ...]
    lang_restrict: str | None = None
    limit: int | None = None

    def __post_init__(self):
        expected = 2 if self.kind is QueryKind.PAIR_COUNT else 1
        if len(self.phrases) != expected:
            raise ValueError(f"{self.kind.value} takes {expected} phrase(s)")
        if any(not p for p in self.phrases):
            raise ValueError("empty phrase")
        if self.kind is QueryKind.MIXED_SNIPPETS and not self.lang_restrict:
            raise ValueError("MIXED_SNIPPETS requires lang_restrict")
        if self.kind in (QueryKind.SNIPPETS, QueryKind.MIXED_SNIPPETS):
            if self.limit is None or self.limit < 1:
                raise ValueError("snippet queries require limit >= 1")

    def cache_key(self) -> tuple[str, tuple[str, ...], str, str]:
        return (
            self.kind.value,
            tuple(sorted(self.phrases)),
            self.lang_restrict or "-",
            "-" if self.limit is None else str(self.limit),
        )


def split_or_query(query: str) -> list[str]:
    """Disjunct phrases of an OR-query; a plain phrase is its own disjunct."""
    parts = [p.strip() for p in query.split(" OR ")]
    phrases = []
    for part in parts:
        if len(part) >= 2 and part.startswith('"') and part.endswith('"'):
            part = part[1:-1]
        if part:
            phrases.append(part)
    return phrases


class Backend(Protocol):
    name: str

    def execute(self, query: OracleQuery) -> int | list[Snippet]: ...


def _encode_response(value: int | list[Snippet]) -> str:
    if isinstance(value, int):
        return json.dumps(value)
    return json.dumps([[s.text, s.doc_id] for s in value], ensure_ascii=False)


def _decode_response(payload: str) -> int | list[Snippet]:
    value = json.loads(payload)
    if isinstance(value, int):
        return value
    return [Snippet(text, doc_id) for text, doc_id in value]


class ResponseCache:
    """Append-only response cache, one record per line, last write wins.

    Record layout: kind, phrase1, phrase2 (empty when absent), language,
    limit, then the JSON payload, all tab-separated. Corrupt lines are
    skipped with a warning so the query can simply be re-issued.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._entries: dict[tuple, int | list[Snippet]] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            self._load()

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 6:
                    log.warning("%s:%d: skipping corrupt cache record", self.path, lineno)
                    continue
                kind, p1, p2, lang, limit, payload = fields
                try:
                    QueryKind(kind)
                    value = _decode_response(payload)
                except (ValueError, json.JSONDecodeError, TypeError):
                    log.warning("%s:%d: skipping corrupt cache record", self.path, lineno)
                    continue
                phrases = (p1,) if not p2 else (p1, p2)
                self._entries[(kind, tuple(sorted(phrases)), lang, limit)] = value

    def get(self, query: OracleQuery) -> int | list[Snippet] | None:
        with self._lock:
            return self._entries.get(query.cache_key())

    def put(self, query: OracleQuery, value: int | list[Snippet]) -> None:
        kind, phrases, lang, limit = query.cache_key()
        p1 = phrases[0]
        p2 = phrases[1] if len(phrases) > 1 else ""
        record = "\t".join([kind, p1, p2, lang, limit, _encode_response(value)])
        with self._lock:
            self._entries[query.cache_key()] = value
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(record + "\n")

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def compact(self) -> int:
        """Rewrite the file with one record per key; returns records kept."""
        with self._lock:
            records = []
            for (kind, phrases, lang, limit), value in sorted(
                self._entries.items(), key=lambda kv: kv[0]
            ):
                p1 = phrases[0]
                p2 = phrases[1] if len(phrases) > 1 else ""
                records.append("\t".join([kind, p1, p2, lang, limit, _encode_response(value)]))
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                for record in records:
                    fh.write(record + "\n")
            tmp.replace(self.path)
            return len(records)


class SearchOracle:
    """Thread-safe front end combining a backend with the response cache.

    Identical in-flight queries are de-duplicated so concurrent callers
    trigger at most one backend call per distinct query. With ``offline``
    set, cache misses raise OracleError instead of reaching the backend.
    """

    def __init__(
        self,
        backend: Backend | None,
        cache: ResponseCache | None = None,
        offline: bool = False,
        max_parallel: int = 4,
    ):
        if backend is None and cache is None:
            raise ValueError("need a backend or a cache")
        self._backend = backend
        self._cache = cache
        self._offline = offline
        self._lock = threading.Lock()
        self._inflight: dict[tuple, threading.Event] = {}
        self._slots = threading.Semaphore(max(1, max_parallel))
        self.backend_calls = 0

    @property
    def backend_name(self) -> str:
        if self._offline or self._backend is None:
            return "cache-only"
        return self._backend.name

    def execute(self, query: OracleQuery) -> int | list[Snippet]:
        if self._cache is not None:
            cached = self._cache.get(query)
            if cached is not None:
                return cached
        if self._offline or self._backend is None:
            raise OracleError(f"offline: no cached response for {query.cache_key()}")

        key = query.cache_key()
        while True:
            with self._lock:
                event = self._inflight.get(key)
                if event is None:
                    self._inflight[key] = threading.Event()
                    break
            event.wait()
            if self._cache is not None:
                cached = self._cache.get(query)
                if cached is not None:
                    return cached
            # The other caller failed; take over the slot.

        try:
            with self._lock:
                self.backend_calls += 1
            with self._slots:
                value = self._backend.execute(query)
            if self._cache is not None:
                self._cache.put(query, value)
            return value
        finally:
            with self._lock:
                done = self._inflight.pop(key)
            done.set()

    def phrase_count(self, query: str) -> int:
        value = self.execute(OracleQuery(QueryKind.PHRASE_COUNT, (query,)))
        if not isinstance(value, int):
            raise OracleError(f"backend returned non-count for {query!r}")
        return value

    def pair_count(self, phrase_a: str, phrase_b: str) -> int:
        value = self.execute(OracleQuery(QueryKind.PAIR_COUNT, (phrase_a, phrase_b)))
        if not isinstance(value, int):
            raise OracleError("backend returned non-count for pair query")
        return value

    def snippets(self, phrase: str, limit: int) -> list[Snippet]:
        value = self.execute(OracleQuery(QueryKind.SNIPPETS, (phrase,), limit=limit))
        if isinstance(value, int):
            raise OracleError(f"backend returned non-snippets for {phrase!r}")
        return value

    def mixed_snippets(self, phrase: str, lang: str, limit: int) -> list[Snippet]:
        value = self.execute(
            OracleQuery(QueryKind.MIXED_SNIPPETS, (phrase,), lang_restrict=lang, limit=limit)
        )
        if isinstance(value, int):
            raise OracleError(f"backend returned non-snippets for {phrase!r}")
        return value
