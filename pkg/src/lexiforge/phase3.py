"""Mining translations from mixed-language snippets.

Units that survive phases 1 and 2 untranslated, or whose constituents are
missing from the dictionary, are searched as source-language phrases inside
target-language pages. The returned snippets are largely bilingual, and two
successive strategies mine candidate translations from them: graphic
cognates (same first four characters after case and diacritic folding),
then the most frequent token bigrams. Both feed the phase-2 validation
filters; frequent pairs only run when cognates produced nothing.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Sequence

from .backends import tokenize
from .extraction import SourceUlc
from .generation import CandidateOrigin, CandidateTranslation
from .oracle import SearchOracle, Snippet
from .phase2 import Phase2Result, WorldContext, run_phase2

COGNATE_PREFIX_LEN = 4
DEFAULT_MIN_PAIR_FREQ = 2
DEFAULT_TOP_PAIRS = 10


@dataclass
class MinedCandidate(CandidateTranslation):
    """A candidate mined from snippets rather than generated: carries its
    snippet evidence count and, for cognates, the matched prefix."""

    evidence: int = 0
    matched_prefix: str | None = None


def normalize_token(token: str) -> str:
    """Lowercase and strip diacritics, so "café" and "Cafe" compare equal."""
    decomposed = unicodedata.normalize("NFD", token.lower())
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def cognate_prefix(word: str) -> str | None:
    """First four normalized characters, or None for words that are too
    short to anchor a cognate comparison."""
    normalized = normalize_token(word)
    if len(normalized) < COGNATE_PREFIX_LEN:
        return None
    return normalized[:COGNATE_PREFIX_LEN]


def is_cognate_pair(source_word: str, target_word: str) -> bool:
    prefix = cognate_prefix(source_word)
    return prefix is not None and cognate_prefix(target_word) == prefix


def collect_mixed_snippets(
    ulc: SourceUlc, oracle: SearchOracle, target_lang: str, limit: int = 1_000
) -> list[Snippet]:
    """Snippets from target-language pages that contain the source phrase."""
    return oracle.mixed_snippets(ulc.surface, target_lang, limit)


def _bigram_allowed(
    bigram: tuple[str, str], source_tokens: set[str], source_stopwords: frozenset[str]
) -> bool:
    # Crude target-language test: neither token is a source stopword nor
    # part of the source phrase itself.
    return all(t not in source_stopwords and t not in source_tokens for t in bigram)


def _count_bigrams(
    snippets: Sequence[Snippet],
    source_tokens: set[str],
    source_stopwords: frozenset[str],
) -> dict[tuple[str, str], int]:
    counts: dict[tuple[str, str], int] = {}
    for snippet in snippets:
        tokens = tokenize(snippet.text)
        for i in range(len(tokens) - 1):
            bigram = (tokens[i], tokens[i + 1])
            if _bigram_allowed(bigram, source_tokens, source_stopwords):
                counts[bigram] = counts.get(bigram, 0) + 1
    return counts


def find_cognates(
    snippets: Sequence[Snippet],
    ulc: SourceUlc,
    source_stopwords: frozenset[str] = frozenset(),
) -> list[CandidateTranslation]:
    """Bigram candidates anchored on a cognate of one of the constituents.

    A snippet token is a cognate match when its first four normalized
    characters equal those of a constituent; constituents shorter than four
    characters are skipped. Candidates are the bigrams containing at least
    one cognate token, ranked by how often they recur across the snippets.
    """
    prefixes: dict[str, str] = {}
    for constituent in ulc.content_lemmas():
        prefix = cognate_prefix(constituent)
        if prefix is not None:
            prefixes[prefix] = constituent
    if not prefixes:
        return []

    source_tokens = set(tokenize(ulc.surface))
    bigram_counts = _count_bigrams(snippets, source_tokens, source_stopwords)

    candidates = []
    for bigram, count in sorted(bigram_counts.items(), key=lambda kv: (-kv[1], kv[0])):
        matched = next((p for p in prefixes if any(cognate_prefix(t) == p for t in bigram)), None)
        if matched is None:
            continue
        candidate = MinedCandidate(
            source=ulc,
            target_surface=" ".join(bigram),
            rule=None,
            origin=CandidateOrigin.COGNATE,
            evidence=count,
            matched_prefix=matched,
        )
        candidate.scores["evidence"] = float(count)
        candidates.append(candidate)
    return candidates


def find_frequent_pairs(
    snippets: Sequence[Snippet],
    ulc: SourceUlc,
    source_stopwords: frozenset[str] = frozenset(),
    min_pair_freq: int = DEFAULT_MIN_PAIR_FREQ,
    top_pairs: int = DEFAULT_TOP_PAIRS,
) -> list[CandidateTranslation]:
    """The most recurrent bigrams of the raw snippets, as candidates."""
    source_tokens = set(tokenize(ulc.surface))
    bigram_counts = _count_bigrams(snippets, source_tokens, source_stopwords)
    ranked = sorted(bigram_counts.items(), key=lambda kv: (-kv[1], kv[0]))

    candidates = []
    for bigram, count in ranked:
        if count < min_pair_freq:
            continue
        candidate = MinedCandidate(
            source=ulc,
            target_surface=" ".join(bigram),
            rule=None,
            origin=CandidateOrigin.FREQUENT_PAIR,
            evidence=count,
        )
        candidate.scores["evidence"] = float(count)
        candidates.append(candidate)
        if len(candidates) >= top_pairs:
            break
    return candidates


def validate_mined(
    candidates: Sequence[CandidateTranslation],
    ulc: SourceUlc,
    ctx: WorldContext,
) -> Phase2Result:
    """Run mined candidates through the phase-2 validation cascade."""
    return run_phase2(ulc, candidates, ctx)


@dataclass
class Phase3Result:
    winner: CandidateTranslation | None
    snippet_count: int
    cognate_candidates: list[CandidateTranslation]
    pair_candidates: list[CandidateTranslation]
    unresolved: list[CandidateTranslation]


def write_mined_log(candidates: Sequence[MinedCandidate], out) -> None:
    """Tab-separated mining log: candidate, origin, evidence, prefix."""
    for c in candidates:
        out.write(
            "\t".join(
                [c.target_surface, c.origin.value, str(c.evidence), c.matched_prefix or "-"]
            )
            + "\n"
        )


def run_phase3(
    ulc: SourceUlc,
    ctx: WorldContext,
    source_stopwords: frozenset[str] = frozenset(),
    snippet_limit: int = 1_000,
    min_pair_freq: int = DEFAULT_MIN_PAIR_FREQ,
    top_pairs: int = DEFAULT_TOP_PAIRS,
) -> Phase3Result:
    """Mine and validate: cognates first, frequent pairs only if cognates
    yield no validated translation."""
    snippets = collect_mixed_snippets(ulc, ctx.oracle, ctx.target_lang, snippet_limit)
    if not snippets:
        return Phase3Result(None, 0, [], [], [])

    cognates = find_cognates(snippets, ulc, source_stopwords)
    unresolved: list[CandidateTranslation] = []
    if cognates:
        result = validate_mined(cognates, ulc, ctx)
        unresolved.extend(result.unresolved)
        if result.winner is not None:
            return Phase3Result(result.winner, len(snippets), cognates, [], unresolved)

    pairs = find_frequent_pairs(snippets, ulc, source_stopwords, min_pair_freq, top_pairs)
    winner = None
    if pairs:
        result = validate_mined(pairs, ulc, ctx)
        unresolved.extend(result.unresolved)
        winner = result.winner
    return Phase3Result(winner, len(snippets), cognates, pairs, unresolved)
