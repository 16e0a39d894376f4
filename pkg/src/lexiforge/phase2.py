"""Disambiguation of polysemous compositional units via lexical worlds.

Candidates are first thinned by two cheap web filters (the pair must
co-occur in at least one document; the target phrase must be at least as
frequent as the source phrase). The survivors are then compared to the
source unit through "lexical worlds": the top-50 noun and top-50 adjective
lemmas of up to 1,000 search snippets, matched across languages through the
bilingual dictionary and scored with a per-category Jaccard index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .dictionary import BilingualDictionary
from .extraction import SourceUlc
from .generation import CandidateTranslation
from .oracle import OracleError, SearchOracle
from .tagging import SnippetTagger

DEFAULT_SNIPPET_LIMIT = 1_000
DEFAULT_WORLD_SIZE = 50
DEFAULT_NOUN_JACCARD_MIN = 0.05
DEFAULT_ADJ_JACCARD_MIN = 0.05


@dataclass(frozen=True)
class LexicalWorld:
    """Bag-of-context profile of a phrase: its most frequent noun and
    adjective lemmas over the snippets returned for the exact phrase."""

    phrase: str
    lang: str
    nouns: tuple[tuple[str, int], ...]
    adjectives: tuple[tuple[str, int], ...]
    snippet_count: int

    def noun_lemmas(self) -> tuple[str, ...]:
        return tuple(lemma for lemma, _ in self.nouns)

    def adjective_lemmas(self) -> tuple[str, ...]:
        return tuple(lemma for lemma, _ in self.adjectives)


@dataclass(frozen=True)
class WorldSimilarity:
    noun_jaccard: float
    adj_jaccard: float
    matched_nouns: tuple[tuple[str, str], ...]
    matched_adjs: tuple[tuple[str, str], ...]

    @property
    def combined(self) -> float:
        return (self.noun_jaccard + self.adj_jaccard) / 2.0


@dataclass
class Phase2Result:
    winner: CandidateTranslation | None
    pair_survivors: list[CandidateTranslation]
    ratio_survivors: list[CandidateTranslation]
    unresolved: list[CandidateTranslation]
    scored: list[tuple[CandidateTranslation, WorldSimilarity]]


def parallel_pair_filter(
    source_surface: str,
    candidates: Sequence[CandidateTranslation],
    oracle: SearchOracle,
    top_k: int | None = None,
) -> tuple[list[CandidateTranslation], list[CandidateTranslation]]:
    """Keep candidates whose (source, candidate) pair shares a document.

    Returns (survivors, unresolved); unresolved candidates hit an oracle
    failure and are excluded from this run but not rejected.
    """
    survivors = []
    unresolved = []
    for candidate in candidates:
        try:
            count = oracle.pair_count(source_surface, candidate.target_surface)
        except OracleError:
            unresolved.append(candidate)
            continue
        candidate.scores["pair_count"] = float(count)
        if count >= 1:
            survivors.append(candidate)
    if top_k is not None and top_k > 0:
        ranked = sorted(
            survivors,
            key=lambda c: (-c.scores["pair_count"], c.target_surface),
        )
        keep = {id(c) for c in ranked[:top_k]}
        survivors = [c for c in survivors if id(c) in keep]
    return survivors, unresolved


def ratio_filter(
    candidates: Sequence[CandidateTranslation],
    source_count: int,
    oracle: SearchOracle,
) -> tuple[list[CandidateTranslation], list[CandidateTranslation]]:
    """Exclude candidates strictly less frequent than the source phrase;
    equality survives."""
    survivors = []
    unresolved = []
    for candidate in candidates:
        try:
            count = oracle.phrase_count(candidate.target_surface)
        except OracleError:
            unresolved.append(candidate)
            continue
        candidate.scores["web_count"] = float(count)
        if count >= source_count:
            survivors.append(candidate)
    return survivors, unresolved


def build_lexical_world(
    phrase: str,
    lang: str,
    oracle: SearchOracle,
    tagger: SnippetTagger,
    stopwords: frozenset[str] = frozenset(),
    exclude_lemmas: Iterable[str] = (),
    snippet_limit: int = DEFAULT_SNIPPET_LIMIT,
    world_size: int = DEFAULT_WORLD_SIZE,
) -> LexicalWorld:
    """Fetch snippets for the exact phrase and profile their vocabulary.

    The phrase's own constituent lemmas are excluded so two phrases never
    look similar merely by containing each other. Zero snippets simply
    yield an empty world, which scores 0 downstream.
    """
    snippets = oracle.snippets(phrase, snippet_limit)

    excluded = set(w.lower() for w in exclude_lemmas)
    for lemma, _pos in tagger.tag(phrase):
        excluded.add(lemma)

    noun_freq: dict[str, int] = {}
    adj_freq: dict[str, int] = {}
    for snippet in snippets:
        for lemma, pos in tagger.tag(snippet.text):
            if lemma in stopwords or lemma in excluded:
                continue
            if pos == "NOUN":
                noun_freq[lemma] = noun_freq.get(lemma, 0) + 1
            elif pos == "ADJ":
                adj_freq[lemma] = adj_freq.get(lemma, 0) + 1

    def top(freqs: dict[str, int]) -> tuple[tuple[str, int], ...]:
        ranked = sorted(freqs.items(), key=lambda kv: (-kv[1], kv[0]))
        return tuple(ranked[:world_size])

    return LexicalWorld(phrase, lang, top(noun_freq), top(adj_freq), len(snippets))


def _match_category(
    source_lemmas: Sequence[str],
    target_lemmas: Sequence[str],
    dictionary: BilingualDictionary,
    pos: str,
) -> tuple[float, tuple[tuple[str, str], ...]]:
    target_set = {t.lower() for t in target_lemmas}
    matches = []
    for lemma in source_lemmas:
        for translation in dictionary.lookup(lemma, pos):
            if translation.lower() in target_set:
                matches.append((lemma, translation.lower()))
                break
    intersection = len(matches)
    # Subtract each matched target lemma once: two source lemmas sharing a
    # translation count twice in the intersection but cannot shrink the
    # union twice, or the score could exceed 1.
    matched_targets = {t for _, t in matches}
    union = len(source_lemmas) + len(target_lemmas) - len(matched_targets)
    score = intersection / union if union else 0.0
    return score, tuple(matches)


def compare_worlds(
    source: LexicalWorld, target: LexicalWorld, dictionary: BilingualDictionary
) -> WorldSimilarity:
    """Dictionary-mediated Jaccard between two worlds, per category.

    A source lemma is in the intersection when any of its translations for
    the category's word class appears in the target list (first such
    translation recorded as the matched pair); the union is |source| +
    |target| minus the distinct matched target lemmas. Scores stay in
    [0, 1] and are 0 when a category is empty on both sides.
    """
    noun_score, noun_matches = _match_category(
        source.noun_lemmas(), target.noun_lemmas(), dictionary, "NOUN"
    )
    adj_score, adj_matches = _match_category(
        source.adjective_lemmas(), target.adjective_lemmas(), dictionary, "ADJ"
    )
    return WorldSimilarity(noun_score, adj_score, noun_matches, adj_matches)


def select_translation(
    scored: Sequence[tuple[CandidateTranslation, WorldSimilarity]],
    noun_jaccard_min: float = DEFAULT_NOUN_JACCARD_MIN,
    adj_jaccard_min: float = DEFAULT_ADJ_JACCARD_MIN,
) -> CandidateTranslation | None:
    """Highest combined score among candidates clearing both thresholds;
    ties go to the candidate with the higher phrase count."""
    eligible = [
        (candidate, similarity)
        for candidate, similarity in scored
        if similarity.noun_jaccard >= noun_jaccard_min
        and similarity.adj_jaccard >= adj_jaccard_min
    ]
    if not eligible:
        return None
    eligible.sort(
        key=lambda pair: (
            -pair[1].combined,
            -pair[0].scores.get("web_count", 0.0),
            pair[0].target_surface,
        )
    )
    return eligible[0][0]


@dataclass
class WorldContext:
    """Everything world construction needs, bundled per run."""

    oracle: SearchOracle
    dictionary: BilingualDictionary
    source_lang: str
    target_lang: str
    source_tagger: SnippetTagger
    target_tagger: SnippetTagger
    source_stopwords: frozenset[str] = frozenset()
    target_stopwords: frozenset[str] = frozenset()
    snippet_limit: int = DEFAULT_SNIPPET_LIMIT
    world_size: int = DEFAULT_WORLD_SIZE
    noun_jaccard_min: float = DEFAULT_NOUN_JACCARD_MIN
    adj_jaccard_min: float = DEFAULT_ADJ_JACCARD_MIN
    pair_top_k: int | None = None


def run_phase2(
    ulc: SourceUlc,
    candidates: Sequence[CandidateTranslation],
    ctx: WorldContext,
) -> Phase2Result:
    """Full phase-2 cascade for one unit: pair filter, ratio filter,
    world comparison, selection."""
    oracle = ctx.oracle
    pair_survivors, unresolved = parallel_pair_filter(
        ulc.surface, candidates, oracle, ctx.pair_top_k
    )

    ratio_survivors: list[CandidateTranslation] = []
    scored: list[tuple[CandidateTranslation, WorldSimilarity]] = []
    if pair_survivors:
        if ulc.oracle_literal_freq is not None:
            source_count = ulc.oracle_literal_freq
        else:
            source_count = oracle.phrase_count(ulc.surface)
        ratio_survivors, ratio_unresolved = ratio_filter(pair_survivors, source_count, oracle)
        unresolved.extend(ratio_unresolved)

    if ratio_survivors:
        source_world = build_lexical_world(
            ulc.surface,
            ctx.source_lang,
            oracle,
            ctx.source_tagger,
            ctx.source_stopwords,
            exclude_lemmas=ulc.content_lemmas(),
            snippet_limit=ctx.snippet_limit,
            world_size=ctx.world_size,
        )
        for candidate in ratio_survivors:
            target_world = build_lexical_world(
                candidate.target_surface,
                ctx.target_lang,
                oracle,
                ctx.target_tagger,
                ctx.target_stopwords,
                snippet_limit=ctx.snippet_limit,
                world_size=ctx.world_size,
            )
            similarity = compare_worlds(source_world, target_world, ctx.dictionary)
            candidate.scores["noun_jaccard"] = similarity.noun_jaccard
            candidate.scores["adj_jaccard"] = similarity.adj_jaccard
            candidate.scores["combined_jaccard"] = similarity.combined
            scored.append((candidate, similarity))

    winner = select_translation(scored, ctx.noun_jaccard_min, ctx.adj_jaccard_min)
    return Phase2Result(winner, pair_survivors, ratio_survivors, unresolved, scored)


def write_world(world: LexicalWorld, out: TextIO) -> None:
    """One-line inspection dump: phrase, lang, then lemma:freq lists."""
    nouns = ",".join(f"{lemma}:{freq}" for lemma, freq in world.nouns)
    adjs = ",".join(f"{lemma}:{freq}" for lemma, freq in world.adjectives)
    out.write(
        "\t".join([world.phrase, world.lang, str(world.snippet_count), nouns, adjs]) + "\n"
    )
