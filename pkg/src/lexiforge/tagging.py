"""Snippet tagging for lexical-world construction.

Snippet text is noisy, so the tagger interface is deliberately small: take
raw text, return (lemma, coarse pos) pairs. Production setups can plug a
real tagger; the shipped fallback looks words up in a flat lexicon file
(``surface<TAB>pos<TAB>lemma``) and tags everything unknown as OTHER, which
keeps it out of the noun/adjective worlds.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol, TextIO

from .backends import tokenize


class SnippetTagger(Protocol):
    def tag(self, text: str) -> list[tuple[str, str]]:
        """(lemma, pos) for each token of ``text``, in order."""
        ...


class LexiconTagger:
    """Word-list tagger: surface form -> (pos, lemma), unknown -> OTHER."""

    def __init__(self, entries: Iterable[tuple[str, str, str]]):
        self._table: dict[str, tuple[str, str]] = {}
        for surface, pos, lemma in entries:
            self._table[surface.lower()] = (pos, lemma.lower())

    @classmethod
    def from_file(cls, source: TextIO | str | Path) -> "LexiconTagger":
        if isinstance(source, (str, Path)):
            with open(source, encoding="utf-8") as fh:
                return cls.from_file(fh)
        entries = []
        for line in source:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ValueError(f"bad tagger lexicon line: {line!r}")
            entries.append((fields[0], fields[1], fields[2]))
        return cls(entries)

    def tag(self, text: str) -> list[tuple[str, str]]:
        tagged = []
        for token in tokenize(text):
            pos, lemma = self._table.get(token, ("OTHER", token))
            tagged.append((lemma, pos))
        return tagged

    def __len__(self) -> int:
        return len(self._table)


def _data_text(filename: str) -> str:
    return resources.files("lexiforge.data").joinpath(filename).read_text(encoding="utf-8")


def load_stopwords(lang: str, path: str | Path | None = None) -> frozenset[str]:
    """Stopword set for ``lang``; ships lists for fr and en."""
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = _data_text(f"stopwords_{lang}.txt")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def default_tagger(lang: str) -> LexiconTagger:
    """The shipped lexicon tagger for ``lang`` (fr and en available)."""
    import io

    return LexiconTagger.from_file(io.StringIO(_data_text(f"tagger_{lang}.tsv")))
