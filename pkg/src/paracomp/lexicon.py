"""Lemma lists with per-lemma confidence weights.

Seed lemmas carry weight 1.0 at iteration 0.  Lemmas added by later
bootstrap rounds are tagged with their round index and a geometrically
decayed weight, so downstream counts can trust retrieved lemmas less
than the ones the user supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class LexiconEntry:
    lemma: str
    weight: float
    iteration: int


class WeightedLexicon:
    """Ordered collection of LexiconEntry, unique by lemma."""

    __slots__ = ("entries", "_by_lemma")

    def __init__(self, entries: Iterable[LexiconEntry]):
        self.entries: list[LexiconEntry] = list(entries)
        self._by_lemma: dict[str, LexiconEntry] = {}
        for entry in self.entries:
            if not entry.lemma:
                raise ValueError("lexicon contains an empty lemma")
            if entry.lemma in self._by_lemma:
                raise ValueError(f"duplicate lemma {entry.lemma!r}")
            if entry.weight <= 0:
                raise ValueError(f"non-positive weight for {entry.lemma!r}")
            self._by_lemma[entry.lemma] = entry

    @classmethod
    def from_lemmas(cls, lemmas: Iterable[str]) -> "WeightedLexicon":
        """Seed lexicon: weight 1.0, iteration 0, order preserved."""
        return cls(LexiconEntry(lemma, 1.0, 0) for lemma in lemmas)

    def add_discovered(
        self, lemmas: Iterable[str], iteration: int, decay: float
    ) -> "WeightedLexicon":
        """New lexicon with ``lemmas`` appended at ``decay ** iteration``."""
        weight = decay ** iteration
        extra = [LexiconEntry(lemma, weight, iteration) for lemma in lemmas]
        return WeightedLexicon(self.entries + extra)

    def lemmas(self) -> list[str]:
        return [entry.lemma for entry in self.entries]

    def gold_lemmas(self) -> list[str]:
        """The iteration-0 lemmas, i.e. the user-supplied ones."""
        return [entry.lemma for entry in self.entries if entry.iteration == 0]

    def weight(self, lemma: str) -> float:
        return self._by_lemma[lemma].weight

    def effective_size(self) -> float:
        """Sum of weights; equals len() for a pure seed lexicon."""
        return sum(entry.weight for entry in self.entries)

    def max_iteration(self) -> int:
        return max((entry.iteration for entry in self.entries), default=0)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._by_lemma

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries)
