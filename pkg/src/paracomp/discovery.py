"""Paradigm candidate discovery: which corpus words may inflect which lemmas.

A word is a candidate for a lemma when their longest common substring
covers more than ``ratio_threshold`` of the lemma.  Each (lemma,
candidate) pair yields an edit tree; trees are kept when their weighted
support across the lexicon clears a size-dependent cutoff.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .edit_tree import EditTree, construct, lcs_length, to_sexpr
from .lexicon import WeightedLexicon

#: Below this many (lemma, word) comparisons a worker pool costs more
#: than it saves, so the search stays in-process.
PARALLEL_MIN_PAIRS = 200_000

_WORKER: dict = {}


def min_tree_support(effective_lexicon_size: float, support_factor: float) -> float:
    """Weighted support a tree needs to be kept; never below 2."""
    return max(2.0, support_factor * effective_lexicon_size)


def _candidates_for(
    lemma: str,
    words: list[str],
    charsets: list[frozenset[str]],
    threshold: float,
) -> list[str]:
    # need is exclusive: a word qualifies iff lcs > threshold * |lemma|.
    need = threshold * len(lemma)
    lemma_chars = set(lemma)
    out = []
    for word, chars in zip(words, charsets):
        if min(len(word), len(lemma)) <= need:
            continue
        if lemma_chars.isdisjoint(chars):
            continue
        if lcs_length(lemma, word) > need:
            out.append(word)
    return out


def _init_worker(words: list[str], threshold: float) -> None:
    _WORKER["words"] = words
    _WORKER["charsets"] = [frozenset(w) for w in words]
    _WORKER["threshold"] = threshold


def _worker_chunk(lemmas: list[str]) -> list[list[str]]:
    words = _WORKER["words"]
    charsets = _WORKER["charsets"]
    threshold = _WORKER["threshold"]
    return [_candidates_for(lemma, words, charsets, threshold) for lemma in lemmas]


def find_candidates(
    lexicon: WeightedLexicon,
    vocab,
    ratio_threshold: float,
    workers: int = 1,
) -> dict[str, list[str]]:
    """Candidate forms per lemma, each list sorted.

    The result is identical for any worker count: lemmas are searched
    independently and merged back in lexicon order.
    """
    if not 0.0 <= ratio_threshold < 1.0:
        raise ValueError(
            f"ratio threshold must be in [0, 1), got {ratio_threshold}"
        )
    lemmas = lexicon.lemmas()
    for lemma in lemmas:
        if not lemma:
            raise ValueError("cannot search candidates for an empty lemma")
    words = sorted(vocab.types)
    result: dict[str, list[str]] = {}
    if workers > 1 and len(lemmas) * len(words) >= PARALLEL_MIN_PAIRS:
        chunk_size = max(1, len(lemmas) // (workers * 4) + 1)
        chunks = [
            lemmas[i:i + chunk_size] for i in range(0, len(lemmas), chunk_size)
        ]
        with multiprocessing.Pool(
            workers, initializer=_init_worker, initargs=(words, ratio_threshold)
        ) as pool:
            parts = pool.map(_worker_chunk, chunks)
        for chunk, part in zip(chunks, parts):
            for lemma, cands in zip(chunk, part):
                result[lemma] = cands
    else:
        charsets = [frozenset(w) for w in words]
        for lemma in lemmas:
            result[lemma] = _candidates_for(lemma, words, charsets, ratio_threshold)
    return result


@dataclass
class TreeCensus:
    """Bookkeeping from tree extraction.

    ``weights`` maps every constructed tree to its weighted support;
    ``support`` maps it to the (lemma, word) pairs that produced it.
    """

    weights: dict[EditTree, float]
    support: dict[EditTree, list[tuple[str, str]]]


def retain_frequent_trees(
    candidates: dict[str, list[str]],
    lexicon: WeightedLexicon,
    support_factor: float,
) -> tuple[list[EditTree], TreeCensus]:
    """Build trees from all (lemma, candidate) pairs and keep the frequent ones.

    A tree's support is the sum of the weights of the lemmas it was
    built from (one increment per candidate pair).  Kept trees are
    ordered by descending support, then by serialized form.
    """
    weights: dict[EditTree, float] = {}
    support: dict[EditTree, list[tuple[str, str]]] = {}
    for entry in lexicon:
        for word in candidates.get(entry.lemma, ()):
            tree = construct(entry.lemma, word)
            weights[tree] = weights.get(tree, 0.0) + entry.weight
            support.setdefault(tree, []).append((entry.lemma, word))
    cutoff = min_tree_support(lexicon.effective_size(), support_factor)
    kept = [tree for tree, weight in weights.items() if weight >= cutoff]
    kept.sort(key=lambda tree: (-weights[tree], to_sexpr(tree)))
    return kept, TreeCensus(weights, support)


def dump_census(census: TreeCensus, path: str) -> None:
    """Write tree<TAB>support-weight<TAB>pair-count rows, heaviest first."""
    trees = sorted(
        census.weights,
        key=lambda tree: (-census.weights[tree], to_sexpr(tree)),
    )
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for tree in trees:
            pairs = len(census.support.get(tree, ()))
            handle.write(
                f"{to_sexpr(tree)}\t{census.weights[tree]:g}\t{pairs}\n"
            )
