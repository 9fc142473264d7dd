from collections import Counter

import pytest

from paracomp.corpus_io import Vocabulary
from paracomp.discovery import (
    dump_census,
    find_candidates,
    min_tree_support,
    retain_frequent_trees,
)
from paracomp.edit_tree import IDENTITY, Match, Replace, to_sexpr
from paracomp.lexicon import WeightedLexicon

APPEND_ED = Match(0, 0, Replace("", ""), Replace("", "ed"))


def vocab_of(*words) -> Vocabulary:
    return Vocabulary(Counter(words))


def test_min_tree_support_values():
    assert min_tree_support(100, 0.05) == 5.0
    assert min_tree_support(10, 0.05) == 2.0
    assert min_tree_support(0, 0.05) == 2.0
    assert min_tree_support(200, 0.1) == 20.0


def test_find_candidates_toy():
    vocab = vocab_of("walk", "work", "walked", "worked")
    lexicon = WeightedLexicon.from_lemmas(["walk", "work"])
    assert find_candidates(lexicon, vocab, 0.5) == {
        "walk": ["walk", "walked"],
        "work": ["work", "worked"],
    }


def test_find_candidates_threshold_is_strict():
    # |lcs| / |lemma| must be strictly greater than the threshold.
    lexicon = WeightedLexicon.from_lemmas(["abcd"])
    at_half = vocab_of("abzz")   # lcs 2 -> ratio 0.5, excluded
    over = vocab_of("abcz")      # lcs 3 -> ratio 0.75, included
    assert find_candidates(lexicon, at_half, 0.5) == {"abcd": []}
    assert find_candidates(lexicon, over, 0.5) == {"abcd": ["abcz"]}


def test_find_candidates_zero_threshold_single_shared_char():
    lexicon = WeightedLexicon.from_lemmas(["xy"])
    assert find_candidates(lexicon, vocab_of("ya", "qq"), 0.0) == {"xy": ["ya"]}


def test_find_candidates_validates_threshold():
    lexicon = WeightedLexicon.from_lemmas(["walk"])
    with pytest.raises(ValueError, match="ratio threshold"):
        find_candidates(lexicon, vocab_of("walk"), 1.0)
    with pytest.raises(ValueError, match="ratio threshold"):
        find_candidates(lexicon, vocab_of("walk"), -0.1)


def test_find_candidates_rejects_empty_lemma():
    class Fake:
        def lemmas(self):
            return [""]

    with pytest.raises(ValueError, match="empty lemma"):
        find_candidates(Fake(), vocab_of("walk"), 0.5)


def test_find_candidates_worker_pool_matches_serial(monkeypatch):
    words = [f"w{i:03d}x" for i in range(40)] + ["walk", "walked", "work"]
    vocab = vocab_of(*words)
    lexicon = WeightedLexicon.from_lemmas(["walk", "work", "w001x"])
    serial = find_candidates(lexicon, vocab, 0.5, workers=1)
    monkeypatch.setattr("paracomp.discovery.PARALLEL_MIN_PAIRS", 0)
    parallel = find_candidates(lexicon, vocab, 0.5, workers=2)
    assert parallel == serial
    assert list(parallel) == list(serial)  # lexicon order preserved


def test_retain_frequent_trees_toy():
    vocab = vocab_of("walk", "work", "walked", "worked")
    lexicon = WeightedLexicon.from_lemmas(["walk", "work"])
    candidates = find_candidates(lexicon, vocab, 0.5)
    trees, census = retain_frequent_trees(candidates, lexicon, 0.05)
    # cutoff is max(2, 0.05*2) = 2; both trees sit exactly at 2 and are kept.
    assert trees == [IDENTITY, APPEND_ED]
    assert census.weights[APPEND_ED] == 2.0
    assert census.support[APPEND_ED] == [("walk", "walked"), ("work", "worked")]
    assert census.support[IDENTITY] == [("walk", "walk"), ("work", "work")]


def test_retain_cutoff_excludes_below():
    vocab = vocab_of("walk", "walked", "work")
    lexicon = WeightedLexicon.from_lemmas(["walk", "work"])
    candidates = find_candidates(lexicon, vocab, 0.5)
    trees, census = retain_frequent_trees(candidates, lexicon, 0.05)
    # identity supported by both lemmas; append-ed only by walk (1 < 2).
    assert trees == [IDENTITY]
    assert census.weights[APPEND_ED] == 1.0


def test_census_counts_weighted_lemmas():
    vocab = vocab_of("walk", "walked", "talk", "talked")
    lexicon = WeightedLexicon.from_lemmas(["walk"]).add_discovered(
        ["talk"], iteration=1, decay=0.5
    )
    candidates = find_candidates(lexicon, vocab, 0.5)
    _, census = retain_frequent_trees(candidates, lexicon, 0.05)
    assert census.weights[APPEND_ED] == 1.5
    assert census.weights[IDENTITY] == 1.5
    for tree, weight in census.weights.items():
        supports = census.support[tree]
        assert weight == pytest.approx(
            sum(lexicon.weight(lemma) for lemma, _ in supports)
        )


def test_retained_trees_ordered_by_weight_then_serialization():
    vocab = vocab_of("walk", "work", "talk", "walked", "worked")
    lexicon = WeightedLexicon.from_lemmas(["walk", "work", "talk"])
    candidates = find_candidates(lexicon, vocab, 0.5)
    trees, _ = retain_frequent_trees(candidates, lexicon, 0.05)
    # identity has support 3, append-ed support 2.
    assert trees == [IDENTITY, APPEND_ED]
    ident_first = to_sexpr(trees[0]) < to_sexpr(trees[1])
    assert ident_first  # also holds lexicographically here


def test_dump_census(tmp_path):
    vocab = vocab_of("walk", "work", "walked", "worked")
    lexicon = WeightedLexicon.from_lemmas(["walk", "work"])
    _, census = retain_frequent_trees(
        find_candidates(lexicon, vocab, 0.5), lexicon, 0.05
    )
    out = tmp_path / "census.tsv"
    dump_census(census, str(out))
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == '(match 0 0 (rep "" "") (rep "" ""))\t2\t2'
    assert len(lines) == len(census.weights)
