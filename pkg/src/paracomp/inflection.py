"""Affix-editing rules: turning slot examples into a string rewriter.

From every (lemma, form) training pair the longest common substring is
taken as the stem.  The material before it yields one prefix rule; the
material after it yields a family of suffix rules, one per split point
walking from the stem boundary back into the stem, so both "" -> "ed"
and "work" -> "worked" are learned from a single pair.  Generation
applies the longest matching suffix rule, then the longest matching
prefix rule, and falls back to copying the lemma.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .edit_tree import longest_common_substring

log = logging.getLogger(__name__)

Rule = tuple[str, str]


@dataclass
class SlotRules:
    prefix: dict[Rule, float] = field(default_factory=dict)
    suffix: dict[Rule, float] = field(default_factory=dict)


@dataclass
class RuleTable:
    slots: dict[Hashable, SlotRules] = field(default_factory=dict)


def extract_affix_rules(
    triples: Iterable[tuple[Hashable, str, str, float]],
) -> RuleTable:
    """Learn weighted prefix/suffix rules from (slot, lemma, form, weight).

    Pairs with no common substring cannot be split into affixes and
    are skipped with a warning.
    """
    table = RuleTable()
    for slot, source, target, weight in triples:
        length, sx, sy = longest_common_substring(source, target)
        if length == 0:
            log.warning(
                "no common substring in %r -> %r, pair skipped", source, target
            )
            continue
        rules = table.slots.setdefault(slot, SlotRules())
        prefix_rule = (source[:sx], target[:sy])
        rules.prefix[prefix_rule] = rules.prefix.get(prefix_rule, 0.0) + weight
        stem = source[sx:sx + length]
        source_suffix = source[sx + length:]
        target_suffix = target[sy + length:]
        for cut in range(length + 1):
            rule = (stem[length - cut:] + source_suffix,
                    stem[length - cut:] + target_suffix)
            rules.suffix[rule] = rules.suffix.get(rule, 0.0) + weight
    return table


def _pick(rules: dict[Rule, float], text: str, at_end: bool) -> Rule | None:
    """Best applicable rule: longest old, then heaviest, then smallest new.

    Two applicable olds of equal length are the same string (both are
    the same slice of ``text``), so ties reduce to competing news.
    """
    best: tuple[str, str, float] | None = None
    for (old, new), support in rules.items():
        if at_end:
            if not text.endswith(old):
                continue
        elif not text.startswith(old):
            continue
        if best is None:
            best = (old, new, support)
            continue
        b_old, b_new, b_support = best
        if len(old) > len(b_old):
            best = (old, new, support)
        elif len(old) == len(b_old):
            if support > b_support or (support == b_support and new < b_new):
                best = (old, new, support)
    if best is None:
        return None
    return best[0], best[1]


def inflect(table: RuleTable, slot: Hashable, lemma: str) -> str:
    """Rewrite ``lemma`` into its form for ``slot``.

    Total: when no rule matches, the lemma is returned unchanged.
    An unknown slot is an error.
    """
    if slot not in table.slots:
        raise ValueError(f"unknown slot {slot!r}")
    rules = table.slots[slot]
    result = lemma
    picked = _pick(rules.suffix, result, at_end=True)
    if picked is not None:
        old, new = picked
        result = result[:len(result) - len(old)] + new
    picked = _pick(rules.prefix, result, at_end=False)
    if picked is not None:
        old, new = picked
        result = new + result[len(old):]
    return result


def dump_rules(table: RuleTable, path: str) -> None:
    """Write slot<TAB>kind<TAB>old<TAB>new<TAB>support rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for slot in sorted(table.slots, key=str):
            rules = table.slots[slot]
            for kind, bucket in (("prefix", rules.prefix),
                                 ("suffix", rules.suffix)):
                for old, new in sorted(bucket):
                    support = bucket[(old, new)]
                    handle.write(
                        f"{slot}\t{kind}\t{old}\t{new}\t{support:g}\n"
                    )
