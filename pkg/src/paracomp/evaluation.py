"""Best-match scoring of predicted inflection tables against gold tables.

Predicted slots carry arbitrary ids, so scoring first finds the
max-weight one-to-one matching between gold and predicted slots, then
reads accuracy off the matched pairs.  Slots that are identical across
every lemma (syncretic columns) are collapsed on each side
independently before any matching, so neither side is rewarded or
punished for how it counts indistinguishable columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable

import numpy as np
from scipy.optimize import linear_sum_assignment

#: Column count of the fixed-size lemma baseline.
DEFAULT_BASELINE_SLOTS = 48


def merge_syncretic_slots(table: dict) -> dict:
    """Collapse slots whose whole column of forms is identical.

    Column identity is transitive, so all mutually identical slots
    collapse into the first one in sorted order.  Works on gold tables
    (str slot labels) and predictions (int slot ids) alike.
    """
    lemmas = sorted(table)
    slots = sorted({slot for row in table.values() for slot in row})
    first_with_column: dict[tuple, Hashable] = {}
    keep: list = []
    for slot in slots:
        column = tuple(table[lemma].get(slot) for lemma in lemmas)
        if column not in first_with_column:
            first_with_column[column] = slot
            keep.append(slot)
    keep_set = set(keep)
    return {
        lemma: {slot: form for slot, form in row.items() if slot in keep_set}
        for lemma, row in table.items()
    }


def _assignment_value(weights: np.ndarray) -> float:
    if weights.shape[0] == 0 or weights.shape[1] == 0:
        return 0.0
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return float(weights[rows, cols].sum())


def best_match(weights) -> list[tuple[int, int]]:
    """Max-weight full matching between rows and columns.

    Returns min(N, M) (row, column) pairs sorted by row.  Among
    matchings of maximal total weight the lexicographically smallest
    pair list is chosen: each row in turn takes the smallest column
    that still allows an optimal completion, and with more rows than
    columns a row is left out only when skipping it costs nothing.

    Cost is one assignment solve per (row, candidate column); fine for
    slot counts into the low hundreds.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2:
        raise ValueError(f"weight matrix must be 2-D, got shape {w.shape}")
    n_rows, n_cols = w.shape
    if n_rows == 0 or n_cols == 0:
        return []
    if not np.isfinite(w).all():
        raise ValueError("weight matrix contains non-finite values")
    if (w < 0).any():
        raise ValueError("weight matrix contains negative values")

    size = min(n_rows, n_cols)
    pairs: list[tuple[int, int]] = []
    free_cols = list(range(n_cols))
    for row in range(n_rows):
        remaining = size - len(pairs)
        if remaining == 0:
            break
        rows_after = list(range(row + 1, n_rows))
        # Candidate options in preference order: columns ascending,
        # skipping the row last.  Strict > keeps the preferred option
        # among equals.
        best_value = None
        best_col = None
        for col in free_cols:
            rest = [c for c in free_cols if c != col]
            value = w[row, col] + _assignment_value(w[np.ix_(rows_after, rest)])
            if best_value is None or value > best_value:
                best_value = value
                best_col = col
        if len(rows_after) >= remaining:
            skip_value = _assignment_value(w[np.ix_(rows_after, free_cols)])
            if skip_value > best_value:
                best_value = skip_value
                best_col = None
        if best_col is not None:
            pairs.append((row, best_col))
            free_cols.remove(best_col)
    return pairs


@dataclass
class BmaccResult:
    macro: float
    micro: float
    gold_slots: int
    predicted_slots: int
    #: (gold label, predicted id, per-slot accuracy) from the macro matching.
    pairs: list[tuple[Hashable, Hashable, float]]


def best_match_accuracy(
    gold: dict[str, dict], predictions: dict[str, dict]
) -> BmaccResult:
    """Macro and micro best-match accuracy of predictions against gold.

    Both tables are syncretism-collapsed first.  Macro averages
    per-gold-slot accuracies under an accuracy-optimal matching and
    divides by max(N, M); micro pools correct cells over attested cells
    under a separately optimized count matching, scaled by N/max(N, M).
    An empty prediction table scores 0 on both.
    """
    if not gold:
        raise ValueError("gold table is empty")
    g = merge_syncretic_slots(gold)
    p = merge_syncretic_slots(predictions) if predictions else {}
    gold_slots = sorted({slot for row in g.values() for slot in row})
    pred_slots = sorted({slot for row in p.values() for slot in row})
    n_gold = len(gold_slots)
    n_pred = len(pred_slots)
    if n_gold == 0:
        raise ValueError("gold table has no slots")
    if n_pred == 0:
        return BmaccResult(0.0, 0.0, n_gold, 0, [])

    pred_index = {slot: j for j, slot in enumerate(pred_slots)}
    attested = np.zeros(n_gold)
    correct = np.zeros((n_gold, n_pred))
    for lemma in sorted(g):
        row = g[lemma]
        pred_row = p.get(lemma, {})
        by_form: dict[str, list[int]] = {}
        for slot, form in pred_row.items():
            by_form.setdefault(form, []).append(pred_index[slot])
        for i, slot in enumerate(gold_slots):
            form = row.get(slot)
            if form is None:
                continue
            attested[i] += 1
            for j in by_form.get(form, ()):
                correct[i, j] += 1

    denominator = max(n_gold, n_pred)
    accuracy = correct / attested[:, None]
    macro_pairs = best_match(accuracy)
    macro = math.fsum(accuracy[i, j] for i, j in macro_pairs) / denominator
    micro_pairs = best_match(correct)
    micro = (
        n_gold / denominator
        * math.fsum(correct[i, j] for i, j in micro_pairs)
        / math.fsum(attested)
    )
    pairs = [
        (gold_slots[i], pred_slots[j], float(accuracy[i, j]))
        for i, j in macro_pairs
    ]
    return BmaccResult(macro, micro, n_gold, n_pred, pairs)


def lemma_baseline(
    lemmas, slot_count: int = DEFAULT_BASELINE_SLOTS
) -> dict[str, dict[int, str]]:
    """Predict the lemma itself in every one of ``slot_count`` slots."""
    if slot_count < 1:
        raise ValueError(f"slot count must be >= 1, got {slot_count}")
    return {
        lemma: {slot: lemma for slot in range(1, slot_count + 1)}
        for lemma in lemmas
    }
