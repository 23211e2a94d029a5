"""Entropy-based split quality, shared by the decision tree and k-NN weights."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

__all__ = ["entropy", "gain_ratio", "split_scores"]


def entropy(counts: Sequence[int]) -> float:
    """Shannon entropy (bits) of a count distribution."""
    total = sum(counts)
    if total == 0:
        return 0.0
    h = 0.0
    for count in counts:
        if count:
            p = count / total
            h -= p * math.log2(p)
    return h


def split_scores(values: Sequence[int], labels: Sequence[int]) -> tuple[float, float]:
    """(information gain, gain ratio) of partitioning ``labels`` by ``values``.

    Gain ratio is information gain over split information, and 0 when the
    split is degenerate (single value) or gains nothing.
    """
    if len(values) != len(labels):
        raise ValueError("values and labels must be parallel")
    base = entropy(list(Counter(labels).values()))
    groups: dict[int, Counter] = {}
    for value, label in zip(values, labels):
        groups.setdefault(value, Counter())[label] += 1
    total = len(values)
    remainder = 0.0
    split_info = 0.0
    for group in groups.values():
        weight = sum(group.values()) / total
        remainder += weight * entropy(list(group.values()))
        split_info -= weight * math.log2(weight)
    gain = base - remainder
    if gain <= 0.0 or split_info <= 0.0:
        return max(gain, 0.0), 0.0
    return gain, gain / split_info


def gain_ratio(values: Sequence[int], labels: Sequence[int]) -> float:
    return split_scores(values, labels)[1]
