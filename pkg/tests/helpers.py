"""Independent reference implementations and tree generators for the tests.

Everything here is deliberately separate from the package code paths it
checks: crossing-arc projectivity, per-token score recounts, entropy math,
and exhaustive/random tree enumeration.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter

from depforge.conllx import Sentence, Token


def make_sentence(heads, deprels=None, forms=None, postags=None) -> Sentence:
    n = len(heads)
    deprels = deprels if deprels is not None else ["dep"] * n
    forms = forms if forms is not None else [f"w{i}" for i in range(1, n + 1)]
    postags = postags if postags is not None else ["X"] * n
    tokens = tuple(
        Token(
            id=i,
            form=forms[i - 1],
            lemma=forms[i - 1],
            cpostag=postags[i - 1],
            postag=postags[i - 1],
            head=heads[i - 1],
            deprel=deprels[i - 1],
        )
        for i in range(1, n + 1)
    )
    return Sentence(tokens)


def crossing_arcs_projective(sentence: Sentence) -> bool:
    """Brute-force reference: projective iff no two arcs (root arcs
    included) strictly interleave."""
    spans = []
    for tok in sentence:
        assert tok.head is not None
        spans.append((min(tok.head, tok.id), max(tok.head, tok.id)))
    for (a, b), (c, d) in itertools.combinations(spans, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def heads_acyclic(heads: tuple[int, ...]) -> bool:
    """Every token reaches root 0 by following heads."""
    n = len(heads)
    for start in range(1, n + 1):
        current = start
        for _ in range(n + 1):
            current = heads[current - 1]
            if current == 0:
                break
        else:
            return False
    return True


def all_head_functions(n: int):
    """Every single-headed assignment head: [1..n] -> [0..n], head != self."""
    choices = [[h for h in range(n + 1) if h != i] for i in range(1, n + 1)]
    yield from itertools.product(*choices)


def all_trees(n: int):
    """All acyclic head functions over n tokens."""
    for heads in all_head_functions(n):
        if heads_acyclic(heads):
            yield heads


def random_single_root_tree(rng: random.Random, n: int) -> tuple[int, ...]:
    """Random acyclic head assignment with exactly one root attachment."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * n
    for position, token in enumerate(order):
        if position == 0:
            heads[token - 1] = 0
        else:
            heads[token - 1] = order[rng.randrange(position)]
    return tuple(heads)


def recount_scores(gold, predicted, exclude_punct: bool):
    """Independent LAS/UAS recount used to cross-check evaluate.score."""
    import unicodedata

    counted = head_hits = label_hits = 0
    for g, p in zip(gold, predicted):
        for gt, pt in zip(g, p):
            if exclude_punct and gt.form and all(
                unicodedata.category(ch).startswith("P") for ch in gt.form
            ):
                continue
            counted += 1
            if gt.head == pt.head:
                head_hits += 1
                if gt.deprel == pt.deprel:
                    label_hits += 1
    if counted == 0:
        return 1.0, 1.0, 0
    return label_hits / counted, head_hits / counted, counted


def reference_gain_ratio(values, labels) -> float:
    """Textbook gain ratio, written independently of the package version."""

    def h(items) -> float:
        total = len(items)
        result = 0.0
        for count in Counter(items).values():
            p = count / total
            result -= p * math.log2(p)
        return result

    base = h(labels)
    groups: dict[int, list] = {}
    for v, y in zip(values, labels):
        groups.setdefault(v, []).append(y)
    remainder = sum(len(g) / len(labels) * h(g) for g in groups.values())
    split_info = h(values)
    gain = base - remainder
    if gain <= 0 or split_info == 0:
        return 0.0
    return gain / split_info
