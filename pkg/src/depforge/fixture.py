"""Deterministic synthetic treebank for tests and demos.

Sentences follow a small determiner-adjective-noun / verb-object grammar
with a closed vocabulary and unambiguous attachment rules (prepositional
phrases and adverbs always modify the verb), so every tree is projective
by construction and the same surface pattern always parses the same way.
"""

from __future__ import annotations

import random

from .conllx import Sentence, Token

__all__ = ["generate_corpus"]

DETERMINERS = ("the", "a", "every", "some")
ADJECTIVES = ("big", "small", "old", "quick", "furry", "gentle")
NOUNS = ("dog", "cat", "bird", "fish", "horse", "mouse", "cow", "fox", "owl", "pig")
VERBS = ("sees", "likes", "chases", "finds", "wants", "follows", "watches", "hears")
ADVERBS = ("quickly", "quietly", "eagerly", "slowly")
PREPOSITIONS = ("near", "behind", "under", "beside")

MIN_LENGTH = 3
MAX_LENGTH = 12


def _noun_phrase(rng: random.Random) -> list[tuple[str, str, str]]:
    """(form, cpostag, postag) rows; the noun is always last."""
    words = []
    if rng.random() < 0.8:
        words.append((rng.choice(DETERMINERS), "D", "DT"))
    for _ in range(rng.choice((0, 0, 0, 1, 1, 2))):
        words.append((rng.choice(ADJECTIVES), "J", "JJ"))
    words.append((rng.choice(NOUNS), "N", "NN"))
    return words


def _generate_sentence(rng: random.Random) -> Sentence:
    while True:
        rows: list[tuple[str, str, str, int, str]] = []  # form, cpos, pos, head, deprel

        def add_noun_phrase(attach_to: str) -> int:
            """Append an NP; heads inside point at the noun.  Returns noun index."""
            words = _noun_phrase(rng)
            first = len(rows) + 1
            noun = first + len(words) - 1
            for offset, (form, cpos, pos) in enumerate(words):
                if offset == len(words) - 1:
                    rows.append((form, cpos, pos, 0, attach_to))  # head patched below
                else:
                    rel = "det" if pos == "DT" else "amod"
                    rows.append((form, cpos, pos, noun, rel))
            return noun

        subject = add_noun_phrase("subj")
        verb = len(rows) + 1
        rows.append((rng.choice(VERBS), "V", "VB", 0, "root"))
        rows[subject - 1] = rows[subject - 1][:3] + (verb, "subj")
        if rng.random() < 0.75:
            obj = add_noun_phrase("obj")
            rows[obj - 1] = rows[obj - 1][:3] + (verb, "obj")
        if rng.random() < 0.35:
            rows.append((rng.choice(ADVERBS), "R", "RB", verb, "advmod"))
        if rng.random() < 0.45:
            prep = len(rows) + 1
            rows.append((rng.choice(PREPOSITIONS), "I", "IN", verb, "prep"))
            pobj = add_noun_phrase("pobj")
            rows[pobj - 1] = rows[pobj - 1][:3] + (prep, "pobj")
        if rng.random() < 0.7:
            rows.append((".", "P", "PU", verb, "punct"))
        if MIN_LENGTH <= len(rows) <= MAX_LENGTH:
            break
    tokens = tuple(
        Token(
            id=i,
            form=form,
            lemma=form,
            cpostag=cpos,
            postag=pos,
            head=head,
            deprel=deprel,
        )
        for i, (form, cpos, pos, head, deprel) in enumerate(rows, start=1)
    )
    return Sentence(tokens)


def generate_corpus(sentences: int = 300, seed: int = 42) -> list[Sentence]:
    """Generate a reproducible projective treebank."""
    rng = random.Random(seed)
    return [_generate_sentence(rng) for _ in range(sentences)]
