"""CoNLL-X treebank reading, writing, validation, and projectivity testing.

A file is a sequence of sentences separated by blank lines; every token is
one line of 10 tab-separated columns::

    ID FORM LEMMA CPOSTAG POSTAG FEATS HEAD DEPREL PHEAD PDEPREL

``_`` marks an absent value.  LEMMA, FEATS, HEAD and DEPREL map to ``None``
in memory; PHEAD/PDEPREL are opaque and kept verbatim (``_`` included).
Input may use CRLF or LF line endings; output is always LF.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, replace
from typing import BinaryIO, Iterable, Iterator

ABSENT = "_"

__all__ = [
    "ABSENT",
    "ArcSet",
    "ConllError",
    "CycleDetected",
    "EmptyFile",
    "HeadOutOfRange",
    "InvariantViolation",
    "MissingHead",
    "NonNumericId",
    "Sentence",
    "Token",
    "WrongColumnCount",
    "is_projective",
    "is_punctuation",
    "read_conllx",
    "read_conllx_path",
    "write_conllx",
    "write_conllx_path",
]


class ConllError(Exception):
    """Base class for treebank format and invariant errors."""


class WrongColumnCount(ConllError):
    def __init__(self, line_no: int, count: int):
        super().__init__(f"line {line_no}: expected 10 columns, got {count}")
        self.line_no = line_no


class NonNumericId(ConllError):
    def __init__(self, line_no: int, text: str):
        super().__init__(f"line {line_no}: non-numeric token id {text!r}")
        self.line_no = line_no


class HeadOutOfRange(ConllError):
    def __init__(self, sentence_no: int, detail: str):
        super().__init__(f"sentence {sentence_no}: {detail}")
        self.sentence_no = sentence_no
        self.detail = detail


class EmptyFile(ConllError):
    pass


class InvariantViolation(ConllError):
    pass


class CycleDetected(InvariantViolation):
    pass


class MissingHead(ConllError):
    pass


@dataclass(frozen=True, slots=True)
class Token:
    """One treebank token; ``head`` 0 denotes the artificial root."""

    id: int
    form: str
    lemma: str | None = None
    cpostag: str = ABSENT
    postag: str = ABSENT
    feats: str | None = None
    head: int | None = None
    deprel: str | None = None
    phead: str = ABSENT
    pdeprel: str = ABSENT


@dataclass(frozen=True, slots=True)
class Sentence:
    """An ordered, 1-indexed token sequence."""

    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def token(self, index: int) -> Token:
        """Return the token with 1-based id ``index``."""
        return self.tokens[index - 1]

    def has_all_heads(self) -> bool:
        return all(t.head is not None for t in self.tokens)

    def validate(self) -> None:
        """Raise InvariantViolation/HeadOutOfRange/CycleDetected on bad structure."""
        if not self.tokens:
            raise InvariantViolation("sentence has no tokens")
        n = len(self.tokens)
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.id != pos:
                raise InvariantViolation(
                    f"token ids must be consecutive from 1, found {tok.id} at position {pos}"
                )
            if tok.head is not None:
                if not 0 <= tok.head <= n:
                    raise HeadOutOfRange(0, f"head {tok.head} of token {tok.id} not in [0, {n}]")
                if tok.head == tok.id:
                    raise HeadOutOfRange(0, f"token {tok.id} is its own head")
        if self.has_all_heads():
            self._check_acyclic()

    def _check_acyclic(self) -> None:
        # Every token must reach root 0 by following heads; a walk longer
        # than the sentence means a cycle.
        n = len(self.tokens)
        for tok in self.tokens:
            current = tok.id
            for _ in range(n + 1):
                head = self.tokens[current - 1].head
                assert head is not None
                if head == 0:
                    break
                current = head
            else:
                raise CycleDetected(f"head cycle through token {tok.id}")

    def with_arcs(self, arcs: "ArcSet", default_relation: str = "ROOT") -> "Sentence":
        """Return a copy whose HEAD/DEPREL columns are taken from ``arcs``."""
        new_tokens = []
        for tok in self.tokens:
            head = arcs.head_of(tok.id)
            rel = arcs.relation_of(tok.id)
            if head is None:
                head, rel = 0, default_relation
            new_tokens.append(replace(tok, head=head, deprel=rel, phead=ABSENT, pdeprel=ABSENT))
        return Sentence(tuple(new_tokens))


class ArcSet:
    """Immutable set of (head, relation, dependent) arcs, one head per dependent."""

    __slots__ = ("_by_dependent",)

    def __init__(self, arcs: Iterable[tuple[int, str, int]] = ()):
        by_dep: dict[int, tuple[int, str]] = {}
        for head, rel, dep in arcs:
            if dep in by_dep:
                raise InvariantViolation(f"dependent {dep} already has a head")
            by_dep[dep] = (head, rel)
        self._by_dependent = by_dep

    @classmethod
    def from_sentence(cls, sentence: Sentence) -> "ArcSet":
        """Gold arcs of a fully annotated sentence."""
        arcs = []
        for tok in sentence:
            if tok.head is None:
                raise MissingHead(f"token {tok.id} has no head")
            arcs.append((tok.head, tok.deprel if tok.deprel is not None else ABSENT, tok.id))
        return cls(arcs)

    def add(self, head: int, relation: str, dependent: int) -> "ArcSet":
        if dependent in self._by_dependent:
            raise InvariantViolation(f"dependent {dependent} already has a head")
        new = ArcSet.__new__(ArcSet)
        by_dep = dict(self._by_dependent)
        by_dep[dependent] = (head, relation)
        new._by_dependent = by_dep
        return new

    def head_of(self, dependent: int) -> int | None:
        entry = self._by_dependent.get(dependent)
        return entry[0] if entry else None

    def relation_of(self, dependent: int) -> str | None:
        entry = self._by_dependent.get(dependent)
        return entry[1] if entry else None

    def has_head(self, dependent: int) -> bool:
        return dependent in self._by_dependent

    def dependents_of(self, head: int) -> list[int]:
        """Dependents of ``head`` in ascending position order."""
        return sorted(d for d, (h, _) in self._by_dependent.items() if h == head)

    def __contains__(self, arc: tuple[int, str, int]) -> bool:
        head, rel, dep = arc
        return self._by_dependent.get(dep) == (head, rel)

    def __len__(self) -> int:
        return len(self._by_dependent)

    def __iter__(self) -> Iterator[tuple[int, str, int]]:
        for dep in sorted(self._by_dependent):
            head, rel = self._by_dependent[dep]
            yield head, rel, dep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArcSet):
            return NotImplemented
        return self._by_dependent == other._by_dependent

    def __repr__(self) -> str:
        return f"ArcSet({list(self)!r})"


def _parse_field(text: str) -> str | None:
    return None if text == ABSENT else text


def _parse_row(line: str, line_no: int) -> Token:
    columns = line.split("\t")
    if len(columns) != 10:
        raise WrongColumnCount(line_no, len(columns))
    id_text, form, lemma, cpostag, postag, feats, head_text, deprel, phead, pdeprel = columns
    if not id_text.isdigit():
        raise NonNumericId(line_no, id_text)
    if head_text == ABSENT:
        head = None
    elif head_text.isdigit():
        head = int(head_text)
    else:
        raise NonNumericId(line_no, head_text)
    return Token(
        id=int(id_text),
        form=form,
        lemma=_parse_field(lemma),
        cpostag=cpostag,
        postag=postag,
        feats=_parse_field(feats),
        head=head,
        deprel=_parse_field(deprel),
        phead=phead,
        pdeprel=pdeprel,
    )


def read_conllx(stream: BinaryIO | bytes) -> list[Sentence]:
    """Read a CoNLL-X byte stream into sentences, validating as it goes."""
    data = stream if isinstance(stream, bytes) else stream.read()
    text = data.decode("utf-8")
    sentences: list[Sentence] = []
    rows: list[Token] = []

    def flush() -> None:
        if not rows:
            return
        sentence = Sentence(tuple(rows))
        try:
            sentence.validate()
        except HeadOutOfRange as exc:
            raise HeadOutOfRange(len(sentences) + 1, exc.detail) from None
        sentences.append(sentence)
        rows.clear()

    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line:
            flush()
        else:
            rows.append(_parse_row(line, line_no))
    flush()
    if not sentences:
        raise EmptyFile("no sentences in input")
    return sentences


def read_conllx_path(path) -> list[Sentence]:
    with open(path, "rb") as handle:
        return read_conllx(handle)


def _format_token(tok: Token) -> str:
    head = ABSENT if tok.head is None else str(tok.head)
    return "\t".join(
        (
            str(tok.id),
            tok.form,
            tok.lemma if tok.lemma is not None else ABSENT,
            tok.cpostag,
            tok.postag,
            tok.feats if tok.feats is not None else ABSENT,
            head,
            tok.deprel if tok.deprel is not None else ABSENT,
            tok.phead,
            tok.pdeprel,
        )
    )


def write_conllx(sentences: Iterable[Sentence]) -> bytes:
    """Serialize sentences to CoNLL-X bytes (LF endings, trailing newline)."""
    blocks = []
    for sentence in sentences:
        sentence.validate()
        blocks.append("\n".join(_format_token(tok) for tok in sentence))
    return ("\n\n".join(blocks) + "\n").encode("utf-8")


def write_conllx_path(path, sentences: Iterable[Sentence]) -> None:
    with open(path, "wb") as handle:
        handle.write(write_conllx(sentences))


def is_punctuation(form: str) -> bool:
    """True when the form consists entirely of Unicode punctuation."""
    return bool(form) and all(unicodedata.category(ch).startswith("P") for ch in form)


def is_projective(sentence: Sentence) -> bool:
    """Test whether every arc spans only transitive dependents of its head.

    Requires a fully annotated, acyclic sentence (raises MissingHead
    otherwise).  Agrees with the pairwise crossing-arc criterion.
    """
    n = len(sentence)
    heads: list[int] = []
    for tok in sentence:
        if tok.head is None:
            raise MissingHead(f"token {tok.id} has no head")
        heads.append(tok.head)

    def is_ancestor(head: int, node: int) -> bool:
        current = node
        for _ in range(n + 1):
            if current == head:
                return True
            if current == 0:
                return False
            current = heads[current - 1]
        raise CycleDetected(f"head cycle through token {node}")

    for dep in range(1, n + 1):
        head = heads[dep - 1]
        low, high = min(head, dep), max(head, dep)
        for between in range(low + 1, high):
            if not is_ancestor(head, between):
                return False
    return True
