"""Symbol interning, feature templates, instance extraction, binarization.

Feature values are nominal: a symbol table maps each string to a dense
integer id, and classifiers may only compare ids for equality.  Id 0 is
NULL (address off the end of the stack/buffer, or a missing attribute) and
id 1 is UNKNOWN (a symbol never seen during training).  Real symbols start
at id 2.

Templates address a token through the stack or buffer, optionally follow
head/leftmost-dependent/rightmost-dependent links over the arcs built so
far, and read one attribute.  The textual form, one template per line, is
``attr(source[index])`` with optional wrapping functions, e.g.::

    postag(buffer[0])
    deprel(ldep(stack[0]))
    form(head(stack[0]))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .conllx import Sentence
from .transition import Configuration

NULL_ID = 0
UNKNOWN_ID = 1
RESERVED_IDS = 2

ROOT_SYMBOL = "ROOT"

ATTRIBUTES = ("form", "lemma", "cpostag", "postag", "deprel")
CHAIN_FUNCTIONS = ("head", "ldep", "rdep")
SOURCES = ("stack", "buffer")

__all__ = [
    "ATTRIBUTES",
    "DEFAULT_TEMPLATES_TEXT",
    "FeatureModel",
    "FeatureModelSyntaxError",
    "FeatureTemplate",
    "FrozenTableError",
    "Instance",
    "NULL_ID",
    "SymbolTable",
    "UNKNOWN_ID",
    "VocabularyMismatch",
    "binarize",
    "default_feature_model",
    "extract",
    "extract_symbols",
    "parse_feature_templates",
    "resolve",
]


class FrozenTableError(RuntimeError):
    pass


class FeatureModelSyntaxError(ValueError):
    pass


class VocabularyMismatch(ValueError):
    pass


class SymbolTable:
    """Stable, dense bidirectional string/id mapping with reserved ids 0 and 1."""

    __slots__ = ("_ids", "_symbols", "_frozen")

    def __init__(self, symbols: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._symbols: list[str] = []
        self._frozen = False
        for symbol in symbols:
            self.intern(symbol)

    @property
    def size(self) -> int:
        """Total id count, reserved ids included."""
        return len(self._symbols) + RESERVED_IDS

    def intern(self, symbol: str) -> int:
        existing = self._ids.get(symbol)
        if existing is not None:
            return existing
        if self._frozen:
            raise FrozenTableError(f"cannot intern {symbol!r} into a frozen table")
        new_id = len(self._symbols) + RESERVED_IDS
        self._ids[symbol] = new_id
        self._symbols.append(symbol)
        return new_id

    def id_of(self, symbol: str) -> int:
        """Id for a symbol, UNKNOWN when unseen; never grows the table."""
        return self._ids.get(symbol, UNKNOWN_ID)

    def symbol_of(self, symbol_id: int) -> str:
        if symbol_id < RESERVED_IDS:
            raise KeyError(f"id {symbol_id} is reserved")
        return self._symbols[symbol_id - RESERVED_IDS]

    def freeze(self) -> None:
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    def symbols(self) -> list[str]:
        """All non-reserved symbols in id order (id = position + 2)."""
        return list(self._symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._ids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._symbols == other._symbols


@dataclass(frozen=True, slots=True)
class FeatureTemplate:
    """Address (source, depth, chain of link functions) plus an attribute."""

    attribute: str
    source: str
    depth: int
    chain: tuple[str, ...] = ()

    def __post_init__(self):
        if self.attribute not in ATTRIBUTES:
            raise FeatureModelSyntaxError(f"unknown attribute {self.attribute!r}")
        if self.source not in SOURCES:
            raise FeatureModelSyntaxError(f"unknown source {self.source!r}")
        if self.depth < 0:
            raise FeatureModelSyntaxError("negative address index")
        if len(self.chain) > 2:
            raise FeatureModelSyntaxError("at most two chained functions are allowed")
        for fn in self.chain:
            if fn not in CHAIN_FUNCTIONS:
                raise FeatureModelSyntaxError(f"unknown function {fn!r}")

    def text(self) -> str:
        inner = f"{self.source}[{self.depth}]"
        for fn in reversed(self.chain):
            inner = f"{fn}({inner})"
        return f"{self.attribute}({inner})"


_ADDRESS_RE = re.compile(r"^(stack|buffer)\[(\d+)\]$")


def _parse_template(line: str) -> FeatureTemplate:
    text = line.strip()
    match = re.match(r"^(\w+)\((.*)\)$", text)
    if not match:
        raise FeatureModelSyntaxError(f"cannot parse template {line!r}")
    attribute, inner = match.group(1), match.group(2)
    chain: list[str] = []
    while True:
        addr = _ADDRESS_RE.match(inner)
        if addr:
            # chain was collected outermost-first; resolution applies it
            # innermost-first
            return FeatureTemplate(
                attribute=attribute,
                source=addr.group(1),
                depth=int(addr.group(2)),
                chain=tuple(reversed(chain)),
            )
        nested = re.match(r"^(\w+)\((.*)\)$", inner)
        if not nested:
            raise FeatureModelSyntaxError(f"cannot parse address in {line!r}")
        chain.append(nested.group(1))
        inner = nested.group(2)


def parse_feature_templates(text: str) -> tuple[FeatureTemplate, ...]:
    """Parse a feature-model file; ``#`` lines are comments."""
    templates = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        templates.append(_parse_template(stripped))
    if not templates:
        raise FeatureModelSyntaxError("feature model defines no templates")
    return tuple(templates)


DEFAULT_TEMPLATES_TEXT = """\
postag(stack[0])
postag(stack[1])
postag(buffer[0])
postag(buffer[1])
postag(buffer[2])
postag(buffer[3])
deprel(stack[0])
deprel(ldep(stack[0]))
deprel(rdep(stack[0]))
deprel(ldep(buffer[0]))
form(stack[0])
form(buffer[0])
form(buffer[1])
form(head(stack[0]))
"""


@dataclass
class FeatureModel:
    """Ordered templates plus one symbol table per attribute kind."""

    templates: tuple[FeatureTemplate, ...]
    tables: dict[str, SymbolTable] = field(
        default_factory=lambda: {attr: SymbolTable() for attr in ATTRIBUTES}
    )

    def table_for(self, template: FeatureTemplate) -> SymbolTable:
        return self.tables[template.attribute]

    def freeze(self) -> None:
        for table in self.tables.values():
            table.freeze()

    def vocabulary_sizes(self) -> list[int]:
        """Per-template binarization sizes: one slot for NULL plus real symbols."""
        return [self.table_for(t).size - 1 for t in self.templates]

    def templates_text(self) -> str:
        return "".join(t.text() + "\n" for t in self.templates)


def default_feature_model() -> FeatureModel:
    return FeatureModel(templates=parse_feature_templates(DEFAULT_TEMPLATES_TEXT))


@dataclass(frozen=True, slots=True)
class Instance:
    """Fixed-length nominal value vector plus its class label id."""

    values: tuple[int, ...]
    label: int


def _attribute_of(index: int, attribute: str, config: Configuration, sentence: Sentence) -> str | None:
    if attribute == "deprel":
        return config.arcs.relation_of(index)
    if index == 0:
        return ROOT_SYMBOL
    token = sentence.token(index)
    if attribute == "form":
        return token.form
    if attribute == "lemma":
        return token.lemma
    if attribute == "cpostag":
        return token.cpostag
    return token.postag


def resolve(config: Configuration, sentence: Sentence, template: FeatureTemplate) -> str | None:
    """Symbol string for one template, or None when the address runs off."""
    if template.source == "stack":
        if template.depth >= len(config.stack):
            return None
        index: int | None = config.stack[-1 - template.depth]
    else:
        if template.depth >= len(config.buffer):
            return None
        index = config.buffer[template.depth]
    for fn in template.chain:
        assert index is not None
        if fn == "head":
            index = config.arcs.head_of(index)
        else:
            dependents = config.arcs.dependents_of(index)
            if not dependents:
                index = None
            else:
                index = dependents[0] if fn == "ldep" else dependents[-1]
        if index is None:
            return None
    return _attribute_of(index, template.attribute, config, sentence)


def extract_symbols(
    config: Configuration, sentence: Sentence, model: FeatureModel
) -> list[str | None]:
    return [resolve(config, sentence, t) for t in model.templates]


def extract(
    config: Configuration,
    sentence: Sentence,
    model: FeatureModel,
    train: bool,
) -> tuple[int, ...]:
    """One id per template; training mode interns new symbols, predict mode
    maps unseen symbols to UNKNOWN."""
    values = []
    for template, symbol in zip(model.templates, extract_symbols(config, sentence, model)):
        if symbol is None:
            values.append(NULL_ID)
        elif train:
            values.append(model.table_for(template).intern(symbol))
        else:
            values.append(model.table_for(template).id_of(symbol))
    return tuple(values)


def binarize(values: Sequence[int], vocabulary_sizes: Sequence[int]) -> list[int]:
    """Active coordinates of the one-hot encoding of a nominal value vector.

    Each template owns a block of coordinates: index 0 for NULL, then one
    per real symbol (table id k maps to block index k - 1).  UNKNOWN
    activates nothing.  Ids beyond the frozen vocabulary are an error.
    """
    if len(values) != len(vocabulary_sizes):
        raise VocabularyMismatch(
            f"{len(values)} values against {len(vocabulary_sizes)} vocabulary sizes"
        )
    active = []
    offset = 0
    for value, size in zip(values, vocabulary_sizes):
        if value != UNKNOWN_ID:
            index = 0 if value == NULL_ID else value - 1
            if index >= size:
                raise VocabularyMismatch(f"value id {value} outside frozen vocabulary of {size}")
            active.append(offset + index)
        offset += size
    return active
