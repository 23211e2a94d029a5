"""Parser configurations and transition systems.

Two systems are provided: arc-eager (shift, left-arc, right-arc, reduce) and
a three-operation baseline (shift, left-arc, right-arc).  Configurations are
immutable; ``apply`` returns a fresh configuration, which keeps oracle
testing and concurrent parsing simple.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .conllx import ArcSet, Sentence

__all__ = [
    "ARC_EAGER",
    "BASELINE",
    "ArcEagerSystem",
    "BaselineSystem",
    "Configuration",
    "EmptySentence",
    "IllegalTransition",
    "Kind",
    "NotTerminal",
    "Transition",
    "TransitionSystem",
    "finalize",
    "system_by_name",
]

DEFAULT_ROOT_RELATION = "ROOT"


class EmptySentence(ValueError):
    pass


class IllegalTransition(ValueError):
    pass


class NotTerminal(ValueError):
    pass


class Kind(enum.Enum):
    SHIFT = "SHIFT"
    REDUCE = "REDUCE"
    LEFT_ARC = "LEFT-ARC"
    RIGHT_ARC = "RIGHT-ARC"

    @property
    def creates_arc(self) -> bool:
        return self in (Kind.LEFT_ARC, Kind.RIGHT_ARC)


@dataclass(frozen=True, slots=True)
class Transition:
    kind: Kind
    relation: str | None = None

    def __post_init__(self):
        if self.kind.creates_arc and self.relation is None:
            raise ValueError(f"{self.kind.value} requires a relation")
        if not self.kind.creates_arc and self.relation is not None:
            raise ValueError(f"{self.kind.value} takes no relation")

    def label(self) -> str:
        """Class-label form, e.g. ``LEFT-ARC:det`` or ``SHIFT``."""
        if self.relation is None:
            return self.kind.value
        return f"{self.kind.value}:{self.relation}"

    @classmethod
    def from_label(cls, label: str) -> "Transition":
        kind_text, sep, relation = label.partition(":")
        kind = Kind(kind_text)
        return cls(kind, relation if sep else None)


SHIFT = Transition(Kind.SHIFT)
REDUCE = Transition(Kind.REDUCE)


@dataclass(frozen=True, slots=True)
class Configuration:
    """Parser state: stack (top last), buffer (front first), arcs built so far."""

    stack: tuple[int, ...]
    buffer: tuple[int, ...]
    arcs: ArcSet
    sentence_len: int

    @property
    def stack_top(self) -> int | None:
        return self.stack[-1] if self.stack else None

    @property
    def buffer_front(self) -> int | None:
        return self.buffer[0] if self.buffer else None


class TransitionSystem:
    """Interface shared by the arc-eager and baseline systems."""

    name: str = ""

    def initial(self, sentence: Sentence) -> Configuration:
        """Root on the stack, all tokens in the buffer, no arcs."""
        n = len(sentence)
        if n == 0:
            raise EmptySentence("cannot initialize a configuration for an empty sentence")
        return Configuration(
            stack=(0,),
            buffer=tuple(range(1, n + 1)),
            arcs=ArcSet(),
            sentence_len=n,
        )

    def is_terminal(self, config: Configuration) -> bool:
        return not config.buffer

    def legal(self, config: Configuration, transition: Transition) -> bool:
        raise NotImplementedError

    def apply(self, config: Configuration, transition: Transition) -> Configuration:
        raise NotImplementedError

    def legal_transitions(self, config: Configuration, relations: list[str]) -> list[Transition]:
        return [t for t in self.all_transitions(relations) if self.legal(config, t)]

    def all_transitions(self, relations: list[str]) -> list[Transition]:
        raise NotImplementedError


class ArcEagerSystem(TransitionSystem):
    """Nivre's arc-eager system; right dependents attach as soon as possible."""

    name = "arc-eager"

    def legal(self, config: Configuration, transition: Transition) -> bool:
        kind = transition.kind
        top = config.stack_top
        if kind is Kind.SHIFT:
            return bool(config.buffer)
        if kind is Kind.RIGHT_ARC:
            return bool(config.buffer) and top is not None
        if kind is Kind.LEFT_ARC:
            return (
                bool(config.buffer)
                and top is not None
                and top != 0
                and not config.arcs.has_head(top)
            )
        if kind is Kind.REDUCE:
            return top is not None and config.arcs.has_head(top)
        return False

    def apply(self, config: Configuration, transition: Transition) -> Configuration:
        if not self.legal(config, transition):
            raise IllegalTransition(f"{transition.label()} is illegal here")
        kind = transition.kind
        if kind is Kind.SHIFT:
            front = config.buffer[0]
            return Configuration(
                config.stack + (front,), config.buffer[1:], config.arcs, config.sentence_len
            )
        if kind is Kind.LEFT_ARC:
            top, front = config.stack[-1], config.buffer[0]
            assert transition.relation is not None
            return Configuration(
                config.stack[:-1],
                config.buffer,
                config.arcs.add(front, transition.relation, top),
                config.sentence_len,
            )
        if kind is Kind.RIGHT_ARC:
            top, front = config.stack[-1], config.buffer[0]
            assert transition.relation is not None
            return Configuration(
                config.stack + (front,),
                config.buffer[1:],
                config.arcs.add(top, transition.relation, front),
                config.sentence_len,
            )
        # REDUCE
        return Configuration(config.stack[:-1], config.buffer, config.arcs, config.sentence_len)

    def all_transitions(self, relations: list[str]) -> list[Transition]:
        out = [SHIFT, REDUCE]
        for rel in relations:
            out.append(Transition(Kind.LEFT_ARC, rel))
            out.append(Transition(Kind.RIGHT_ARC, rel))
        return out


class BaselineSystem(TransitionSystem):
    """Three-operation stack-based system: shift, left-arc, right-arc.

    Right-arc pops the head and puts it back at the buffer front, so the
    artificial root 0 can transiently appear in the buffer after its own
    attachment arc.
    """

    name = "baseline"

    def legal(self, config: Configuration, transition: Transition) -> bool:
        kind = transition.kind
        top = config.stack_top
        if kind is Kind.SHIFT:
            return bool(config.buffer)
        if kind is Kind.LEFT_ARC:
            return (
                bool(config.buffer)
                and top is not None
                and top != 0
                and not config.arcs.has_head(top)
            )
        if kind is Kind.RIGHT_ARC:
            return bool(config.buffer) and top is not None
        return False

    def apply(self, config: Configuration, transition: Transition) -> Configuration:
        if not self.legal(config, transition):
            raise IllegalTransition(f"{transition.label()} is illegal here")
        kind = transition.kind
        if kind is Kind.SHIFT:
            front = config.buffer[0]
            return Configuration(
                config.stack + (front,), config.buffer[1:], config.arcs, config.sentence_len
            )
        top, front = config.stack[-1], config.buffer[0]
        assert transition.relation is not None
        if kind is Kind.LEFT_ARC:
            return Configuration(
                config.stack[:-1],
                config.buffer,
                config.arcs.add(front, transition.relation, top),
                config.sentence_len,
            )
        # RIGHT-ARC: attach front under top, then top takes front's place.
        return Configuration(
            config.stack[:-1],
            (top,) + config.buffer[1:],
            config.arcs.add(top, transition.relation, front),
            config.sentence_len,
        )

    def all_transitions(self, relations: list[str]) -> list[Transition]:
        out = [SHIFT]
        for rel in relations:
            out.append(Transition(Kind.LEFT_ARC, rel))
            out.append(Transition(Kind.RIGHT_ARC, rel))
        return out


ARC_EAGER = ArcEagerSystem()
BASELINE = BaselineSystem()

_SYSTEMS = {system.name: system for system in (ARC_EAGER, BASELINE)}


def system_by_name(name: str) -> TransitionSystem:
    try:
        return _SYSTEMS[name]
    except KeyError:
        raise ValueError(f"unknown transition system {name!r}") from None


def finalize(
    config: Configuration,
    default_relation: str = DEFAULT_ROOT_RELATION,
) -> ArcSet:
    """Root-attach headless tokens of a terminal configuration.

    The result covers every token exactly once, so the parser always emits a
    spanning structure.
    """
    if config.buffer:
        raise NotTerminal("buffer is not empty")
    arcs = config.arcs
    for token in range(1, config.sentence_len + 1):
        if not arcs.has_head(token):
            arcs = arcs.add(0, default_relation, token)
    return arcs
