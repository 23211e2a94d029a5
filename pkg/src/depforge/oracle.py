"""Static oracles: map a gold projective tree to its transition sequence.

The derived (configuration, transition) pairs are the classifier's training
data.  Non-projective gold trees are rejected; callers decide whether to
skip the sentence or abort.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conllx import ArcSet, Sentence, is_projective
from .transition import (
    ARC_EAGER,
    BASELINE,
    Configuration,
    Kind,
    Transition,
    TransitionSystem,
)

__all__ = [
    "EmptyBuffer",
    "NonProjectiveGold",
    "OracleStep",
    "arc_eager_oracle",
    "baseline_oracle",
    "derive",
]


class NonProjectiveGold(ValueError):
    pass


class EmptyBuffer(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class OracleStep:
    configuration: Configuration
    transition: Transition


def arc_eager_oracle(config: Configuration, gold: ArcSet) -> Transition:
    """Correct next arc-eager transition for ``config`` against ``gold``.

    Prefers an arc between the stack top and buffer front, reduces the stack
    top once it is attached and the front's remaining gold arcs all lie
    further left, and shifts otherwise.
    """
    front = config.buffer_front
    if front is None:
        raise EmptyBuffer("oracle consulted on a terminal configuration")
    top = config.stack_top
    if top is not None:
        rel = gold.relation_of(top)
        if gold.head_of(top) == front:
            assert rel is not None
            return Transition(Kind.LEFT_ARC, rel)
        front_rel = gold.relation_of(front)
        if gold.head_of(front) == top:
            assert front_rel is not None
            return Transition(Kind.RIGHT_ARC, front_rel)
        if config.arcs.has_head(top) and _gold_arc_left_of(gold, front, top):
            return Transition(Kind.REDUCE)
    return Transition(Kind.SHIFT)


def _gold_arc_left_of(gold: ArcSet, front: int, top: int) -> bool:
    """Does any gold arc join ``front`` with a token strictly left of ``top``?"""
    head = gold.head_of(front)
    if head is not None and head < top:
        return True
    return any(dep < top for dep in gold.dependents_of(front))


def baseline_oracle(config: Configuration, gold: ArcSet) -> Transition:
    """Correct next baseline transition; right-arc waits for the front's subtree."""
    front = config.buffer_front
    if front is None:
        raise EmptyBuffer("oracle consulted on a terminal configuration")
    top = config.stack_top
    if top is not None:
        rel = gold.relation_of(top)
        if gold.head_of(top) == front:
            assert rel is not None
            return Transition(Kind.LEFT_ARC, rel)
        front_rel = gold.relation_of(front)
        if gold.head_of(front) == top and _subtree_complete(config.arcs, gold, front):
            assert front_rel is not None
            return Transition(Kind.RIGHT_ARC, front_rel)
    return Transition(Kind.SHIFT)


def _subtree_complete(arcs: ArcSet, gold: ArcSet, head: int) -> bool:
    return all(arcs.head_of(dep) == head for dep in gold.dependents_of(head))


_ORACLES = {
    ARC_EAGER.name: arc_eager_oracle,
    BASELINE.name: baseline_oracle,
}


def derive(sentence: Sentence, system: TransitionSystem) -> list[OracleStep]:
    """Oracle transition sequence for a fully annotated projective sentence.

    Re-applying the returned transitions from the initial configuration
    rebuilds the gold arcs exactly; non-projective input raises
    NonProjectiveGold.
    """
    if not is_projective(sentence):
        raise NonProjectiveGold("gold tree is not projective")
    gold = ArcSet.from_sentence(sentence)
    oracle = _ORACLES[system.name]
    steps: list[OracleStep] = []
    config = system.initial(sentence)
    limit = 2 * len(sentence)
    while not system.is_terminal(config):
        transition = oracle(config, gold)
        if not system.legal(config, transition):
            raise AssertionError(
                f"oracle produced illegal {transition.label()} for {config}"
            )
        steps.append(OracleStep(config, transition))
        config = system.apply(config, transition)
        if len(steps) > limit:
            raise AssertionError("oracle derivation exceeded 2n transitions")
    return steps
