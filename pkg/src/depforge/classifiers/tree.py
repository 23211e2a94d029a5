"""Gain-ratio decision tree over nominal features.

Multiway splits keyed on value identity only (never order): each distinct
value of the chosen template gets a child.  Growth stops at purity, below
min_instances, or when no template has positive information gain.  A value
with no child edge at prediction time falls back to the node's own class
distribution.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..features import Instance
from .base import Classifier, EmptyTrainingSet, ModelContext, ranked_from_scores
from .entropy import split_scores

__all__ = ["DecisionTreeClassifier"]


@dataclass
class _Node:
    distribution: dict[int, int]
    split_template: int | None = None
    children: dict[int, "_Node"] = field(default_factory=dict)

    def ranking(self) -> list[tuple[int, float]]:
        total = sum(self.distribution.values())
        return ranked_from_scores({c: n / total for c, n in self.distribution.items()})


class DecisionTreeClassifier(Classifier):
    kind = "dtree"

    def __init__(self, min_instances: int = 2):
        self.min_instances = min_instances
        self.root: _Node | None = None

    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        if not instances:
            raise EmptyTrainingSet("decision tree needs at least one instance")
        self.root = self._build(list(instances))

    def _build(self, instances: list[Instance]) -> _Node:
        distribution = dict(Counter(inst.label for inst in instances))
        node = _Node(distribution=distribution)
        if len(distribution) == 1 or len(instances) < self.min_instances:
            return node
        labels = [inst.label for inst in instances]
        best_template = None
        best_ratio = 0.0
        for t in range(len(instances[0].values)):
            gain, ratio = split_scores([inst.values[t] for inst in instances], labels)
            if gain > 1e-12 and ratio > best_ratio + 1e-12:
                best_template, best_ratio = t, ratio
        if best_template is None:
            return node
        partitions: dict[int, list[Instance]] = {}
        for inst in instances:
            partitions.setdefault(inst.values[best_template], []).append(inst)
        node.split_template = best_template
        node.children = {value: self._build(part) for value, part in sorted(partitions.items())}
        return node

    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        if self.root is None:
            raise EmptyTrainingSet("classifier is not trained")
        node = self.root
        while node.split_template is not None:
            child = node.children.get(values[node.split_template])
            if child is None:
                break
            node = child
        return node.ranking()

    def hyperparameters(self) -> dict[str, str]:
        return {"min_instances": str(self.min_instances)}

    def save(self, path: Path) -> None:
        lines: list[str] = []

        def emit(node: _Node, depth: int) -> None:
            pad = " " * depth
            dist = " ".join(f"{c}:{n}" for c, n in sorted(node.distribution.items()))
            if node.split_template is None:
                lines.append(f"{pad}leaf {dist}\n")
                return
            lines.append(f"{pad}split {node.split_template} {dist}\n")
            for value, child in node.children.items():
                lines.append(f"{pad} value {value}\n")
                emit(child, depth + 2)

        assert self.root is not None
        emit(self.root, 0)
        path.write_text("".join(lines), encoding="utf-8")

    @classmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "DecisionTreeClassifier":
        model = cls(min_instances=int(hyper.get("min_instances", "2")))
        lines = path.read_text(encoding="utf-8").splitlines()
        position = 0

        def parse_distribution(parts: list[str]) -> dict[int, int]:
            out = {}
            for part in parts:
                c, n = part.split(":")
                out[int(c)] = int(n)
            return out

        def parse_node(depth: int) -> _Node:
            nonlocal position
            line = lines[position]
            position += 1
            body = line[depth:].split()
            if body[0] == "leaf":
                return _Node(distribution=parse_distribution(body[1:]))
            node = _Node(distribution=parse_distribution(body[2:]), split_template=int(body[1]))
            pad = " " * (depth + 1)
            while position < len(lines) and lines[position].startswith(pad + "value "):
                value = int(lines[position][len(pad) + 6 :])
                position += 1
                node.children[value] = parse_node(depth + 2)
            return node

        model.root = parse_node(0)
        return model
