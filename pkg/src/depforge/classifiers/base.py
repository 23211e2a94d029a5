"""Pluggable classifier interface.

Every classifier trains once on a list of instances and then answers
predictions as a full ranking of (class id, score) pairs, best first, ties
broken by ascending class id.  Trained models are immutable: predicting
never changes state, and identical inputs rank identically.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from pathlib import Path
from typing import ClassVar, Mapping, Sequence

from ..features import FeatureModel, Instance, SymbolTable

__all__ = [
    "Classifier",
    "DimensionMismatch",
    "EmptyTrainingSet",
    "ModelContext",
    "ranked_from_scores",
]


class EmptyTrainingSet(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass
class ModelContext:
    """What a classifier may consult besides the instances themselves."""

    feature_model: FeatureModel
    label_table: SymbolTable


def ranked_from_scores(scores: Mapping[int, float]) -> list[tuple[int, float]]:
    """Descending by score, ascending class id on ties."""
    return sorted(((c, float(s)) for c, s in scores.items()), key=lambda cs: (-cs[1], cs[0]))


class Classifier(abc.ABC):
    kind: ClassVar[str]
    # Remote classifiers ship raw symbol strings instead of local ids.
    wants_symbols: ClassVar[bool] = False

    @abc.abstractmethod
    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        """Fit on training instances; may consult ctx for layout and labels."""

    @abc.abstractmethod
    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        """Ranked (class id, score), best first."""

    @abc.abstractmethod
    def save(self, path: Path) -> None:
        """Write the classifier.txt payload for the model directory."""

    @classmethod
    @abc.abstractmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "Classifier":
        """Rebuild from a classifier.txt payload."""

    def hyperparameters(self) -> dict[str, str]:
        """Key/value pairs recorded in meta.txt."""
        return {}

    def template_count(self) -> int | None:
        """Instance width this model was trained for, when it is recorded."""
        return None
