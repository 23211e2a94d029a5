"""Linear models (hinge or logistic loss) over one-hot binarized features.

One-versus-rest SGD with a decaying learning rate and L2 regularization;
the per-epoch instance order comes from a seeded generator, so training is
deterministic.  The inner loop lives in depforge._speedups and runs either
compiled or in pure Python with identical results.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .._speedups import kernels
from ..features import Instance, binarize
from .base import (
    Classifier,
    DimensionMismatch,
    EmptyTrainingSet,
    ModelContext,
    ranked_from_scores,
)

__all__ = ["LinearClassifier"]

LOSSES = ("hinge", "logistic")


class LinearClassifier(Classifier):
    def __init__(
        self,
        loss: str = "hinge",
        epochs: int = 10,
        eta0: float = 0.1,
        l2: float = 1e-5,
        seed: int = 42,
    ):
        if loss not in LOSSES:
            raise ValueError(f"unknown loss {loss!r}")
        self.loss = loss
        self.epochs = epochs
        self.eta0 = eta0
        self.l2 = l2
        self.seed = seed
        self.class_ids: list[int] = []
        self.vocabulary_sizes: list[int] = []
        self.weights: np.ndarray | None = None
        self.epoch_objectives: list[float] = []

    @property
    def kind(self) -> str:  # type: ignore[override]
        return "linear-svm" if self.loss == "hinge" else "logistic"

    def _encode(self, instances: Sequence[Instance]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        indptr = [0]
        indices: list[int] = []
        rows = []
        class_index = {c: i for i, c in enumerate(self.class_ids)}
        for inst in instances:
            active = binarize(inst.values, self.vocabulary_sizes)
            indices.extend(active)
            indptr.append(len(indices))
            rows.append(class_index[inst.label])
        return (
            np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(rows, dtype=np.int32),
        )

    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        if not instances:
            raise EmptyTrainingSet("linear model needs at least one instance")
        self.vocabulary_sizes = ctx.feature_model.vocabulary_sizes()
        self.class_ids = sorted({inst.label for inst in instances})
        dim = sum(self.vocabulary_sizes)
        indptr, indices, rows = self._encode(instances)
        state = kernels.SgdState(len(self.class_ids), dim)
        rng = np.random.default_rng(self.seed)
        horizon = float(len(instances))
        self.epoch_objectives = []
        for _ in range(self.epochs):
            order = rng.permutation(len(instances)).astype(np.int64)
            state.run_epoch(
                indptr, indices, rows, order, self.eta0, self.l2, horizon, self.loss == "hinge"
            )
            weights = state.weights()
            self.epoch_objectives.append(self._objective(weights, indptr, indices, rows))
        self.weights = state.weights()

    def _objective(
        self, weights: np.ndarray, indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray
    ) -> float:
        """Regularized mean one-versus-rest loss over the training set."""
        n = len(rows)
        total = 0.0
        for i in range(n):
            active = indices[indptr[i] : indptr[i + 1]]
            margins = weights[:, active].sum(axis=1)
            y = np.full(len(self.class_ids), -1.0)
            y[rows[i]] = 1.0
            z = y * margins
            if self.loss == "hinge":
                total += float(np.maximum(0.0, 1.0 - z).sum())
            else:
                total += float(np.logaddexp(0.0, -z).sum())
        penalty = 0.5 * self.l2 * float((weights * weights).sum())
        return total / n + penalty

    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        if self.weights is None:
            raise EmptyTrainingSet("classifier is not trained")
        if len(values) != len(self.vocabulary_sizes):
            raise DimensionMismatch(
                f"{len(values)} values against {len(self.vocabulary_sizes)} templates"
            )
        active = binarize(values, self.vocabulary_sizes)
        scores = self.weights[:, active].sum(axis=1)
        return ranked_from_scores(
            {c: float(scores[i]) for i, c in enumerate(self.class_ids)}
        )

    def template_count(self) -> int | None:
        return len(self.vocabulary_sizes) or None

    def hyperparameters(self) -> dict[str, str]:
        return {
            "loss": self.loss,
            "epochs": str(self.epochs),
            "eta0": repr(self.eta0),
            "l2": repr(self.l2),
            "seed": str(self.seed),
        }

    def save(self, path: Path) -> None:
        assert self.weights is not None
        lines = []
        for i, cls in enumerate(self.class_ids):
            row = self.weights[i]
            for coordinate in np.nonzero(row)[0]:
                lines.append(f"{cls}\t{int(coordinate)}\t{float(row[coordinate])!r}\n")
        path.write_text("".join(lines), encoding="utf-8")

    @classmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "LinearClassifier":
        model = cls(
            loss=hyper.get("loss", "hinge"),
            epochs=int(hyper.get("epochs", "10")),
            eta0=float(hyper.get("eta0", "0.1")),
            l2=float(hyper.get("l2", "1e-05")),
            seed=int(hyper.get("seed", "42")),
        )
        model.vocabulary_sizes = ctx.feature_model.vocabulary_sizes()
        dim = sum(model.vocabulary_sizes)
        model.class_ids = sorted(
            ctx.label_table.id_of(symbol) for symbol in ctx.label_table.symbols()
        )
        weights = np.zeros((len(model.class_ids), dim))
        class_index = {c: i for i, c in enumerate(model.class_ids)}
        for line in path.read_text(encoding="utf-8").splitlines():
            cls_text, coord_text, weight_text = line.split("\t")
            weights[class_index[int(cls_text)], int(coord_text)] = float(weight_text)
        model.weights = weights
        return model
