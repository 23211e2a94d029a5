"""Memory-based k-nearest-neighbor classification.

Training stores every instance verbatim and weights each template by its
gain ratio on the training set; distance is the weighted overlap count of
differing templates.  Prediction ranks classes by vote mass among the k
nearest instances (training order breaks distance ties), then by training
frequency, then by class id.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import numpy as np

from .._speedups import kernels
from ..features import Instance
from .base import Classifier, EmptyTrainingSet, ModelContext
from .entropy import gain_ratio

__all__ = ["KnnClassifier"]


class KnnClassifier(Classifier):
    kind = "knn"

    def __init__(self, k: int = 1):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k
        self.stored: np.ndarray | None = None
        self.labels: np.ndarray | None = None
        self.weights: np.ndarray | None = None
        self.class_frequency: Counter[int] = Counter()

    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        if not instances:
            raise EmptyTrainingSet("k-NN needs at least one instance")
        self.stored = np.array([inst.values for inst in instances], dtype=np.int32)
        self.labels = np.array([inst.label for inst in instances], dtype=np.int64)
        labels = [inst.label for inst in instances]
        self.weights = np.array(
            [
                gain_ratio([inst.values[t] for inst in instances], labels)
                for t in range(len(instances[0].values))
            ],
            dtype=np.float64,
        )
        self.class_frequency = Counter(labels)

    def distances(self, values: Sequence[int]) -> np.ndarray:
        assert self.stored is not None and self.weights is not None
        query = np.asarray(values, dtype=np.int32)
        if query.shape[0] != self.stored.shape[1]:
            raise ValueError("query length does not match stored instances")
        return kernels.knn_distances(self.stored, self.weights, query)

    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        if self.stored is None:
            raise EmptyTrainingSet("classifier is not trained")
        assert self.labels is not None
        dists = self.distances(values)
        nearest = np.argsort(dists, kind="stable")[: self.k]
        votes = Counter(int(self.labels[i]) for i in nearest)
        ranked = sorted(
            votes.items(),
            key=lambda cv: (-cv[1], -self.class_frequency[cv[0]], cv[0]),
        )
        return [(c, float(v)) for c, v in ranked]

    def template_count(self) -> int | None:
        return None if self.stored is None else int(self.stored.shape[1])

    def hyperparameters(self) -> dict[str, str]:
        return {"k": str(self.k)}

    def save(self, path: Path) -> None:
        assert self.stored is not None and self.labels is not None and self.weights is not None
        lines = ["weights," + ",".join(repr(w) for w in self.weights.tolist()) + "\n"]
        for row, label in zip(self.stored.tolist(), self.labels.tolist()):
            lines.append(",".join(str(v) for v in row) + f",{label}\n")
        path.write_text("".join(lines), encoding="utf-8")

    @classmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "KnnClassifier":
        model = cls(k=int(hyper.get("k", "1")))
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("weights,"):
            raise ValueError("malformed k-NN payload: missing weights line")
        model.weights = np.array(
            [float(x) for x in lines[0][len("weights,") :].split(",")], dtype=np.float64
        )
        rows = []
        labels = []
        for line in lines[1:]:
            fields = [int(x) for x in line.split(",")]
            rows.append(fields[:-1])
            labels.append(fields[-1])
        model.stored = np.array(rows, dtype=np.int32)
        model.labels = np.array(labels, dtype=np.int64)
        model.class_frequency = Counter(labels)
        return model
