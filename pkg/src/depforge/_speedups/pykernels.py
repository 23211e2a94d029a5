"""Pure-Python/numpy fallbacks for the hot classifier kernels.

Semantics match depforge._speedups._kernels exactly; the SGD path mirrors
the compiled loop operation for operation so trained weights are
bit-identical whichever implementation is active.
"""

from __future__ import annotations

import math

import numpy as np

COMPILED = False


def knn_distances(stored: np.ndarray, weights: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Weighted-overlap distance from ``query`` to every stored row."""
    return (stored != query) @ weights


class SgdState:
    """One-versus-rest SGD over sparse binary instances, scaled-vector trick.

    Weights are kept as ``scale * raw`` per class; the scale absorbs the
    multiplicative L2 shrink so each step only touches active coordinates.
    """

    def __init__(self, n_classes: int, dim: int):
        self.n_classes = n_classes
        self.dim = dim
        self._raw = [[0.0] * dim for _ in range(n_classes)]
        self._scales = [1.0] * n_classes
        self._t = 0.0

    def run_epoch(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        labels: np.ndarray,
        order: np.ndarray,
        eta0: float,
        lam: float,
        horizon: float,
        hinge: bool,
    ) -> None:
        indptr_l = indptr.tolist()
        indices_l = indices.tolist()
        labels_l = labels.tolist()
        raw = self._raw
        scales = self._scales
        t = self._t
        n_classes = self.n_classes
        dim = self.dim
        for i in order.tolist():
            eta = eta0 / (1.0 + t / horizon)
            start = indptr_l[i]
            end = indptr_l[i + 1]
            label = labels_l[i]
            for c in range(n_classes):
                row = raw[c]
                dot = 0.0
                for p in range(start, end):
                    dot += row[indices_l[p]]
                margin = scales[c] * dot
                y = 1.0 if label == c else -1.0
                scales[c] *= 1.0 - eta * lam
                if scales[c] < 1e-12:
                    scale = scales[c]
                    for j in range(dim):
                        row[j] *= scale
                    scales[c] = 1.0
                if hinge:
                    if y * margin < 1.0:
                        g = eta * y / scales[c]
                        for p in range(start, end):
                            row[indices_l[p]] += g
                else:
                    z = y * margin
                    if z > 500.0:
                        z = 500.0
                    elif z < -500.0:
                        z = -500.0
                    g = eta * y / (1.0 + math.exp(z)) / scales[c]
                    for p in range(start, end):
                        row[indices_l[p]] += g
            t += 1.0
        self._t = t

    def weights(self) -> np.ndarray:
        """Materialized (n_classes, dim) weight matrix."""
        out = np.array(self._raw, dtype=np.float64)
        out *= np.array(self._scales, dtype=np.float64)[:, None]
        return out
