"""Categorical naive Bayes with add-one smoothing.

Scores are normalized log-posteriors: log P(c) + sum_t log P(v_t | c),
shifted so the exponentiated scores sum to one.  Each (template, class)
likelihood is smoothed over the template's training vocabulary plus one
extra bucket that absorbs unknown and unseen-for-this-class values.
"""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path
from typing import Sequence

from ..features import Instance
from .base import Classifier, EmptyTrainingSet, ModelContext, ranked_from_scores

__all__ = ["NaiveBayesClassifier"]


def _log_sum_exp(values: list[float]) -> float:
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


class NaiveBayesClassifier(Classifier):
    kind = "nb"

    def __init__(self, alpha: float = 1.0):
        self.alpha = alpha
        self.class_counts: Counter[int] = Counter()
        # (template, class) -> value -> count
        self.value_counts: dict[tuple[int, int], Counter[int]] = {}
        self.vocab: list[set[int]] = []
        self.n_templates = 0

    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        if not instances:
            raise EmptyTrainingSet("naive Bayes needs at least one instance")
        self.n_templates = len(instances[0].values)
        self.vocab = [set() for _ in range(self.n_templates)]
        for inst in instances:
            self.class_counts[inst.label] += 1
            for t, value in enumerate(inst.values):
                self.value_counts.setdefault((t, inst.label), Counter())[value] += 1
                self.vocab[t].add(value)

    def _log_joint(self, values: Sequence[int]) -> dict[int, float]:
        total = sum(self.class_counts.values())
        scores = {}
        for cls, n_cls in self.class_counts.items():
            score = math.log(n_cls / total)
            for t, value in enumerate(values):
                counts = self.value_counts.get((t, cls))
                seen = counts[value] if counts else 0
                denominator = n_cls + self.alpha * (len(self.vocab[t]) + 1)
                score += math.log((seen + self.alpha) / denominator)
            scores[cls] = score
        return scores

    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        joint = self._log_joint(values)
        norm = _log_sum_exp(list(joint.values()))
        return ranked_from_scores({c: s - norm for c, s in joint.items()})

    def template_count(self) -> int | None:
        return self.n_templates or None

    def hyperparameters(self) -> dict[str, str]:
        return {"alpha": repr(self.alpha)}

    def save(self, path: Path) -> None:
        lines = []
        for (t, cls), counts in sorted(self.value_counts.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            for value, count in sorted(counts.items()):
                lines.append(f"{cls}\t{t}\t{value}\t{count}\n")
        path.write_text("".join(lines), encoding="utf-8")

    @classmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "NaiveBayesClassifier":
        model = cls(alpha=float(hyper.get("alpha", "1.0")))
        n_templates = 0
        for line in path.read_text(encoding="utf-8").splitlines():
            cls_text, t_text, value_text, count_text = line.split("\t")
            clazz, t, value, count = int(cls_text), int(t_text), int(value_text), int(count_text)
            n_templates = max(n_templates, t + 1)
            model.value_counts.setdefault((t, clazz), Counter())[value] = count
        model.n_templates = n_templates
        model.vocab = [set() for _ in range(n_templates)]
        for (t, clazz), counts in model.value_counts.items():
            model.vocab[t].update(counts)
            if t == 0:
                model.class_counts[clazz] = sum(counts.values())
        return model
