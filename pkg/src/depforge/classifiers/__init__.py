"""Classifier registry: construct any supported kind from CLI-style options."""

from __future__ import annotations

from .base import Classifier, DimensionMismatch, EmptyTrainingSet, ModelContext, ranked_from_scores
from .knn import KnnClassifier
from .linear import LinearClassifier
from .naive_bayes import NaiveBayesClassifier
from .tree import DecisionTreeClassifier

__all__ = [
    "CLASSIFIER_KINDS",
    "Classifier",
    "DecisionTreeClassifier",
    "DimensionMismatch",
    "EmptyTrainingSet",
    "KnnClassifier",
    "LinearClassifier",
    "ModelContext",
    "NaiveBayesClassifier",
    "make_classifier",
    "load_classifier",
    "ranked_from_scores",
]

CLASSIFIER_KINDS = ("nb", "dtree", "knn", "linear-svm", "logistic", "remote")

_SETTINGS = {
    "nb": {"alpha": float},
    "dtree": {"min_instances": int},
    "knn": {"k": int},
    "linear-svm": {"epochs": int, "eta0": float, "l2": float, "seed": int},
    "logistic": {"epochs": int, "eta0": float, "l2": float, "seed": int},
    "remote": {"timeout": float, "retries": int},
}


def _convert(kind: str, settings: dict[str, str]) -> dict:
    schema = _SETTINGS[kind]
    converted = {}
    for key, raw in settings.items():
        if key not in schema:
            raise ValueError(f"unknown setting {key!r} for classifier {kind!r}")
        converted[key] = schema[key](raw)
    return converted


def make_classifier(
    kind: str,
    settings: dict[str, str] | None = None,
    seed: int | None = None,
    host: str | None = None,
    port: int | None = None,
) -> Classifier:
    """Build an untrained classifier; ``settings`` are raw key=value strings."""
    if kind not in CLASSIFIER_KINDS:
        raise ValueError(f"unknown classifier kind {kind!r}")
    options = _convert(kind, settings or {})
    if kind == "nb":
        return NaiveBayesClassifier(**options)
    if kind == "dtree":
        return DecisionTreeClassifier(**options)
    if kind == "knn":
        return KnnClassifier(**options)
    if kind in ("linear-svm", "logistic"):
        loss = "hinge" if kind == "linear-svm" else "logistic"
        if seed is not None:
            options.setdefault("seed", seed)
        return LinearClassifier(loss=loss, **options)
    from ..remote import RemoteClassifier, RemoteClassifierConfig

    if host is None or port is None:
        raise ValueError("remote classifier requires host and port")
    return RemoteClassifier(RemoteClassifierConfig(host=host, port=port, **options))


def load_classifier(kind: str, path, ctx: ModelContext, hyper: dict[str, str]) -> Classifier:
    if kind == "nb":
        return NaiveBayesClassifier.load(path, ctx, hyper)
    if kind == "dtree":
        return DecisionTreeClassifier.load(path, ctx, hyper)
    if kind == "knn":
        return KnnClassifier.load(path, ctx, hyper)
    if kind in ("linear-svm", "logistic"):
        hyper = dict(hyper)
        hyper.setdefault("loss", "hinge" if kind == "linear-svm" else "logistic")
        return LinearClassifier.load(path, ctx, hyper)
    if kind == "remote":
        from ..remote import RemoteClassifier

        return RemoteClassifier.load(path, ctx, hyper)
    raise ValueError(f"unknown classifier kind {kind!r}")
