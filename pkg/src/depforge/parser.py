"""Deterministic classifier-guided parsing, training, and model persistence.

The parsing loop takes the highest-ranked legal transition at each step and
falls back to SHIFT when nothing ranked is legal (SHIFT is always legal
before the terminal configuration), so every parse terminates with a
spanning projective structure.

A trained model is a directory of UTF-8 text files::

    meta.txt            key=value: format-version, classifier, system,
                        default-relation, hyper.* entries
    symbols-<attr>.txt  one symbol per line, line number = id - 2
    features.txt        feature templates, one per line
    classifier.txt      classifier-specific payload
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from .classifiers import Classifier, ModelContext, load_classifier
from .conllx import Sentence
from .features import (
    ATTRIBUTES,
    FeatureModel,
    Instance,
    SymbolTable,
    extract,
    extract_symbols,
    parse_feature_templates,
)
from .oracle import NonProjectiveGold, derive
from .transition import (
    DEFAULT_ROOT_RELATION,
    Kind,
    Transition,
    TransitionSystem,
    finalize,
    system_by_name,
)

FORMAT_VERSION = "1"

__all__ = [
    "ModelMismatch",
    "NoProjectiveSentences",
    "ParserModel",
    "TrainReport",
    "load_model",
    "parse_corpus",
    "parse_sentence",
    "save_model",
    "train_parser",
]


class NoProjectiveSentences(ValueError):
    pass


class ModelMismatch(ValueError):
    pass


@dataclass
class ParserModel:
    system: TransitionSystem
    feature_model: FeatureModel
    label_table: SymbolTable
    classifier: Classifier
    default_relation: str = DEFAULT_ROOT_RELATION

    def context(self) -> ModelContext:
        return ModelContext(feature_model=self.feature_model, label_table=self.label_table)


@dataclass
class TrainReport:
    sentences_used: int
    sentences_skipped: int
    instance_count: int
    label_count: int
    seconds: float


def train_parser(
    corpus: list[Sentence],
    system: TransitionSystem,
    feature_model: FeatureModel,
    classifier: Classifier,
    default_relation: str = DEFAULT_ROOT_RELATION,
) -> tuple[ParserModel, TrainReport]:
    """Derive oracle transitions, extract instances, and fit the classifier.

    Non-projective sentences are skipped and counted; a corpus without a
    single projective sentence raises NoProjectiveSentences.
    """
    started = time.perf_counter()
    label_table = SymbolTable()
    instances: list[Instance] = []
    used = skipped = 0
    for sentence in corpus:
        try:
            steps = derive(sentence, system)
        except NonProjectiveGold:
            skipped += 1
            continue
        used += 1
        for step in steps:
            values = extract(step.configuration, sentence, feature_model, train=True)
            label = label_table.intern(step.transition.label())
            instances.append(Instance(values=values, label=label))
    if used == 0:
        raise NoProjectiveSentences("no projective sentences in the training corpus")
    feature_model.freeze()
    label_table.freeze()
    model = ParserModel(
        system=system,
        feature_model=feature_model,
        label_table=label_table,
        classifier=classifier,
        default_relation=default_relation,
    )
    classifier.train(instances, model.context())
    report = TrainReport(
        sentences_used=used,
        sentences_skipped=skipped,
        instance_count=len(instances),
        label_count=len(label_table.symbols()),
        seconds=time.perf_counter() - started,
    )
    return model, report


def _check_layout(model: ParserModel) -> None:
    n_templates = len(model.feature_model.templates)
    width = model.classifier.template_count()
    if width is not None and width != n_templates:
        raise ModelMismatch(
            f"classifier expects {width} templates, feature model has {n_templates}"
        )


def parse_sentence(model: ParserModel, sentence: Sentence) -> Sentence:
    """Fill HEAD/DEPREL for one sentence; other columns pass through."""
    _check_layout(model)
    system = model.system
    config = system.initial(sentence)
    step_limit = 2 * len(sentence) + 2
    steps = 0
    while not system.is_terminal(config):
        ranked = _predict(model, config, sentence)
        for class_id, _score in ranked:
            transition = Transition.from_label(model.label_table.symbol_of(class_id))
            if system.legal(config, transition):
                config = system.apply(config, transition)
                break
        else:
            config = system.apply(config, Transition(Kind.SHIFT))
        steps += 1
        if steps > step_limit:
            raise AssertionError("parse exceeded the transition budget")
    arcs = finalize(config, model.default_relation)
    return sentence.with_arcs(arcs, model.default_relation)


def _predict(model: ParserModel, config, sentence) -> list[tuple[int, float]]:
    symbols = extract_symbols(config, sentence, model.feature_model)
    if model.classifier.wants_symbols:
        return model.classifier.predict_symbols(symbols)  # type: ignore[attr-defined]
    values = []
    for template, symbol in zip(model.feature_model.templates, symbols):
        if symbol is None:
            values.append(0)
        else:
            values.append(model.feature_model.table_for(template).id_of(symbol))
    return model.classifier.predict(values)


def parse_corpus(model: ParserModel, sentences: list[Sentence]) -> list[Sentence]:
    return [parse_sentence(model, sentence) for sentence in sentences]


def save_model(directory: str | Path, model: ParserModel) -> None:
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    meta = {
        "format-version": FORMAT_VERSION,
        "classifier": model.classifier.kind,
        "system": model.system.name,
        "default-relation": model.default_relation,
    }
    for key, value in model.classifier.hyperparameters().items():
        meta[f"hyper.{key}"] = value
    (path / "meta.txt").write_text(
        "".join(f"{k}={v}\n" for k, v in meta.items()), encoding="utf-8"
    )
    for attr in ATTRIBUTES:
        _write_symbols(path / f"symbols-{attr}.txt", model.feature_model.tables[attr])
    _write_symbols(path / "symbols-label.txt", model.label_table)
    (path / "features.txt").write_text(model.feature_model.templates_text(), encoding="utf-8")
    model.classifier.save(path / "classifier.txt")


def _write_symbols(path: Path, table: SymbolTable) -> None:
    path.write_text("".join(s + "\n" for s in table.symbols()), encoding="utf-8")


def _read_symbols(path: Path) -> SymbolTable:
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")[:-1] if text else []
    table = SymbolTable(lines)
    table.freeze()
    return table


def load_model(directory: str | Path) -> ParserModel:
    path = Path(directory)
    meta: dict[str, str] = {}
    for line in (path / "meta.txt").read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition("=")
        meta[key] = value
    if meta.get("format-version") != FORMAT_VERSION:
        raise ModelMismatch(f"unsupported model format {meta.get('format-version')!r}")
    templates = parse_feature_templates((path / "features.txt").read_text(encoding="utf-8"))
    tables = {attr: _read_symbols(path / f"symbols-{attr}.txt") for attr in ATTRIBUTES}
    feature_model = FeatureModel(templates=templates, tables=tables)
    label_table = _read_symbols(path / "symbols-label.txt")
    hyper = {k[len("hyper.") :]: v for k, v in meta.items() if k.startswith("hyper.")}
    ctx = ModelContext(feature_model=feature_model, label_table=label_table)
    classifier = load_classifier(meta["classifier"], path / "classifier.txt", ctx, hyper)
    model = ParserModel(
        system=system_by_name(meta["system"]),
        feature_model=feature_model,
        label_table=label_table,
        classifier=classifier,
        default_relation=meta.get("default-relation", DEFAULT_ROOT_RELATION),
    )
    return model
