"""Command-line interface: train, parse, eval, learncurve, genfixture.

Exit codes: 0 success, 1 usage error, 2 data error.  The default RNG seed
is 42, overridable by --seed or the DEPFORGE_SEED environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import classifiers, evaluate, fixture, remote
from .classifiers import make_classifier
from .conllx import ConllError, EmptyFile, MissingHead, read_conllx_path, write_conllx_path
from .features import (
    FeatureModelSyntaxError,
    FeatureModel,
    default_feature_model,
    parse_feature_templates,
)
from .parser import (
    ModelMismatch,
    NoProjectiveSentences,
    load_model,
    parse_corpus,
    save_model,
    train_parser,
)
from .transition import DEFAULT_ROOT_RELATION, system_by_name

__all__ = ["main"]

USAGE_ERROR = 1
DATA_ERROR = 2

DEFAULT_SEED = 42
DEFAULT_CURVE_STEP = 1000
DEFAULT_CURVE_MAX = 11000
DEFAULT_FIXTURE_SENTENCES = 300


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _usage_error(message: str) -> "SystemExit":
    print(f"depforge: error: {message}", file=sys.stderr)
    return SystemExit(USAGE_ERROR)


def _data_error(message: str) -> "SystemExit":
    print(f"depforge: error: {message}", file=sys.stderr)
    return SystemExit(DATA_ERROR)


def _default_seed() -> int:
    env = os.environ.get("DEPFORGE_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise _usage_error(f"DEPFORGE_SEED must be an integer, got {env!r}") from None


def _parse_settings(pairs: list[str]) -> dict[str, str]:
    settings = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise _usage_error(f"--set expects key=value, got {pair!r}")
        settings[key] = value
    return settings


def _load_feature_model(path: str | None) -> FeatureModel:
    if path is None:
        return default_feature_model()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _data_error(f"cannot read feature model: {exc}") from None
    try:
        return FeatureModel(templates=parse_feature_templates(text))
    except FeatureModelSyntaxError as exc:
        raise _data_error(f"bad feature model: {exc}") from None


def _read_corpus(path: str):
    try:
        return read_conllx_path(path)
    except OSError as exc:
        raise _data_error(str(exc)) from None
    except ConllError as exc:
        raise _data_error(f"{path}: {exc}") from None


def _build_classifier(args, settings: dict[str, str], seed: int):
    if args.classifier == "remote" and (args.host is None or args.port is None):
        raise _usage_error("--classifier remote requires --host and --port")
    try:
        return make_classifier(
            args.classifier, settings, seed=seed, host=args.host, port=args.port
        )
    except ValueError as exc:
        raise _usage_error(str(exc)) from None


def _cmd_train(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    settings = _parse_settings(args.set)
    classifier = _build_classifier(args, settings, seed)
    corpus = _read_corpus(args.train)
    feature_model = _load_feature_model(args.features)
    system = system_by_name(args.system)
    try:
        model, report = train_parser(
            corpus, system, feature_model, classifier, args.root_relation
        )
    except (NoProjectiveSentences, MissingHead, classifiers.EmptyTrainingSet) as exc:
        raise _data_error(str(exc)) from None
    save_model(args.model, model)
    print(f"sentences used      {report.sentences_used}")
    print(f"sentences skipped   {report.sentences_skipped}")
    print(f"training instances  {report.instance_count}")
    print(f"labels              {report.label_count}")
    print(f"wall time           {report.seconds:.2f}s")
    return 0


def _cmd_parse(args) -> int:
    try:
        model = load_model(args.model)
    except (OSError, KeyError, ValueError, ConllError) as exc:
        raise _data_error(f"cannot load model: {exc}") from None
    if args.host is not None or args.port is not None:
        _override_remote(model, args.host, args.port)
    try:
        corpus = read_conllx_path(args.input)
    except EmptyFile:
        Path(args.output).write_bytes(b"")
        return 0
    except (OSError, ConllError) as exc:
        raise _data_error(str(exc)) from None
    try:
        parsed = parse_corpus(model, corpus)
    except (ModelMismatch, remote.RemoteError) as exc:
        raise _data_error(str(exc)) from None
    write_conllx_path(args.output, parsed)
    return 0


def _override_remote(model, host: str | None, port: int | None) -> None:
    classifier = model.classifier
    if not isinstance(classifier, remote.RemoteClassifier):
        raise _usage_error("--host/--port only apply to models with a remote classifier")
    if host is not None:
        classifier.config.host = host
    if port is not None:
        classifier.config.port = port


def _cmd_eval(args) -> int:
    gold = _read_corpus(args.gold)
    predicted = _read_corpus(args.pred)
    try:
        result = evaluate.score(gold, predicted, punct_mode=args.punct)
    except (evaluate.Misaligned, MissingHead) as exc:
        raise _data_error(str(exc)) from None
    print(
        f"LAS {100.0 * result.las:.1f} UAS {100.0 * result.uas:.1f} "
        f"counted {result.counted} excluded {result.excluded}"
    )
    return 0


def _cmd_learncurve(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    settings = _parse_settings(args.set)
    kinds = [k.strip() for k in args.classifiers.split(",") if k.strip()]
    if not kinds:
        raise _usage_error("--classifiers must name at least one classifier")
    for kind in kinds:
        if kind not in classifiers.CLASSIFIER_KINDS:
            raise _usage_error(f"unknown classifier kind {kind!r}")
        if kind == "remote":
            raise _usage_error("learncurve does not support the remote classifier")
        # validate per-kind settings early
        try:
            make_classifier(kind, settings, seed=seed)
        except ValueError as exc:
            raise _usage_error(str(exc)) from None
    train_corpus = _read_corpus(args.train)
    test_corpus = _read_corpus(args.test)

    def train_and_score(kind: str, subset, test) -> evaluate.Score:
        classifier = make_classifier(kind, settings, seed=seed)
        feature_model = _load_feature_model(args.features)
        model, _report = train_parser(
            subset, system_by_name(args.system), feature_model, classifier, args.root_relation
        )
        return evaluate.score(test, parse_corpus(model, test), punct_mode=args.punct)

    cells = evaluate.learning_curve(
        train_corpus,
        test_corpus,
        kinds,
        step=args.step,
        maximum=args.max,
        train_and_score=train_and_score,
        jobs=args.jobs,
    )
    Path(args.output).write_text(evaluate.curve_tsv(cells), encoding="utf-8")
    for cell in cells:
        if cell.failed:
            print(f"cell {cell.classifier}/{cell.size} failed: {cell.error}", file=sys.stderr)
        else:
            print(
                f"{cell.classifier}\t{cell.size}\tLAS {100.0 * cell.las:.1f}"
                f"\tUAS {100.0 * cell.uas:.1f}"
            )
    return 0


def _cmd_genfixture(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    corpus = fixture.generate_corpus(sentences=args.sentences, seed=seed)
    write_conllx_path(args.output, corpus)
    print(f"wrote {len(corpus)} sentences to {args.output}")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="depforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--system", choices=("arc-eager", "baseline"), default="arc-eager")
        p.add_argument("--features", help="feature model file (default: built-in templates)")
        p.add_argument("--root-relation", default=DEFAULT_ROOT_RELATION)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="classifier hyperparameter override (repeatable)",
        )

    train = sub.add_parser("train", help="train a parser model")
    train.add_argument("--train", required=True, help="CoNLL-X training file")
    train.add_argument("--model", required=True, help="output model directory")
    train.add_argument("--classifier", required=True, choices=classifiers.CLASSIFIER_KINDS)
    train.add_argument("--host", help="remote classifier host")
    train.add_argument("--port", type=int, help="remote classifier port")
    add_common(train)
    train.set_defaults(func=_cmd_train)

    parse = sub.add_parser("parse", help="parse a CoNLL-X file with a trained model")
    parse.add_argument("--model", required=True)
    parse.add_argument("--input", required=True)
    parse.add_argument("--output", required=True)
    parse.add_argument("--host", help="override the remote classifier host")
    parse.add_argument("--port", type=int, help="override the remote classifier port")
    parse.set_defaults(func=_cmd_parse)

    evalp = sub.add_parser("eval", help="score a parsed file against gold")
    evalp.add_argument("--gold", required=True)
    evalp.add_argument("--pred", required=True)
    evalp.add_argument("--punct", choices=evaluate.PUNCT_MODES, default="exclude")
    evalp.set_defaults(func=_cmd_eval)

    curve = sub.add_parser("learncurve", help="learning-curve sweep over training sizes")
    curve.add_argument("--train", required=True)
    curve.add_argument("--test", required=True)
    curve.add_argument("--classifiers", required=True, help="comma-separated kinds")
    curve.add_argument("--step", type=int, default=DEFAULT_CURVE_STEP)
    curve.add_argument("--max", type=int, default=DEFAULT_CURVE_MAX)
    curve.add_argument("--output", required=True, help="output TSV path")
    curve.add_argument("--jobs", type=int, default=1)
    curve.add_argument("--punct", choices=evaluate.PUNCT_MODES, default="exclude")
    add_common(curve)
    curve.set_defaults(func=_cmd_learncurve)

    gen = sub.add_parser("genfixture", help="emit a synthetic projective treebank")
    gen.add_argument("--output", required=True)
    gen.add_argument("--sentences", type=int, default=DEFAULT_FIXTURE_SENTENCES)
    gen.add_argument("--seed", type=int, default=None)
    gen.set_defaults(func=_cmd_genfixture)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except ConllError as exc:
        print(f"depforge: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
