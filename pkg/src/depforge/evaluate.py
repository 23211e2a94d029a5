"""Attachment scoring and the learning-curve harness.

UAS counts tokens whose predicted head matches gold; LAS additionally
requires an exact (case-sensitive) relation match.  Tokens whose form is
entirely Unicode punctuation can be excluded, which is the default.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .conllx import MissingHead, Sentence, is_punctuation

__all__ = [
    "CurveCell",
    "Misaligned",
    "PUNCT_MODES",
    "Score",
    "curve_sizes",
    "curve_tsv",
    "learning_curve",
    "score",
]

PUNCT_MODES = ("include", "exclude")


class Misaligned(ValueError):
    pass


@dataclass(frozen=True)
class Score:
    las: float
    uas: float
    counted: int
    total: int
    excluded: int


def score(
    gold: Sequence[Sentence],
    predicted: Sequence[Sentence],
    punct_mode: str = "exclude",
) -> Score:
    """Compare predicted heads/relations against gold, token by token."""
    if punct_mode not in PUNCT_MODES:
        raise ValueError(f"punct_mode must be one of {PUNCT_MODES}")
    if len(gold) != len(predicted):
        raise Misaligned(f"{len(gold)} gold sentences against {len(predicted)} predicted")
    counted = total = excluded = head_hits = label_hits = 0
    for index, (g, p) in enumerate(zip(gold, predicted), start=1):
        if len(g) != len(p):
            raise Misaligned(f"sentence {index}: {len(g)} gold tokens against {len(p)}")
        for g_tok, p_tok in zip(g, p):
            if g_tok.form != p_tok.form:
                raise Misaligned(
                    f"sentence {index}, token {g_tok.id}: form {g_tok.form!r} != {p_tok.form!r}"
                )
            if g_tok.head is None:
                raise MissingHead(f"sentence {index}, token {g_tok.id}: gold head missing")
            total += 1
            if punct_mode == "exclude" and is_punctuation(g_tok.form):
                excluded += 1
                continue
            counted += 1
            if p_tok.head == g_tok.head:
                head_hits += 1
                if p_tok.deprel == g_tok.deprel:
                    label_hits += 1
    if counted == 0:
        return Score(las=1.0, uas=1.0, counted=0, total=total, excluded=excluded)
    return Score(
        las=label_hits / counted,
        uas=head_hits / counted,
        counted=counted,
        total=total,
        excluded=excluded,
    )


@dataclass(frozen=True)
class CurveCell:
    classifier: str
    size: int
    las: float | None
    uas: float | None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def curve_sizes(corpus_size: int, step: int, maximum: int) -> list[int]:
    """step, 2*step, ... clamped to the corpus size, duplicates dropped."""
    if step < 1:
        raise ValueError("step must be at least 1")
    sizes: list[int] = []
    for size in range(step, maximum + 1, step):
        clamped = min(size, corpus_size)
        if not sizes or clamped != sizes[-1]:
            sizes.append(clamped)
    return sizes


def learning_curve(
    train_corpus: list[Sentence],
    test_corpus: list[Sentence],
    classifier_kinds: Sequence[str],
    step: int,
    maximum: int,
    train_and_score: Callable[[str, list[Sentence], list[Sentence]], Score],
    jobs: int = 1,
) -> list[CurveCell]:
    """Score every (classifier, size) cell; failures are recorded, not fatal.

    ``train_and_score`` does the actual work so the harness stays free of
    classifier construction details.  Output order is (classifier, size)
    regardless of scheduling.
    """
    sizes = curve_sizes(len(train_corpus), step, maximum)
    tasks = [(kind, size) for kind in classifier_kinds for size in sizes]

    def run(task: tuple[str, int]) -> CurveCell:
        kind, size = task
        try:
            result = train_and_score(kind, train_corpus[:size], test_corpus)
        except Exception as exc:  # cell failure must not kill the sweep
            return CurveCell(classifier=kind, size=size, las=None, uas=None, error=str(exc))
        return CurveCell(classifier=kind, size=size, las=result.las, uas=result.uas)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(run, tasks))
    else:
        cells = [run(task) for task in tasks]
    return sorted(cells, key=lambda c: (c.classifier, c.size))


def curve_tsv(cells: Sequence[CurveCell]) -> str:
    """Plot-ready TSV; failed cells are omitted."""
    lines = ["classifier\tsize\tlas\tuas\n"]
    for cell in cells:
        if not cell.failed:
            lines.append(f"{cell.classifier}\t{cell.size}\t{cell.las:.6f}\t{cell.uas:.6f}\n")
    return "".join(lines)
