"""Precision/Recall/F1 over predictions, threshold sweeps, and the
three-way error taxonomy (missing anchor, missing pattern, misclassified).

"Other" is the negative class throughout: an "Other" prediction is never a
retrieval, and records where both gold and prediction are "Other" are true
negatives that enter no numerator or denominator.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

from .dataset import LabeledPattern
from .depgraph import DependencyGraph, node_key
from .errors import DataError, UserError
from .semindex import (
    OTHER_LABEL,
    Prediction,
    ScoreVector,
    SemanticIndex,
    decide,
    score_candidate,
    score_keys,
)
from .synindex import SyntacticIndex, filter_longest, match_patterns

STAGE_ANCHOR_MISSING = "anchor_missing"
STAGE_NO_PATTERN = "no_pattern"
STAGE_MISCLASSIFIED = "misclassified"
FAILURE_STAGES = (STAGE_ANCHOR_MISSING, STAGE_NO_PATTERN, STAGE_MISCLASSIFIED)

Averaging = Literal["micro", "macro"]
EvalMode = Literal["simulated", "e2e"]


@dataclass(frozen=True)
class EvalRecord:
    gold: str
    predicted: str
    failure_stage: str | None = None

    def __post_init__(self):
        erroneous = self.predicted != self.gold
        if erroneous and self.failure_stage not in FAILURE_STAGES:
            raise DataError(
                f"erroneous record ({self.gold!r} vs {self.predicted!r}) "
                "must carry exactly one failure stage"
            )
        if not erroneous and self.failure_stage is not None:
            raise DataError("correct record must not carry a failure stage")


@dataclass(frozen=True)
class MetricsRow:
    precision: float
    recall: float
    f1: float
    averaging: str
    threshold: float | None = None


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(
    records: Iterable[EvalRecord],
    averaging: Averaging = "micro",
    threshold: float | None = None,
) -> MetricsRow:
    """Compute P/R/F1 treating "Other" as the negative class.

    micro pools TP/FP/FN counts over all relation labels; macro averages
    per-label precision and recall over labels with at least one gold
    instance. In both modes F1 is the harmonic mean of the reported P and R.
    """
    records = list(records)
    if not records:
        raise DataError("cannot evaluate an empty record list")
    if averaging not in ("micro", "macro"):
        raise UserError(f"unknown averaging mode {averaging!r}")
    labels = {r.gold for r in records} | {r.predicted for r in records}
    labels.discard(OTHER_LABEL)
    tp: dict[str, int] = {l: 0 for l in labels}
    fp: dict[str, int] = {l: 0 for l in labels}
    fn: dict[str, int] = {l: 0 for l in labels}
    for r in records:
        if r.predicted != OTHER_LABEL:
            if r.predicted == r.gold:
                tp[r.predicted] += 1
            else:
                fp[r.predicted] += 1
        if r.gold != OTHER_LABEL and r.predicted != r.gold:
            fn[r.gold] += 1
    if averaging == "micro":
        tp_sum, fp_sum, fn_sum = sum(tp.values()), sum(fp.values()), sum(fn.values())
        precision = tp_sum / (tp_sum + fp_sum) if tp_sum + fp_sum else 0.0
        recall = tp_sum / (tp_sum + fn_sum) if tp_sum + fn_sum else 0.0
    else:
        with_gold = sorted(l for l in labels if tp[l] + fn[l] > 0)
        if not with_gold:
            precision = recall = 0.0
        else:
            precisions = [
                tp[l] / (tp[l] + fp[l]) if tp[l] + fp[l] else 0.0 for l in with_gold
            ]
            recalls = [tp[l] / (tp[l] + fn[l]) for l in with_gold]
            precision = sum(precisions) / len(with_gold)
            recall = sum(recalls) / len(with_gold)
    return MetricsRow(
        precision=precision,
        recall=recall,
        f1=_f1(precision, recall),
        averaging=averaging,
        threshold=threshold,
    )


@dataclass(frozen=True)
class SampleScore:
    """Threshold-independent scoring outcome for one evaluation sample."""

    scores: ScoreVector | None
    unscored_stage: str | None = None  # anchor_missing or no_pattern

    def __post_init__(self):
        if (self.scores is None) == (self.unscored_stage is None):
            raise DataError("a sample is either scored or carries an unscored stage")


def score_sample(
    graph: DependencyGraph,
    syn_index: SyntacticIndex,
    sem_index: SemanticIndex,
    mode: EvalMode = "simulated",
) -> SampleScore:
    """Run extraction once for a sample graph; scores are reusable across
    thresholds.

    simulated mode mirrors the evaluation protocol: the syntactic index only
    determines the sample's possible labels, and the sample's own words are
    scored. e2e mode scores each extracted candidate on its own subgraph and
    keeps the best score per property.
    """
    keys = {node_key(n, syn_index.key_mode) for n in graph.nodes}
    if not any(k in syn_index.entries for k in keys):
        return SampleScore(scores=None, unscored_stage=STAGE_ANCHOR_MISSING)
    candidates = filter_longest(match_patterns(syn_index, graph))
    if not candidates:
        return SampleScore(scores=None, unscored_stage=STAGE_NO_PATTERN)
    if mode == "simulated":
        labels = sorted(set().union(*(c.possible_labels for c in candidates)))
        return SampleScore(scores=score_keys(sem_index, keys, labels))
    if mode == "e2e":
        merged: dict[str, float] = {}
        for c in candidates:
            for prop, score in score_candidate(sem_index, c).scores.items():
                if prop not in merged or score > merged[prop]:
                    merged[prop] = score
        return SampleScore(scores=ScoreVector(scores=merged))
    raise UserError(f"unknown evaluation mode {mode!r}")


def predict_from_score(sample: SampleScore, threshold: float) -> Prediction:
    if sample.scores is None:
        return Prediction(label=OTHER_LABEL, score=None)
    return decide(sample.scores, threshold)


def records_at_threshold(
    samples: Iterable[tuple[str, SampleScore]], threshold: float
) -> list[EvalRecord]:
    """Build evaluation records for one threshold, attributing each error to
    the stage where the pipeline lost it."""
    records = []
    for gold, sample in samples:
        predicted = predict_from_score(sample, threshold).label
        if predicted == gold:
            stage = None
        elif sample.unscored_stage is not None:
            stage = sample.unscored_stage
        else:
            stage = STAGE_MISCLASSIFIED
        records.append(EvalRecord(gold=gold, predicted=predicted, failure_stage=stage))
    return records


def threshold_sweep(
    samples: list[tuple[str, SampleScore]],
    thresholds: Iterable[float],
    averaging: Averaging = "micro",
) -> list[MetricsRow]:
    """One metrics row per threshold; scoring is reused, only the decision
    rule is re-applied."""
    thresholds = list(thresholds)
    if sorted(thresholds) != thresholds:
        raise UserError("thresholds must be sorted ascending")
    return [
        evaluate(records_at_threshold(samples, t), averaging=averaging, threshold=t)
        for t in thresholds
    ]


def score_dataset(
    patterns: Iterable[LabeledPattern],
    syn_index: SyntacticIndex,
    sem_index: SemanticIndex,
    mode: EvalMode = "simulated",
) -> list[tuple[str, SampleScore]]:
    """Score every dataset instance once; gold is the instance's label."""
    return [
        (p.primary_label(), score_sample(p.pattern.graph, syn_index, sem_index, mode))
        for p in patterns
    ]


def error_taxonomy(records: Iterable[EvalRecord]) -> dict[str, int]:
    """Counts per failure stage; they partition the erroneous records."""
    counts = {stage: 0 for stage in FAILURE_STAGES}
    erroneous = 0
    for r in records:
        if r.predicted == r.gold:
            continue
        erroneous += 1
        counts[r.failure_stage] += 1
    assert sum(counts.values()) == erroneous, "taxonomy must partition the errors"
    return counts


def write_metrics_tsv(rows: Iterable[MetricsRow], path: "str | Path"):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("threshold\tprecision\trecall\tf1\taveraging\n")
        for row in rows:
            threshold = "" if row.threshold is None else f"{row.threshold:.1f}"
            fh.write(
                f"{threshold}\t{row.precision:.3f}\t{row.recall:.3f}\t"
                f"{row.f1:.3f}\t{row.averaging}\n"
            )


def write_taxonomy_json(counts: dict[str, int], path: "str | Path"):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(counts, fh, ensure_ascii=False, sort_keys=True, indent=1)
        fh.write("\n")
