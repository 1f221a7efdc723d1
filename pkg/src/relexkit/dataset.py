"""Labeled pattern datasets: extraction from weakly labeled sentences,
train/dev/test splitting, JSON-lines persistence, and review-based curation.
"""

import json
import logging
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .depgraph import (
    DependencyGraph,
    Edge,
    SDPSubgraph,
    TokenNode,
    anchor_of,
    shortest_dependency_path,
)
from .errors import AnchorNotUniqueError, NoPathError
from .supervision import OTHER_LABEL, WeaklyLabeledSentence, match_node_group_scored

log = logging.getLogger(__name__)

DISCARD_NO_PARSE = "no_parse"
DISCARD_NO_SOURCE_NODE = "no_source_node"
DISCARD_NO_TARGET_NODE = "no_target_node"
DISCARD_SAME_NODE = "source_target_identical"
DISCARD_NO_PATH = "no_path"
DISCARD_ANCHOR_NOT_UNIQUE = "anchor_not_unique"


@dataclass(frozen=True)
class LabeledPattern:
    """An extraction pattern: an anchored subgraph plus its possible labels."""

    pattern: SDPSubgraph
    possible_labels: frozenset[str]
    ambiguous: bool
    size: int

    def __post_init__(self):
        if self.ambiguous != (len(self.possible_labels) > 1):
            raise ValueError("ambiguous flag inconsistent with label count")
        if self.size != len(self.pattern.graph.edges):
            raise ValueError("size must equal the pattern's edge count")

    @classmethod
    def make(cls, pattern: SDPSubgraph, labels: Iterable[str]) -> "LabeledPattern":
        label_set = frozenset(labels)
        if not label_set:
            raise ValueError("a pattern needs at least one label")
        return cls(
            pattern=pattern,
            possible_labels=label_set,
            ambiguous=len(label_set) > 1,
            size=len(pattern.graph.edges),
        )

    def primary_label(self) -> str:
        return min(self.possible_labels)


@dataclass
class SdpDatasetResult:
    patterns: list[LabeledPattern]
    discards: Counter
    attempted: int


def _best_group(graph, designations, threshold):
    best = None
    for d in designations:
        found = match_node_group_scored(graph, d, threshold)
        if found and (best is None or found.score > best.score):
            best = found
    return best


def build_sdp_dataset(
    labeled: Iterable[WeaklyLabeledSentence],
    graphs: Mapping[str, DependencyGraph],
    threshold: float = 0.9,
) -> SdpDatasetResult:
    """One pattern per (sentence, matched statement) with resolvable endpoints.

    Source and target tokens are located by fuzzy-matching the statement's
    designations against node groups; the path between their group roots
    becomes the pattern. "Other" sentences skip path extraction and carry
    their whole sentence graph. Failed instances are dropped and counted,
    so discarded + emitted always equals attempted.
    """
    patterns: list[LabeledPattern] = []
    discards: Counter = Counter()
    attempted = 0
    for wls in labeled:
        graph = graphs.get(wls.sentence.text)
        if not wls.matches:
            attempted += 1
            if graph is None:
                discards[DISCARD_NO_PARSE] += 1
                continue
            try:
                root = anchor_of(graph)
            except AnchorNotUniqueError:
                discards[DISCARD_ANCHOR_NOT_UNIQUE] += 1
                continue
            sub = SDPSubgraph(graph=graph, anchor=root, source=root, target=root)
            patterns.append(LabeledPattern.make(sub, {OTHER_LABEL}))
            continue
        for match in wls.matches:
            attempted += 1
            if graph is None:
                discards[DISCARD_NO_PARSE] += 1
                continue
            st = match.statement
            source = _best_group(graph, st.source_designations, threshold)
            if source is None:
                discards[DISCARD_NO_SOURCE_NODE] += 1
                continue
            target = _best_group(graph, st.target_designations, threshold)
            if target is None:
                discards[DISCARD_NO_TARGET_NODE] += 1
                continue
            if source.node_id == target.node_id:
                discards[DISCARD_SAME_NODE] += 1
                continue
            try:
                sub = shortest_dependency_path(graph, source.node_id, target.node_id)
            except NoPathError:
                discards[DISCARD_NO_PATH] += 1
                continue
            except AnchorNotUniqueError:
                discards[DISCARD_ANCHOR_NOT_UNIQUE] += 1
                continue
            patterns.append(LabeledPattern.make(sub, {st.property_id}))
    return SdpDatasetResult(patterns=patterns, discards=discards, attempted=attempted)


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[LabeledPattern, ...]
    dev: tuple[LabeledPattern, ...]
    test: tuple[LabeledPattern, ...]
    seed: int
    ratios: tuple[float, float, float]


def split_dataset(
    patterns: Iterable[LabeledPattern],
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> DatasetSplit:
    """Deterministic shuffled split, stratified by label.

    "Other" instances never land in train (the indices are built to
    recognize specific properties); dev and test keep them.
    """
    if abs(sum(ratios) - 1.0) > 1e-9 or any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative and sum to 1, got {ratios}")
    groups: dict[str, list[LabeledPattern]] = {}
    for p in patterns:
        groups.setdefault(p.primary_label(), []).append(p)
    rng = random.Random(seed)
    train: list[LabeledPattern] = []
    dev: list[LabeledPattern] = []
    test: list[LabeledPattern] = []
    r_train, r_dev, r_test = ratios
    for label in sorted(groups):
        bucket = list(groups[label])
        rng.shuffle(bucket)
        n = len(bucket)
        if 0 < n < 3:
            log.warning(
                "label %s has only %d instance(s); stratification not guaranteed",
                label, n,
            )
        if label == OTHER_LABEL:
            eval_total = r_dev + r_test
            n_dev = round(n * (r_dev / eval_total)) if eval_total > 0 else 0
            dev.extend(bucket[:n_dev])
            test.extend(bucket[n_dev:])
            continue
        n_train = min(n, round(n * r_train))
        n_dev = min(n - n_train, round(n * r_dev))
        train.extend(bucket[:n_train])
        dev.extend(bucket[n_train : n_train + n_dev])
        test.extend(bucket[n_train + n_dev :])
    return DatasetSplit(
        train=tuple(train), dev=tuple(dev), test=tuple(test), seed=seed, ratios=ratios
    )


def pattern_to_dict(p: LabeledPattern) -> dict:
    g = p.pattern.graph
    return {
        "labels": sorted(p.possible_labels),
        "ambiguous": p.ambiguous,
        "size": p.size,
        "anchor": p.pattern.anchor,
        "source": p.pattern.source,
        "target": p.pattern.target,
        "sentence": g.sentence_text,
        "nodes": [
            {"id": n.node_id, "text": n.text, "lemma": n.lemma, "upos": n.upos}
            for n in g.nodes
        ],
        "edges": [
            {"head": e.head, "dep": e.dependent, "deprel": e.deprel}
            for e in sorted(g.edges)
        ],
    }


def pattern_from_dict(row: dict) -> LabeledPattern:
    graph = DependencyGraph(
        nodes=tuple(
            TokenNode(n["id"], n["text"], n["lemma"], n["upos"]) for n in row["nodes"]
        ),
        edges=frozenset(
            Edge(e["head"], e["dep"], e["deprel"]) for e in row["edges"]
        ),
        sentence_text=row.get("sentence", ""),
    )
    sub = SDPSubgraph(
        graph=graph, anchor=row["anchor"], source=row["source"], target=row["target"]
    )
    return LabeledPattern.make(sub, row["labels"])


def write_patterns(patterns: Iterable[LabeledPattern], path: "str | Path"):
    with open(path, "w", encoding="utf-8") as fh:
        for p in patterns:
            fh.write(json.dumps(pattern_to_dict(p), ensure_ascii=False, sort_keys=True) + "\n")


def read_patterns(path: "str | Path") -> list[LabeledPattern]:
    patterns = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                patterns.append(pattern_from_dict(json.loads(line)))
    return patterns


def write_review_template(patterns: Iterable[LabeledPattern], path: "str | Path"):
    """Review file for ground-truth curation: flip "keep" to "drop" by hand."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, p in enumerate(patterns):
            fh.write(
                json.dumps(
                    {
                        "index": i,
                        "sentence": p.pattern.graph.sentence_text,
                        "labels": sorted(p.possible_labels),
                        "verdict": "keep",
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def apply_review(
    patterns: list[LabeledPattern], path: "str | Path"
) -> list[LabeledPattern]:
    """Keep only instances whose review verdict is "keep"."""
    verdicts: dict[int, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                verdicts[row["index"]] = row.get("verdict", "keep")
    return [p for i, p in enumerate(patterns) if verdicts.get(i, "keep") == "keep"]
