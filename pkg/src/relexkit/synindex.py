"""Anchor-keyed store of deduplicated morpho-syntactic extraction patterns.

Patterns are grouped under the node key of their anchor. Within one entry,
isomorphic duplicates are merged: the retained pattern absorbs the
duplicate's possible labels and is flagged ambiguous when it ends up with
more than one.
"""

import hashlib
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .dataset import LabeledPattern, pattern_from_dict, pattern_to_dict
from .depgraph import DependencyGraph, Edge, KeyMode, KEY_MODES, SDPSubgraph, node_key
from .errors import IndexFormatError, KeyModeMismatchError
from .isomorphism import are_isomorphic, find_anchored_embeddings

FORMAT_NAME = "relexkit-syntactic-index"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class IndexStats:
    unique_anchors: int
    unique_patterns: int
    ambiguous_patterns: int

    @property
    def mean_patterns_per_anchor(self) -> Fraction:
        if self.unique_anchors == 0:
            return Fraction(0)
        return Fraction(self.unique_patterns, self.unique_anchors)


@dataclass(frozen=True)
class IndexedPattern:
    pattern_id: int
    pattern: LabeledPattern


@dataclass(frozen=True)
class SyntacticIndex:
    entries: dict[str, tuple[IndexedPattern, ...]]
    key_mode: KeyMode
    stats: IndexStats
    provenance: dict | None = None

    def all_patterns(self) -> list[IndexedPattern]:
        return [ip for key in sorted(self.entries) for ip in self.entries[key]]


def build_syntactic_index(
    patterns: Iterable[LabeledPattern],
    key_mode: KeyMode = "lemma",
    provenance: dict | None = None,
) -> SyntacticIndex:
    """Group patterns by anchor key and merge isomorphic duplicates.

    Building from any permutation of the same pattern multiset yields the
    same stats and the same per-entry label sets.
    """
    buckets: dict[str, list[LabeledPattern]] = {}
    for p in patterns:
        anchor_node = p.pattern.graph.node(p.pattern.anchor)
        buckets.setdefault(node_key(anchor_node, key_mode), []).append(p)

    entries: dict[str, tuple[IndexedPattern, ...]] = {}
    next_id = 0
    ambiguous = 0
    total = 0
    for key in sorted(buckets):
        retained: list[LabeledPattern] = []
        for candidate in buckets[key]:
            for i, kept in enumerate(retained):
                if are_isomorphic(candidate.pattern, kept.pattern, key_mode):
                    merged = kept.possible_labels | candidate.possible_labels
                    retained[i] = replace(
                        kept, possible_labels=merged, ambiguous=len(merged) > 1
                    )
                    break
            else:
                retained.append(candidate)
        indexed = []
        for p in retained:
            indexed.append(IndexedPattern(pattern_id=next_id, pattern=p))
            next_id += 1
            total += 1
            if p.ambiguous:
                ambiguous += 1
        entries[key] = tuple(indexed)
    stats = IndexStats(
        unique_anchors=len(entries),
        unique_patterns=total,
        ambiguous_patterns=ambiguous,
    )
    return SyntacticIndex(
        entries=entries, key_mode=key_mode, stats=stats, provenance=provenance
    )


@dataclass(frozen=True)
class CandidateMatch:
    """A pattern embedding instantiated over a target sentence's nodes."""

    subgraph: SDPSubgraph
    matched_pattern: IndexedPattern
    possible_labels: frozenset[str]
    node_set: frozenset[int]


def match_patterns(index: SyntacticIndex, g: DependencyGraph) -> list[CandidateMatch]:
    """Apply every pattern whose anchor key occurs in the graph.

    Each successful label-preserving embedding (same node keys, edge labels
    and directions, anchored at the triggering node) yields one candidate.
    """
    candidates: list[CandidateMatch] = []
    for node in g.nodes:
        entry = index.entries.get(node_key(node, index.key_mode))
        if not entry:
            continue
        for indexed in entry:
            sub = indexed.pattern.pattern
            for mapping in find_anchored_embeddings(
                sub, g, node.node_id, index.key_mode
            ):
                mapped_edges = frozenset(
                    Edge(mapping[e.head], mapping[e.dependent], e.deprel)
                    for e in sub.graph.edges
                )
                instantiated = DependencyGraph(
                    nodes=tuple(g.node(nid) for nid in mapping.values()),
                    edges=mapped_edges,
                    sentence_text=g.sentence_text,
                )
                candidates.append(
                    CandidateMatch(
                        subgraph=SDPSubgraph(
                            graph=instantiated,
                            anchor=node.node_id,
                            source=mapping[sub.source],
                            target=mapping[sub.target],
                        ),
                        matched_pattern=indexed,
                        possible_labels=indexed.pattern.possible_labels,
                        node_set=frozenset(mapping.values()),
                    )
                )
    return candidates


def filter_longest(candidates: list[CandidateMatch]) -> list[CandidateMatch]:
    """Keep only maximal candidates under node-set inclusion.

    Strict subsets of another candidate are dropped; among candidates with
    equal node sets the lowest pattern id wins.
    """
    by_nodes: dict[frozenset[int], CandidateMatch] = {}
    for c in candidates:
        kept = by_nodes.get(c.node_set)
        if kept is None or c.matched_pattern.pattern_id < kept.matched_pattern.pattern_id:
            by_nodes[c.node_set] = c
    unique = list(by_nodes.values())
    survivors = [
        c
        for c in unique
        if not any(c.node_set < other.node_set for other in unique)
    ]
    survivors.sort(
        key=lambda c: (min(c.node_set), max(c.node_set), c.matched_pattern.pattern_id)
    )
    return survivors


def index_to_dict(index: SyntacticIndex) -> dict:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "key_mode": index.key_mode,
        "stats": {
            "unique_anchors": index.stats.unique_anchors,
            "unique_patterns": index.stats.unique_patterns,
            "ambiguous_patterns": index.stats.ambiguous_patterns,
        },
        "provenance": index.provenance or {},
        "entries": {
            key: [
                {"pattern_id": ip.pattern_id, **pattern_to_dict(ip.pattern)}
                for ip in index.entries[key]
            ]
            for key in sorted(index.entries)
        },
    }


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_index(index: SyntacticIndex, path: "str | Path"):
    payload = index_to_dict(index)
    payload["checksum"] = _checksum(payload)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True, indent=1)
        fh.write("\n")


def load_index(path: "str | Path") -> SyntacticIndex:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != FORMAT_NAME:
        raise IndexFormatError(f"{path}: not a syntactic index file")
    if payload.get("version") != FORMAT_VERSION:
        raise IndexFormatError(
            f"{path}: unsupported version {payload.get('version')!r}; "
            f"expected {FORMAT_VERSION}"
        )
    stored_checksum = payload.pop("checksum", None)
    if stored_checksum != _checksum(payload):
        raise IndexFormatError(f"{path}: checksum mismatch, file is corrupt")
    key_mode = payload["key_mode"]
    if key_mode not in KEY_MODES:
        raise IndexFormatError(f"{path}: unknown key mode {key_mode!r}")
    entries: dict[str, tuple[IndexedPattern, ...]] = {}
    total = 0
    ambiguous = 0
    for key, rows in payload["entries"].items():
        indexed = tuple(
            IndexedPattern(pattern_id=row["pattern_id"], pattern=pattern_from_dict(row))
            for row in rows
        )
        entries[key] = indexed
        total += len(indexed)
        ambiguous += sum(1 for ip in indexed if ip.pattern.ambiguous)
    stats = IndexStats(
        unique_anchors=len(entries),
        unique_patterns=total,
        ambiguous_patterns=ambiguous,
    )
    stored = payload["stats"]
    if (
        stored["unique_anchors"] != stats.unique_anchors
        or stored["unique_patterns"] != stats.unique_patterns
        or stored["ambiguous_patterns"] != stats.ambiguous_patterns
    ):
        raise IndexFormatError(f"{path}: stored stats disagree with entries")
    return SyntacticIndex(
        entries=entries,
        key_mode=key_mode,
        stats=stats,
        provenance=payload.get("provenance") or None,
    )


def ensure_key_mode(index_mode: str, configured: str, what: str):
    if index_mode != configured:
        raise KeyModeMismatchError(
            f"{what} was built with key_mode={index_mode!r} but the pipeline is "
            f"configured with key_mode={configured!r}"
        )
