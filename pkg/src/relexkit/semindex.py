"""Word-by-property TF-IDF weights and harmonic-mean scoring.

Each labeled pattern counts as one document for every property it carries;
its words are the node keys of its graph. Counts become TF-IDF weights per
property row, the matrix is transposed to words-by-properties, and every
nonzero word row is scaled to unit Euclidean norm (so a word seen under a
single property weighs exactly 1.0 there).
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .dataset import LabeledPattern
from .depgraph import KeyMode, KEY_MODES, node_key
from .errors import DataError, IndexFormatError
from .supervision import OTHER_LABEL
from .synindex import CandidateMatch

FORMAT_NAME = "relexkit-semantic-index"
FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class FrequencyMatrix:
    """Raw property-by-word occurrence counts."""

    properties: tuple[str, ...]
    words: tuple[str, ...]
    counts: np.ndarray  # shape (P, W), non-negative integers

    def count(self, prop: str, word: str) -> int:
        return int(
            self.counts[self.properties.index(prop), self.words.index(word)]
        )


def build_frequency_matrix(
    patterns: Iterable[LabeledPattern], key_mode: KeyMode = "lemma"
) -> FrequencyMatrix:
    """Count word occurrences per property over pattern graphs.

    A pattern with several possible labels contributes its counts to every
    one of its property rows.
    """
    patterns = list(patterns)
    if not patterns:
        raise DataError("cannot build a frequency matrix from zero patterns")
    properties = sorted({label for p in patterns for label in p.possible_labels})
    words = sorted(
        {node_key(n, key_mode) for p in patterns for n in p.pattern.graph.nodes}
    )
    prop_index = {p: i for i, p in enumerate(properties)}
    word_index = {w: i for i, w in enumerate(words)}
    counts = np.zeros((len(properties), len(words)), dtype=np.int64)
    for p in patterns:
        for node in p.pattern.graph.nodes:
            wi = word_index[node_key(node, key_mode)]
            for label in p.possible_labels:
                counts[prop_index[label], wi] += 1
    return FrequencyMatrix(
        properties=tuple(properties), words=tuple(words), counts=counts
    )


@dataclass(frozen=True, eq=False)
class SemanticIndex:
    words: tuple[str, ...]
    properties: tuple[str, ...]
    weights: np.ndarray  # shape (W, P), non-negative
    key_mode: KeyMode
    provenance: dict | None = None
    _word_index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_word_index", {w: i for i, w in enumerate(self.words)}
        )

    def structurally_equal(self, other: "SemanticIndex") -> bool:
        return (
            self.words == other.words
            and self.properties == other.properties
            and self.key_mode == other.key_mode
            and np.array_equal(self.weights, other.weights)
        )

    def has_word(self, word: str) -> bool:
        return word in self._word_index

    def weight(self, word: str, prop: str) -> float:
        wi = self._word_index.get(word)
        if wi is None or prop not in self.properties:
            return 0.0
        return float(self.weights[wi, self.properties.index(prop)])

    def validate_norms(self, tolerance: float = 1e-6):
        norms = np.linalg.norm(self.weights, axis=1)
        nonzero = norms > 0
        if not np.allclose(norms[nonzero], 1.0, atol=tolerance, rtol=0):
            worst = float(np.abs(norms[nonzero] - 1.0).max())
            raise DataError(f"word rows are not unit-normalized (max deviation {worst})")


def build_semantic_index(
    freq: FrequencyMatrix,
    key_mode: KeyMode = "lemma",
    provenance: dict | None = None,
) -> SemanticIndex:
    """TF-IDF per property row, transposed, word rows unit-normalized.

    tf is the raw count; idf = ln((1 + P) / (1 + df)) + 1 where df counts
    the property rows in which the word occurs.
    """
    counts = freq.counts.astype(np.float64)
    if counts.size == 0 or not counts.any():
        raise DataError("frequency matrix is all zero; nothing to index")
    n_props = len(freq.properties)
    df = (counts > 0).sum(axis=0)
    idf = np.log((1.0 + n_props) / (1.0 + df)) + 1.0
    tfidf = counts * idf[np.newaxis, :]
    weights = tfidf.T.copy()  # (W, P)
    norms = np.linalg.norm(weights, axis=1)
    nonzero = norms > 0
    weights[nonzero] = weights[nonzero] / norms[nonzero, np.newaxis]
    return SemanticIndex(
        words=freq.words,
        properties=freq.properties,
        weights=weights,
        key_mode=key_mode,
        provenance=provenance,
    )


@dataclass(frozen=True)
class ScoreVector:
    """Per-property semantic scores for one candidate."""

    scores: dict[str, float]

    def best(self) -> tuple[str, float] | None:
        if not self.scores:
            return None
        return min(self.scores.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class Prediction:
    label: str
    score: float | None
    candidate: CandidateMatch | None = None


def harmonic_mean(values: list[float]) -> float:
    """Harmonic mean with the limit convention: any zero makes it zero."""
    if not values:
        return 0.0
    if any(v == 0.0 for v in values):
        return 0.0
    return len(values) / sum(1.0 / v for v in values)


def score_keys(
    index: SemanticIndex, keys: Iterable[str], labels: Iterable[str]
) -> ScoreVector:
    """Scores for the given labels over the candidate words found in the index."""
    known = sorted({k for k in keys if index.has_word(k)})
    if not known:
        return ScoreVector(scores={})
    return ScoreVector(
        scores={
            prop: harmonic_mean([index.weight(w, prop) for w in known])
            for prop in sorted(set(labels))
        }
    )


def score_candidate(index: SemanticIndex, candidate: CandidateMatch) -> ScoreVector:
    keys = {node_key(n, index.key_mode) for n in candidate.subgraph.graph.nodes}
    return score_keys(index, keys, candidate.possible_labels)


def classify(
    index: SemanticIndex, candidate: CandidateMatch, threshold: float
) -> Prediction:
    """Pick the property with the highest score if it strictly exceeds the
    threshold; otherwise "Other". Ties break on property-id order."""
    vector = score_candidate(index, candidate)
    return decide(vector, threshold, candidate)


def decide(
    vector: ScoreVector, threshold: float, candidate: CandidateMatch | None = None
) -> Prediction:
    best = vector.best()
    if best is None:
        return Prediction(label=OTHER_LABEL, score=None, candidate=candidate)
    label, score = best
    if score > threshold:
        return Prediction(label=label, score=score, candidate=candidate)
    return Prediction(label=OTHER_LABEL, score=None, candidate=candidate)


def index_to_dict(index: SemanticIndex) -> dict:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "key_mode": index.key_mode,
        "properties": list(index.properties),
        "words": list(index.words),
        "weights": [[float(x) for x in row] for row in index.weights],
        "provenance": index.provenance or {},
    }


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_index(index: SemanticIndex, path: "str | Path"):
    payload = index_to_dict(index)
    payload["checksum"] = _checksum(payload)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def load_index(path: "str | Path") -> SemanticIndex:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != FORMAT_NAME:
        raise IndexFormatError(f"{path}: not a semantic index file")
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
    weights = np.array(payload["weights"], dtype=np.float64)
    if weights.size == 0:
        weights = weights.reshape((len(payload["words"]), len(payload["properties"])))
    return SemanticIndex(
        words=tuple(payload["words"]),
        properties=tuple(payload["properties"]),
        weights=weights,
        key_mode=key_mode,
        provenance=payload.get("provenance") or None,
    )
