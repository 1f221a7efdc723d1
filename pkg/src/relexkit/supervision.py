"""Weak labeling of sentences through fuzzy matching of entity designations.

A sentence is labeled with a property when it contains character sequences
similar enough (normalized Levenshtein, default threshold 0.9) to one
source designation and one target designation of a known statement, on
non-overlapping spans. Anything unmatched is labeled "Other".
"""

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .depgraph import DependencyGraph
from .ingest.statements import SentenceRecord, StatementTriple

OTHER_LABEL = "Other"

_WORD = re.compile(r"\w+")


def _fold(s: str) -> str:
    return unicodedata.normalize("NFC", s).casefold()


def levenshtein(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        row = [i]
        for j, cb in enumerate(b, 1):
            cost = 0 if ca == cb else 1
            row.append(min(row[-1] + 1, prev[j] + 1, prev[j - 1] + cost))
        prev = row
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """1 - edit distance / max length, over case-folded NFC text."""
    fa, fb = _fold(a), _fold(b)
    if not fa and not fb:
        return 1.0
    return 1.0 - levenshtein(fa, fb) / max(len(fa), len(fb))


class FuzzySpan(NamedTuple):
    start: int
    end: int
    score: float


def fuzzy_windows(
    sentence: str, designation: str, threshold: float
) -> list[FuzzySpan]:
    """Every token-aligned window at least ``threshold`` similar.

    Candidate windows start and end on word boundaries and their character
    length stays within 20% of the designation's. Sorted best score first,
    then leftmost, then shortest.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    if not designation:
        return []
    tokens = [(m.start(), m.end()) for m in _WORD.finditer(sentence)]
    lo = 0.8 * len(designation)
    hi = 1.2 * len(designation)
    found: list[FuzzySpan] = []
    for i, (start, _) in enumerate(tokens):
        for _, end in tokens[i:]:
            width = end - start
            if width > hi:
                break
            if width < lo:
                continue
            score = similarity(sentence[start:end], designation)
            if score >= threshold:
                found.append(FuzzySpan(start, end, score))
    found.sort(key=lambda s: (-s.score, s.start, s.end))
    return found


def fuzzy_contains(
    sentence: str, designation: str, threshold: float
) -> FuzzySpan | None:
    """Best qualifying window, or None; ties go to the leftmost span."""
    windows = fuzzy_windows(sentence, designation, threshold)
    return windows[0] if windows else None


class SentenceMatch(NamedTuple):
    statement: StatementTriple
    source_span: tuple[int, int]
    target_span: tuple[int, int]


@dataclass(frozen=True)
class WeaklyLabeledSentence:
    sentence: SentenceRecord
    matches: tuple[SentenceMatch, ...]
    labels: frozenset[str]


def _spans(text: str, designations: Iterable[str], threshold: float) -> list[FuzzySpan]:
    found = []
    for d in designations:
        found.extend(fuzzy_windows(text, d, threshold))
    found.sort(key=lambda s: (-s.score, s.start, s.end))
    return found


def _overlaps(a: FuzzySpan, b: FuzzySpan) -> bool:
    return a.start < b.end and b.start < a.end


def label_sentences(
    sentences: Iterable[SentenceRecord],
    statements: Iterable[StatementTriple],
    threshold: float = 0.9,
) -> list[WeaklyLabeledSentence]:
    """Match every sentence against every statement; multi-label allowed.

    A statement matches when some source designation and some target
    designation are both found on non-overlapping spans. Sentences matched
    by nothing get the "Other" label.
    """
    statements = list(statements)
    labeled = []
    for record in sentences:
        matches: list[SentenceMatch] = []
        for st in statements:
            source_spans = _spans(record.text, st.source_designations, threshold)
            if not source_spans:
                continue
            target_spans = _spans(record.text, st.target_designations, threshold)
            pair = next(
                (
                    (s, t)
                    for s in source_spans
                    for t in target_spans
                    if not _overlaps(s, t)
                ),
                None,
            )
            if pair is not None:
                s, t = pair
                matches.append(
                    SentenceMatch(st, (s.start, s.end), (t.start, t.end))
                )
        labels = frozenset(m.statement.property_id for m in matches) or frozenset(
            {OTHER_LABEL}
        )
        labeled.append(WeaklyLabeledSentence(record, tuple(matches), labels))
    return labeled


class GroupMatch(NamedTuple):
    node_id: int
    score: float


def match_node_group_scored(
    g: DependencyGraph, designation: str, threshold: float
) -> GroupMatch | None:
    """Contiguous token group most similar to the designation, with score.

    Returns the group's root: the group-internal node whose head lies
    outside the group (or the sentence root).
    """
    nodes = g.nodes
    best: tuple[float, int, int] | None = None  # score, start index, end index
    for i in range(len(nodes)):
        text = ""
        for j in range(i, len(nodes)):
            text = nodes[j].text if j == i else f"{text} {nodes[j].text}"
            if len(text) > 2 * len(designation) + 8:
                break
            score = similarity(text, designation)
            if score >= threshold and (best is None or score > best[0]):
                best = (score, i, j)
    if best is None:
        return None
    score, i, j = best
    members = {n.node_id for n in nodes[i : j + 1]}
    roots = [
        nid
        for nid in sorted(members)
        if (edge := g.head_edge(nid)) is None or edge.head not in members
    ]
    if not roots:
        roots = sorted(members)
    root = min(roots, key=lambda nid: (g.depth(nid), nid))
    return GroupMatch(root, score)


def match_node_group(
    g: DependencyGraph, designation: str, threshold: float = 0.9
) -> int | None:
    found = match_node_group_scored(g, designation, threshold)
    return found.node_id if found else None
