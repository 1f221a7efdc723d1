"""Dependency-graph data model, CoNLL-U I/O, anchors, and shortest paths.

A sentence is a directed labeled graph: nodes are tokens (text, lemma,
universal POS), edges point from syntactic head to dependent and carry the
dependency relation. Well-formed parses are trees with a single root; the
root token has no incoming edge.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, NamedTuple, TextIO

from .errors import (
    AnchorNotUniqueError,
    ConlluParseError,
    GraphStructureError,
    NoPathError,
)

KeyMode = Literal["surface", "lemma"]
KEY_MODES: tuple[str, ...] = ("surface", "lemma")


@dataclass(frozen=True)
class TokenNode:
    """One token of a sentence; ``node_id`` is its 1-based position."""

    node_id: int
    text: str
    lemma: str
    upos: str

    def __post_init__(self):
        if not self.text or not self.lemma or not self.upos:
            raise GraphStructureError(
                f"token {self.node_id}: text, lemma and upos must be non-empty"
            )


class Edge(NamedTuple):
    head: int
    dependent: int
    deprel: str


@dataclass(frozen=True)
class DependencyGraph:
    nodes: tuple[TokenNode, ...]
    edges: frozenset[Edge]
    sentence_text: str = ""
    metadata: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.node_id))
        )
        object.__setattr__(self, "edges", frozenset(Edge(*e) for e in self.edges))
        object.__setattr__(self, "metadata", tuple(self.metadata))
        if not self.sentence_text and self.nodes:
            object.__setattr__(
                self, "sentence_text", " ".join(n.text for n in self.nodes)
            )
        ids = [n.node_id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise GraphStructureError("duplicate node ids in graph")
        known = set(ids)
        for e in self.edges:
            if e.head not in known or e.dependent not in known:
                raise GraphStructureError(
                    f"edge {e} references a node missing from the graph"
                )

    @cached_property
    def _by_id(self) -> dict[int, TokenNode]:
        return {n.node_id: n for n in self.nodes}

    @cached_property
    def _incoming(self) -> dict[int, tuple[Edge, ...]]:
        acc: dict[int, list[Edge]] = {n.node_id: [] for n in self.nodes}
        for e in sorted(self.edges):
            acc[e.dependent].append(e)
        return {k: tuple(v) for k, v in acc.items()}

    @cached_property
    def _outgoing(self) -> dict[int, tuple[Edge, ...]]:
        acc: dict[int, list[Edge]] = {n.node_id: [] for n in self.nodes}
        for e in sorted(self.edges):
            acc[e.head].append(e)
        return {k: tuple(v) for k, v in acc.items()}

    def node(self, node_id: int) -> TokenNode:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise GraphStructureError(f"node id {node_id} not in graph") from None

    def has_node(self, node_id: int) -> bool:
        return node_id in self._by_id

    def children(self, node_id: int) -> tuple[Edge, ...]:
        return self._outgoing.get(node_id, ())

    def head_edge(self, node_id: int) -> Edge | None:
        """The (single, for trees) incoming edge of a node, or None."""
        incoming = self._incoming.get(node_id, ())
        return incoming[0] if incoming else None

    def in_degree(self, node_id: int) -> int:
        return len(self._incoming.get(node_id, ()))

    def roots(self) -> tuple[int, ...]:
        return tuple(
            n.node_id for n in self.nodes if not self._incoming.get(n.node_id)
        )

    def depth(self, node_id: int) -> int:
        """Number of head-edge hops up to a root; robust to head cycles."""
        depth = 0
        seen = {node_id}
        cur = node_id
        while True:
            edge = self.head_edge(cur)
            if edge is None or edge.head in seen:
                return depth
            cur = edge.head
            seen.add(cur)
            depth += 1


@dataclass(frozen=True)
class SDPSubgraph:
    """A path-shaped subgraph carrying the anchor and the two endpoints.

    The anchor is the unique node without incoming edges; every other node
    of the subgraph is reachable from it along the original edge directions.
    """

    graph: DependencyGraph
    anchor: int
    source: int
    target: int

    def __post_init__(self):
        for name in ("anchor", "source", "target"):
            if not self.graph.has_node(getattr(self, name)):
                raise GraphStructureError(f"{name} node is not part of the subgraph")
        if self.graph.in_degree(self.anchor) != 0:
            raise GraphStructureError("anchor must have in-degree 0")
        reachable = {self.anchor}
        frontier = [self.anchor]
        while frontier:
            nxt = []
            for nid in frontier:
                for e in self.graph.children(nid):
                    if e.dependent not in reachable:
                        reachable.add(e.dependent)
                        nxt.append(e.dependent)
            frontier = nxt
        if len(reachable) != len(self.graph.nodes):
            raise GraphStructureError("every node must be reachable from the anchor")
        # Kahn peeling: a directed cycle leaves nodes that never reach
        # in-degree zero
        degrees = {n.node_id: self.graph.in_degree(n.node_id) for n in self.graph.nodes}
        queue = [nid for nid, d in degrees.items() if d == 0]
        removed = 0
        while queue:
            nid = queue.pop()
            removed += 1
            for e in self.graph.children(nid):
                degrees[e.dependent] -= 1
                if degrees[e.dependent] == 0:
                    queue.append(e.dependent)
        if removed != len(self.graph.nodes):
            raise GraphStructureError("subgraph must be acyclic")


def node_key(node: TokenNode, mode: KeyMode = "lemma") -> str:
    """Node label used for indexing: ``<form>_<UPOS>``.

    ``lemma`` mode keys on the lemma, ``surface`` on the written form.
    """
    if mode == "lemma":
        form = node.lemma
    elif mode == "surface":
        form = node.text
    else:
        raise ValueError(f"unknown key mode {mode!r}; expected one of {KEY_MODES}")
    return f"{form}_{node.upos}"


def keys_by_node(graph: DependencyGraph, mode: KeyMode = "lemma") -> dict[int, str]:
    return {n.node_id: node_key(n, mode) for n in graph.nodes}


def anchor_of(g: "DependencyGraph | SDPSubgraph") -> int:
    """The unique node with in-degree 0.

    Raises AnchorNotUniqueError when there are zero or several such nodes
    (malformed parses are rejected, not guessed at).
    """
    graph = g.graph if isinstance(g, SDPSubgraph) else g
    if not graph.nodes:
        raise GraphStructureError("empty graph has no anchor")
    roots = graph.roots()
    if len(roots) != 1:
        raise AnchorNotUniqueError(
            f"expected exactly one in-degree-0 node, found {len(roots)}: {list(roots)}"
        )
    return roots[0]


def shortest_dependency_path(
    g: DependencyGraph, source: int, target: int
) -> SDPSubgraph:
    """Extract the path between two tokens of one sentence graph.

    The path is computed on the undirected view (the relation climbs to a
    common ancestor and back down); the returned subgraph keeps the original
    edge directions and labels. Raises NoPathError when the endpoints are in
    different connected components.
    """
    for nid in (source, target):
        if not g.has_node(nid):
            raise GraphStructureError(f"node id {nid} not in graph")
    if source == target:
        sub = DependencyGraph(
            nodes=(g.node(source),), edges=frozenset(), sentence_text=g.sentence_text
        )
        return SDPSubgraph(graph=sub, anchor=source, source=source, target=target)

    neighbors: dict[int, list[int]] = {n.node_id: [] for n in g.nodes}
    for e in g.edges:
        neighbors[e.head].append(e.dependent)
        neighbors[e.dependent].append(e.head)
    for lst in neighbors.values():
        lst.sort()

    prev: dict[int, int] = {source: source}
    frontier = [source]
    while frontier and target not in prev:
        nxt = []
        for nid in frontier:
            for nb in neighbors[nid]:
                if nb not in prev:
                    prev[nb] = nid
                    nxt.append(nb)
        frontier = nxt
    if target not in prev:
        raise NoPathError(f"no path between nodes {source} and {target}")

    path = [target]
    while path[-1] != source:
        path.append(prev[path[-1]])
    on_path = set(path)
    consecutive = {frozenset(pair) for pair in zip(path, path[1:])}
    path_edges = {
        e
        for e in g.edges
        if e.head in on_path
        and e.dependent in on_path
        and frozenset((e.head, e.dependent)) in consecutive
    }
    sub = DependencyGraph(
        nodes=tuple(g.node(nid) for nid in on_path),
        edges=frozenset(path_edges),
        sentence_text=g.sentence_text,
    )
    return SDPSubgraph(graph=sub, anchor=anchor_of(sub), source=source, target=target)


_ID_RANGE = re.compile(r"^\d+-\d+$")
_EMPTY_NODE = re.compile(r"^\d+\.\d+$")
_TEXT_COMMENT = re.compile(r"^#\s*text\s*=\s*(.*)$")


def parse_conllu(source: "str | TextIO") -> list[DependencyGraph]:
    """Parse a CoNLL-U document into one graph per sentence block.

    Multiword-token ranges ("1-2") and empty nodes ("1.1") are skipped;
    HEAD=0 rows become the root (no incoming edge); comment lines are kept
    as graph metadata. Comment-only blocks produce no graph.
    """
    text = source if isinstance(source, str) else source.read()
    graphs: list[DependencyGraph] = []
    comments: list[str] = []
    rows: list[tuple[int, int, str, str, str, int, str]] = []

    def flush():
        nonlocal comments, rows
        if rows:
            graphs.append(_build_graph(comments, rows))
        comments, rows = [], []

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(
                f"line {line_no}: expected 10 tab-separated columns, found {len(cols)}",
                line=line_no,
            )
        raw_id = cols[0]
        if _ID_RANGE.match(raw_id) or _EMPTY_NODE.match(raw_id):
            continue
        if not raw_id.isdigit():
            raise ConlluParseError(
                f"line {line_no}: token id {raw_id!r} is not an integer", line=line_no
            )
        raw_head = cols[6]
        if not raw_head.isdigit():
            raise ConlluParseError(
                f"line {line_no}: head {raw_head!r} is not an integer", line=line_no
            )
        for col_name, value in (("form", cols[1]), ("lemma", cols[2]), ("upos", cols[3])):
            if not value:
                raise ConlluParseError(
                    f"line {line_no}: empty {col_name} column", line=line_no
                )
        rows.append(
            (line_no, int(raw_id), cols[1], cols[2], cols[3], int(raw_head), cols[7])
        )
    flush()
    return graphs


def _build_graph(
    comments: list[str], rows: list[tuple[int, int, str, str, str, int, str]]
) -> DependencyGraph:
    ids = {row[1] for row in rows}
    nodes = []
    edges = []
    for line_no, tid, form, lemma, upos, head, deprel in rows:
        nodes.append(TokenNode(node_id=tid, text=form, lemma=lemma, upos=upos))
        if head == 0:
            continue
        if head not in ids:
            raise GraphStructureError(
                f"line {line_no}: head {head} references a missing token id"
            )
        edges.append(Edge(head=head, dependent=tid, deprel=deprel))
    sentence_text = ""
    for comment in comments:
        m = _TEXT_COMMENT.match(comment)
        if m:
            sentence_text = m.group(1)
            break
    if not sentence_text:
        sentence_text = " ".join(row[2] for row in rows)
    return DependencyGraph(
        nodes=tuple(nodes),
        edges=frozenset(edges),
        sentence_text=sentence_text,
        metadata=tuple(comments),
    )


def to_conllu(graph: DependencyGraph) -> str:
    """Serialize a graph back to CoNLL-U (unstored columns become "_").

    parse_conllu(to_conllu(g)) reconstructs a graph equal to ``g``.
    """
    lines = list(graph.metadata)
    for n in graph.nodes:
        incoming = graph._incoming.get(n.node_id, ())
        if len(incoming) > 1:
            raise GraphStructureError(
                f"node {n.node_id} has several heads; not serializable to CoNLL-U"
            )
        head = incoming[0].head if incoming else 0
        deprel = incoming[0].deprel if incoming else "root"
        lines.append(
            "\t".join(
                (str(n.node_id), n.text, n.lemma, n.upos, "_", "_", str(head), deprel, "_", "_")
            )
        )
    return "\n".join(lines) + "\n"


def serialize_conllu(graphs: Iterable[DependencyGraph]) -> str:
    return "\n".join(to_conllu(g) for g in graphs)
