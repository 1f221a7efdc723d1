"""Label-sensitive isomorphism and anchored embedding over pattern graphs.

Two pattern graphs are considered duplicates when a bijection between their
node sets preserves node labels (the configured node key), edge adjacency,
edge direction, and edge labels. Graphs here are tiny (path subgraphs of
single sentences), so a cheap signature comparison followed by backtracking
on collisions is all that is needed.
"""

from .depgraph import DependencyGraph, Edge, KeyMode, SDPSubgraph, keys_by_node

GraphLike = DependencyGraph | SDPSubgraph


def _as_graph(g: GraphLike) -> DependencyGraph:
    return g.graph if isinstance(g, SDPSubgraph) else g


def graph_signature(g: GraphLike, key_mode: KeyMode = "lemma") -> tuple:
    """Order-independent fingerprint; unequal signatures cannot be isomorphic."""
    graph = _as_graph(g)
    labels = keys_by_node(graph, key_mode)
    node_profile = sorted(
        (labels[n.node_id], graph.in_degree(n.node_id), len(graph.children(n.node_id)))
        for n in graph.nodes
    )
    edge_profile = sorted(
        (labels[e.head], e.deprel, labels[e.dependent]) for e in graph.edges
    )
    return (len(graph.nodes), len(graph.edges), tuple(node_profile), tuple(edge_profile))


def _edges_between(graph: DependencyGraph, a: int, b: int) -> frozenset[tuple[str, str]]:
    found = set()
    for e in graph.children(a):
        if e.dependent == b:
            found.add(("out", e.deprel))
    for e in graph.children(b):
        if e.dependent == a:
            found.add(("in", e.deprel))
    return frozenset(found)


def _connectivity_order(graph: DependencyGraph) -> list[int]:
    """Visit order that keeps each new node adjacent to an already-visited one."""
    remaining = {n.node_id for n in graph.nodes}
    neighbors: dict[int, set[int]] = {n.node_id: set() for n in graph.nodes}
    for e in graph.edges:
        neighbors[e.head].add(e.dependent)
        neighbors[e.dependent].add(e.head)
    order: list[int] = []
    while remaining:
        frontier = [min(remaining)]
        remaining.discard(frontier[0])
        while frontier:
            nid = frontier.pop(0)
            order.append(nid)
            for nb in sorted(neighbors[nid]):
                if nb in remaining:
                    remaining.discard(nb)
                    frontier.append(nb)
    return order


def are_isomorphic(g1: GraphLike, g2: GraphLike, key_mode: KeyMode = "lemma") -> bool:
    """True iff a node bijection preserves labels, edges, directions, deprels."""
    a, b = _as_graph(g1), _as_graph(g2)
    if graph_signature(a, key_mode) != graph_signature(b, key_mode):
        return False
    return _find_bijection(a, b, key_mode) is not None


def _find_bijection(
    a: DependencyGraph, b: DependencyGraph, key_mode: KeyMode
) -> dict[int, int] | None:
    labels_a = keys_by_node(a, key_mode)
    labels_b = keys_by_node(b, key_mode)
    order = _connectivity_order(a)
    b_ids = [n.node_id for n in b.nodes]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def compatible(na: int, nb: int) -> bool:
        if labels_a[na] != labels_b[nb]:
            return False
        if a.in_degree(na) != b.in_degree(nb):
            return False
        if len(a.children(na)) != len(b.children(nb)):
            return False
        for prev_a, prev_b in mapping.items():
            if _edges_between(a, na, prev_a) != _edges_between(b, nb, prev_b):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        na = order[i]
        for nb in b_ids:
            if nb in used or not compatible(na, nb):
                continue
            mapping[na] = nb
            used.add(nb)
            if extend(i + 1):
                return True
            del mapping[na]
            used.discard(nb)
        return False

    return mapping if extend(0) else None


def find_anchored_embeddings(
    pattern: SDPSubgraph,
    graph: DependencyGraph,
    at_node: int,
    key_mode: KeyMode = "lemma",
) -> list[dict[int, int]]:
    """All injective embeddings of ``pattern`` into ``graph`` whose anchor
    maps to ``at_node``.

    An embedding preserves node keys and maps every pattern edge onto a
    graph edge with the same direction and deprel; extra edges of the host
    graph are irrelevant.
    """
    pg = pattern.graph
    plabels = keys_by_node(pg, key_mode)
    glabels = keys_by_node(graph, key_mode)
    if glabels.get(at_node) != plabels[pattern.anchor]:
        return []

    # BFS from the anchor: every non-anchor node is reached through one of
    # its incoming pattern edges, which constrains the candidates in the host.
    order: list[tuple[int, int, str]] = []
    seen = {pattern.anchor}
    frontier = [pattern.anchor]
    while frontier:
        nxt = []
        for nid in frontier:
            for e in sorted(pg.children(nid)):
                if e.dependent not in seen:
                    seen.add(e.dependent)
                    order.append((e.dependent, nid, e.deprel))
                    nxt.append(e.dependent)
        frontier = nxt

    results: list[dict[int, int]] = []
    mapping = {pattern.anchor: at_node}
    used = {at_node}

    def extend(i: int):
        if i == len(order):
            for e in pg.edges:
                if Edge(mapping[e.head], mapping[e.dependent], e.deprel) not in graph.edges:
                    return
            results.append(dict(mapping))
            return
        pnode, pparent, deprel = order[i]
        for edge in graph.children(mapping[pparent]):
            cand = edge.dependent
            if edge.deprel != deprel or cand in used:
                continue
            if glabels[cand] != plabels[pnode]:
                continue
            mapping[pnode] = cand
            used.add(cand)
            extend(i + 1)
            del mapping[pnode]
            used.discard(cand)

    extend(0)
    return results
