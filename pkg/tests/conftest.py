import random
from pathlib import Path

import pytest

from relexkit.depgraph import DependencyGraph, Edge, TokenNode

FIXTURES = Path(__file__).parent / "fixtures"


def make_node(node_id: int, form: str, lemma: str | None = None, upos: str = "NOUN"):
    return TokenNode(node_id=node_id, text=form, lemma=lemma or form, upos=upos)


def make_graph(tokens, edges, sentence_text=""):
    """tokens: list of (id, form[, lemma[, upos]]); edges: list of (head, dep, deprel)."""
    nodes = []
    for spec in tokens:
        node_id, form = spec[0], spec[1]
        lemma = spec[2] if len(spec) > 2 else form
        upos = spec[3] if len(spec) > 3 else "NOUN"
        nodes.append(TokenNode(node_id=node_id, text=form, lemma=lemma, upos=upos))
    return DependencyGraph(
        nodes=tuple(nodes),
        edges=frozenset(Edge(*e) for e in edges),
        sentence_text=sentence_text,
    )


DEPRELS = ("nsubj", "obj", "obl", "nmod", "case", "det", "amod", "aux")
FORMS = ("alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta")
UPOS = ("NOUN", "VERB", "PROPN", "ADP")


def random_tree(rng: random.Random, max_nodes: int = 12, min_nodes: int = 1):
    """Random labeled tree with root node 1; edges point head -> dependent."""
    n = rng.randint(min_nodes, max_nodes)
    tokens = []
    edges = []
    for node_id in range(1, n + 1):
        form = rng.choice(FORMS)
        tokens.append((node_id, form, form, rng.choice(UPOS)))
        if node_id > 1:
            head = rng.randint(1, node_id - 1)
            edges.append((head, node_id, rng.choice(DEPRELS)))
    return make_graph(tokens, edges)


@pytest.fixture
def fig2_graph():
    """Jeanne d'Arc est née à Domrémy: the root analysis puts the verb
    above both name and place."""
    return make_graph(
        [
            (1, "Jeanne", "Jeanne", "PROPN"),
            (2, "d'", "de", "ADP"),
            (3, "Arc", "Arc", "PROPN"),
            (4, "est", "être", "AUX"),
            (5, "née", "naître", "VERB"),
            (6, "à", "à", "ADP"),
            (7, "Domrémy", "Domrémy", "PROPN"),
        ],
        [
            (5, 1, "nsubj"),
            (1, 3, "nmod"),
            (3, 2, "case"),
            (5, 4, "aux:tense"),
            (5, 7, "obl:arg"),
            (7, 6, "case"),
        ],
        sentence_text="Jeanne d'Arc est née à Domrémy",
    )
