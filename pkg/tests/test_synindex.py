import random

import pytest

from relexkit.dataset import LabeledPattern
from relexkit.depgraph import SDPSubgraph, anchor_of, shortest_dependency_path
from relexkit.errors import IndexFormatError, KeyModeMismatchError
from relexkit.isomorphism import are_isomorphic
from relexkit.synindex import (
    build_syntactic_index,
    ensure_key_mode,
    filter_longest,
    load_index,
    match_patterns,
    save_index,
)

from .conftest import make_graph


def path_pattern(labels, tokens, edges, source, target):
    g = make_graph(tokens, edges)
    return LabeledPattern.make(
        SDPSubgraph(graph=g, anchor=anchor_of(g), source=source, target=target), labels
    )


def birth_pattern(labels, shift=0, deprel_obl="obl"):
    s = shift
    return path_pattern(
        labels,
        [
            (1 + s, "née", "naître", "VERB"),
            (2 + s, "Jeanne", "Jeanne", "PROPN"),
            (3 + s, "Domrémy", "Domrémy", "PROPN"),
        ],
        [(1 + s, 2 + s, "nsubj"), (1 + s, 3 + s, deprel_obl)],
        source=2 + s,
        target=3 + s,
    )


class TestBuildSyntacticIndex:
    def test_isomorphic_duplicates_merge_labels(self):
        index = build_syntactic_index(
            [birth_pattern({"P19"}), birth_pattern({"P569"}, shift=10)], "lemma"
        )
        assert index.stats.unique_anchors == 1
        assert index.stats.unique_patterns == 1
        assert index.stats.ambiguous_patterns == 1
        (entry,) = index.entries.values()
        assert entry[0].pattern.possible_labels == frozenset({"P19", "P569"})
        assert entry[0].pattern.ambiguous

    def test_non_isomorphic_patterns_kept_apart(self):
        index = build_syntactic_index(
            [birth_pattern({"P19"}), birth_pattern({"P19"}, deprel_obl="obl:arg")],
            "lemma",
        )
        assert index.stats.unique_patterns == 2
        assert index.stats.ambiguous_patterns == 0
        assert index.stats.unique_anchors == 1
        assert index.stats.mean_patterns_per_anchor == 2

    def test_entry_key_matches_anchor_key(self):
        index = build_syntactic_index([birth_pattern({"P19"})], "lemma")
        assert set(index.entries) == {"naître_VERB"}
        surface = build_syntactic_index([birth_pattern({"P19"})], "surface")
        assert set(surface.entries) == {"née_VERB"}

    def test_permutation_invariance(self):
        rng = random.Random(17)
        base = [
            birth_pattern({"P19"}),
            birth_pattern({"P569"}, shift=5),
            birth_pattern({"P19"}, deprel_obl="obl:arg"),
            path_pattern(
                {"P26"},
                [(1, "épousa", "épouser", "VERB"), (2, "il", "il", "PRON")],
                [(1, 2, "nsubj")],
                source=2,
                target=1,
            ),
        ]
        reference = build_syntactic_index(base, "lemma")
        for _ in range(10):
            shuffled = base[:]
            rng.shuffle(shuffled)
            index = build_syntactic_index(shuffled, "lemma")
            assert index.stats == reference.stats
            for key in reference.entries:
                ref_labels = sorted(
                    sorted(ip.pattern.possible_labels) for ip in reference.entries[key]
                )
                got_labels = sorted(
                    sorted(ip.pattern.possible_labels) for ip in index.entries[key]
                )
                assert ref_labels == got_labels

    def test_rebuild_is_fixpoint(self):
        index = build_syntactic_index(
            [birth_pattern({"P19"}), birth_pattern({"P569"}, shift=10)], "lemma"
        )
        again = build_syntactic_index(
            [ip.pattern for ip in index.all_patterns()], "lemma"
        )
        assert again.stats == index.stats


class TestMatchPatterns:
    def test_pattern_matches_its_own_instantiation(self, fig2_graph):
        sub = shortest_dependency_path(fig2_graph, 1, 7)
        index = build_syntactic_index([LabeledPattern.make(sub, {"P19"})], "lemma")
        candidates = match_patterns(index, fig2_graph)
        assert len(candidates) == 1
        c = candidates[0]
        assert c.possible_labels == frozenset({"P19"})
        assert c.node_set == {1, 5, 7}
        assert c.subgraph.source == 1 and c.subgraph.target == 7

    def test_no_key_in_index_yields_nothing(self, fig2_graph):
        index = build_syntactic_index(
            [
                path_pattern(
                    {"P26"},
                    [(1, "épousa", "épouser", "VERB"), (2, "il", "il", "PRON")],
                    [(1, 2, "nsubj")],
                    source=2,
                    target=1,
                )
            ],
            "lemma",
        )
        assert match_patterns(index, fig2_graph) == []

    def test_nested_patterns_both_match_then_filtered(self, fig2_graph):
        long_sub = shortest_dependency_path(fig2_graph, 1, 7)
        short_sub = shortest_dependency_path(fig2_graph, 1, 5)
        index = build_syntactic_index(
            [LabeledPattern.make(long_sub, {"P19"}), LabeledPattern.make(short_sub, {"P569"})],
            "lemma",
        )
        candidates = match_patterns(index, fig2_graph)
        assert len(candidates) == 2
        kept = filter_longest(candidates)
        assert len(kept) == 1
        assert kept[0].node_set == {1, 5, 7}

    def test_candidates_reverify_as_embeddings(self, fig2_graph):
        sub = shortest_dependency_path(fig2_graph, 1, 7)
        index = build_syntactic_index([LabeledPattern.make(sub, {"P19"})], "lemma")
        for c in match_patterns(index, fig2_graph):
            assert are_isomorphic(c.subgraph, c.matched_pattern.pattern.pattern, "lemma")

    def test_key_mode_respected_at_match_time(self, fig2_graph):
        # surface-built index must not fire on a graph whose surface key differs
        surface_pattern = path_pattern(
            {"P19"},
            [(1, "né", "naître", "VERB"), (2, "il", "il", "PRON")],
            [(1, 2, "nsubj")],
            source=2,
            target=1,
        )
        index = build_syntactic_index([surface_pattern], "surface")
        assert match_patterns(index, fig2_graph) == []  # fig2 has "née", not "né"


class TestFilterLongest:
    def test_strict_subset_dropped_and_antichain(self, fig2_graph):
        subs = [
            shortest_dependency_path(fig2_graph, 1, 7),
            shortest_dependency_path(fig2_graph, 1, 5),
            shortest_dependency_path(fig2_graph, 5, 7),
        ]
        index = build_syntactic_index(
            [LabeledPattern.make(s, {"P19"}) for s in subs], "lemma"
        )
        kept = filter_longest(match_patterns(index, fig2_graph))
        for a in kept:
            for b in kept:
                if a is not b:
                    assert not a.node_set < b.node_set
        assert {frozenset(c.node_set) for c in kept} == {frozenset({1, 5, 7})}

    def test_disjoint_candidates_survive(self):
        g = make_graph(
            [
                (1, "v", "v", "VERB"),
                (2, "a", "a", "NOUN"),
                (3, "w", "w", "VERB"),
                (4, "b", "b", "NOUN"),
            ],
            [(1, 2, "obj"), (3, 4, "obj"), (1, 3, "conj")],
        )
        p1 = path_pattern(
            {"P19"}, [(1, "v", "v", "VERB"), (2, "a", "a", "NOUN")], [(1, 2, "obj")], 1, 2
        )
        p2 = path_pattern(
            {"P26"}, [(1, "w", "w", "VERB"), (2, "b", "b", "NOUN")], [(1, 2, "obj")], 1, 2
        )
        index = build_syntactic_index([p1, p2], "lemma")
        kept = filter_longest(match_patterns(index, g))
        assert {frozenset(c.node_set) for c in kept} == {
            frozenset({1, 2}),
            frozenset({3, 4}),
        }

    def test_equal_node_sets_keep_lowest_pattern_id(self, fig2_graph):
        sub = shortest_dependency_path(fig2_graph, 1, 7)
        # same node set reachable through two stored patterns with different labels
        index = build_syntactic_index(
            [LabeledPattern.make(sub, {"P19"})], "lemma"
        )
        candidates = match_patterns(index, fig2_graph) * 2
        kept = filter_longest(candidates)
        assert len(kept) == 1
        assert kept[0].matched_pattern.pattern_id == 0


class TestSerialization:
    def test_round_trip(self, tmp_path, fig2_graph):
        sub = shortest_dependency_path(fig2_graph, 1, 7)
        index = build_syntactic_index(
            [LabeledPattern.make(sub, {"P19"}), birth_pattern({"P569"}, shift=20)],
            "lemma",
            provenance={"source": "unit-test"},
        )
        path = tmp_path / "syn.json"
        save_index(index, path)
        loaded = load_index(path)
        assert loaded.stats == index.stats
        assert loaded.key_mode == index.key_mode
        assert set(loaded.entries) == set(index.entries)
        for key in index.entries:
            assert [ip.pattern for ip in loaded.entries[key]] == [
                ip.pattern for ip in index.entries[key]
            ]

    def test_unknown_version_rejected(self, tmp_path, fig2_graph):
        import json

        sub = shortest_dependency_path(fig2_graph, 1, 7)
        index = build_syntactic_index([LabeledPattern.make(sub, {"P19"})], "lemma")
        path = tmp_path / "syn.json"
        save_index(index, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["version"] = 99
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(IndexFormatError, match="version"):
            load_index(path)

    def test_corrupt_file_rejected(self, tmp_path, fig2_graph):
        import json

        sub = shortest_dependency_path(fig2_graph, 1, 7)
        index = build_syntactic_index([LabeledPattern.make(sub, {"P19"})], "lemma")
        path = tmp_path / "syn.json"
        save_index(index, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["key_mode"] = "surface"  # tamper without updating the checksum
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(IndexFormatError, match="checksum"):
            load_index(path)

    def test_key_mode_guard(self):
        with pytest.raises(KeyModeMismatchError):
            ensure_key_mode("lemma", "surface", "syntactic index")
