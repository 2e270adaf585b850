import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bncover import (
    ClassViolation,
    Clique,
    DiamDeg,
    Graph,
    LabelledGraph,
    PathBounded,
    Reconfigurable,
    VassConfig,
    canonical_form,
    diam_deg_size_bound,
    diameter,
    enumerate_diam_deg_graphs,
    enumerate_extensions,
    enumerate_graphs,
    graph_embeds,
    graph_injections,
    in_class,
    longest_simple_path_length,
    max_degree,
    multiset_embeds,
    single_vertex,
    vass_leq,
)

from conftest import cfg, random_labelled_graph
from oracles import (
    diameter_brute,
    embeds_brute,
    graphs_upto_iso_brute,
    isomorphic_brute,
    longest_path_brute,
    multiset_embeds_brute,
)


def star(leaves):
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def path(n):
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n):
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


# ---------------------------------------------------------------------------
# embedding


def test_single_vertex_embeds_by_label_dominance():
    small = single_vertex(cfg("q", 0))
    big = LabelledGraph(2, frozenset({(0, 1)}), (cfg("p", 1), cfg("q", 3)))
    assert graph_embeds(small, big, vass_leq) == (1,)


def test_edge_does_not_embed_into_non_edge():
    small = LabelledGraph(2, frozenset({(0, 1)}), (cfg("q", 0), cfg("q", 0)))
    big = LabelledGraph(2, frozenset(), (cfg("q", 0), cfg("q", 0)))
    assert graph_embeds(small, big, vass_leq) is None
    # and the other way around: a non-edge does not embed into an edge
    assert graph_embeds(big, small, vass_leq) is None


def test_embeds_agrees_with_brute_force():
    rng = random.Random(61)
    for _ in range(60):
        g1 = random_labelled_graph(rng, max_n=4)
        g2 = random_labelled_graph(rng, max_n=5)
        got = graph_embeds(g1, g2, vass_leq)
        expected = embeds_brute(g1, g2, vass_leq)
        assert (got is not None) == expected, (g1, g2)
        if got is not None:
            for u in range(g1.n):
                assert vass_leq(g1.labels[u], g2.labels[got[u]])
                for v in range(u):
                    assert g1.adjacent(u, v) == g2.adjacent(got[u], got[v])


def test_embedding_is_reflexive_and_transitive():
    rng = random.Random(67)
    graphs = [random_labelled_graph(rng, max_n=4) for _ in range(12)]
    order = lambda a, b: graph_embeds(a, b, vass_leq) is not None
    for g in graphs:
        assert order(g, g)
    for a in graphs:
        for b in graphs:
            for c in graphs:
                if order(a, b) and order(b, c):
                    assert order(a, c)


def test_injections_enumerates_all():
    from oracles import injections_brute

    rng = random.Random(71)
    for _ in range(20):
        s1 = random_labelled_graph(rng, max_n=3).shape
        s2 = random_labelled_graph(rng, max_n=5).shape
        mine = set(graph_injections(s1, s2))
        l1 = LabelledGraph(s1.n, s1.edges, (None,) * s1.n)
        l2 = LabelledGraph(s2.n, s2.edges, (None,) * s2.n)
        brute = set(injections_brute(l1, l2, lambda a, b: True))
        assert mine == brute


# ---------------------------------------------------------------------------
# metrics


def test_star_longest_path_is_two_edges():
    assert longest_simple_path_length(star(4)) == 2


def test_single_vertex_longest_path_is_zero():
    assert longest_simple_path_length(Graph(1)) == 0


def test_longest_path_matches_permutation_oracle():
    rng = random.Random(73)
    for _ in range(25):
        g = random_labelled_graph(rng, max_n=6).shape
        assert longest_simple_path_length(g) == longest_path_brute(g)


def test_cycle_metrics():
    assert diameter(cycle(5)) == 2
    assert max_degree(cycle(5)) == 2


def test_star_metrics():
    assert diameter(star(5)) == 2
    assert max_degree(star(5)) == 5


def test_disconnected_diameter_is_infinite():
    assert diameter(Graph(3, frozenset({(0, 1)}))) == math.inf


def test_diameter_matches_all_pairs_oracle():
    rng = random.Random(79)
    for _ in range(25):
        g = random_labelled_graph(rng, max_n=6).shape
        assert diameter(g) == diameter_brute(g)


# ---------------------------------------------------------------------------
# multisets


def test_multiset_embeds_trivial():
    assert multiset_embeds([cfg("q", 1)], [cfg("q", 2), cfg("p", 0)], vass_leq)


def test_multiset_embeds_respects_cardinality():
    assert not multiset_embeds([cfg("q", 1), cfg("q", 1)], [cfg("q", 1)], vass_leq)


def test_multiset_embeds_agrees_with_brute_force():
    rng = random.Random(83)
    for _ in range(60):
        m1 = [VassConfig(rng.choice("pq"), (rng.randint(0, 2),)) for _ in range(rng.randint(0, 4))]
        m2 = [VassConfig(rng.choice("pq"), (rng.randint(0, 2),)) for _ in range(rng.randint(0, 5))]
        assert multiset_embeds(m1, m2, vass_leq) == multiset_embeds_brute(m1, m2, vass_leq)


def test_clique_bridge():
    # on cliques, graph embedding and label-multiset embedding coincide
    rng = random.Random(89)
    for _ in range(30):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 5)
        mk = lambda n: tuple(
            VassConfig(rng.choice("pq"), (rng.randint(0, 2),)) for _ in range(n)
        )
        l1, l2 = mk(n1), mk(n2)
        g1 = LabelledGraph(n1, Graph.complete(n1).edges, l1)
        g2 = LabelledGraph(n2, Graph.complete(n2).edges, l2)
        assert (graph_embeds(g1, g2, vass_leq) is not None) == multiset_embeds(
            l1, l2, vass_leq
        )


# ---------------------------------------------------------------------------
# classes and extensions


def test_clique_extension_of_single_vertex():
    out = enumerate_extensions(Graph(1), Clique())
    assert out == (Graph.complete(2),)


def test_path_bounded_extensions_of_a_two_edge_path():
    # attaching to the center keeps the bound; endpoints break it
    g = path(3)
    out = enumerate_extensions(g, PathBounded(2))
    survivors = {frozenset(h.neighbors(3)) for h in out}
    assert survivors == {frozenset(), frozenset({1})}
    assert all(longest_simple_path_length(h) <= 2 for h in out)


def test_path_bounded_one_extensions_of_edgeless_pair():
    out = enumerate_extensions(Graph(2), PathBounded(1))
    survivors = {frozenset(h.neighbors(2)) for h in out}
    assert survivors == {frozenset(), frozenset({0}), frozenset({1})}


def test_diam_deg_has_fixed_shape_semantics():
    assert enumerate_extensions(path(2), DiamDeg(2, 2)) == ()


def test_extension_of_non_member_raises():
    with pytest.raises(ClassViolation):
        enumerate_extensions(path(4), PathBounded(2))


def test_every_extension_contains_the_original_induced():
    rng = random.Random(97)
    for _ in range(15):
        g = random_labelled_graph(rng, max_n=4).shape
        k = longest_simple_path_length(g) + rng.randint(0, 1)
        cls = PathBounded(max(k, 1))
        if not in_class(g, cls):
            continue
        for h in enumerate_extensions(g, cls):
            lg = LabelledGraph(g.n, g.edges, (None,) * g.n)
            lh = LabelledGraph(h.n, h.edges, (None,) * h.n)
            assert graph_embeds(lg, lh, lambda a, b: True) is not None


def test_reconfigurable_accepts_everything():
    assert in_class(path(4), Reconfigurable())


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def test_canonical_form_is_relabelling_invariant():
    rng = random.Random(101)
    for _ in range(30):
        g = random_labelled_graph(rng, max_n=6).shape
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = Graph(g.n, frozenset((perm[a], perm[b]) for a, b in g.edges))
        assert canonical_form(g) == canonical_form(h)


def test_canonical_form_separates_non_isomorphic():
    assert canonical_form(path(4)) != canonical_form(star(3))
    assert canonical_form(cycle(4)) != canonical_form(Graph.complete(4))


def test_enumerate_graphs_counts():
    # graphs up to isomorphism on 1..5 vertices
    assert [len(enumerate_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_diameter_one_forces_cliques():
    got = {canonical_form(g) for g in enumerate_diam_deg_graphs(1, 2, 4)}
    assert got == {canonical_form(Graph.complete(n)) for n in (1, 2, 3)}


def test_degree_one_allows_single_edges_only():
    got = {canonical_form(g) for g in enumerate_diam_deg_graphs(2, 1, 3)}
    assert got == {canonical_form(Graph(1)), canonical_form(Graph.complete(2))}


def test_diam2_deg2_maxes_out_at_the_five_cycle():
    graphs = enumerate_diam_deg_graphs(2, 2, 6)
    assert max(g.n for g in graphs) == 5
    biggest = [g for g in graphs if g.n == 5]
    assert len(biggest) == 1
    assert isomorphic_brute(biggest[0], cycle(5))


def test_enumerate_diam_deg_matches_exhaustive_oracle():
    wanted = {}
    for n in range(1, 5):
        for g in graphs_upto_iso_brute(n):
            if diameter(g) <= 2 and max_degree(g) <= 2:
                wanted[canonical_form(g)] = g
    got = {canonical_form(g) for g in enumerate_diam_deg_graphs(2, 2, 4)}
    assert got == set(wanted)


def test_size_bound_is_reference_only():
    assert diam_deg_size_bound(2, 2) is None
    assert diam_deg_size_bound(3, 2) == (3 * 2 ** 2 - 2) / 1


def test_self_loops_rejected():
    with pytest.raises(ValueError):
        Graph(2, frozenset({(1, 1)}))
