import itertools
from collections import Counter

import pytest

from hyperrec import (
    Hypergraph,
    baseline_clique_cover,
    baseline_max_clique,
    baseline_multiplicity,
    jaccard,
    maximal_cliques,
    project,
)

from oracles import is_clique, random_covering_hypergraph


def test_max_clique_baseline_equals_enumeration(rng):
    h = random_covering_hypergraph(rng, 9, max_edges=7)
    g = project(h)
    assert baseline_max_clique(g) == maximal_cliques(g).cliques


def test_max_clique_recovers_disjoint_hyperedges():
    h = Hypergraph.from_edges([(0, 1, 2), (3, 4, 5)])
    assert jaccard(h.edge_sets, baseline_max_clique(project(h))) == 1.0


# ---------------------------------------------------------------------------
# clique cover
# ---------------------------------------------------------------------------


def test_cover_triangle():
    g = project(Hypergraph.from_edges([(0, 1, 2)]))
    assert baseline_clique_cover(g) == ((0, 1, 2),)


def test_cover_bowtie_finds_both_triangles():
    # two triangles sharing node 2; the minimum cover has exactly two cliques
    h = Hypergraph.from_edges([(0, 1, 2), (2, 3, 4)])
    out = baseline_clique_cover(project(h))
    assert set(out) == {(0, 1, 2), (2, 3, 4)}


def test_cover_emits_isolated_nodes():
    h = Hypergraph(node_count=4, hyperedges=((0, 1),))
    out = baseline_clique_cover(project(h))
    assert set(out) == {(0, 1), (2,), (3,)}


def test_cover_covers_all_edges_with_cliques(rng):
    for _ in range(60):
        h = random_covering_hypergraph(rng, int(rng.integers(3, 10)), max_edges=7)
        g = project(h)
        out = baseline_clique_cover(g)
        edge_pairs = set(g.edges)
        covered = set()
        for clique in out:
            assert is_clique(edge_pairs, clique)
            covered |= {tuple(sorted(p)) for p in itertools.combinations(clique, 2)}
        assert covered == edge_pairs


def test_cover_is_deterministic(rng):
    h = random_covering_hypergraph(rng, 9, max_edges=8)
    g = project(h)
    assert baseline_clique_cover(g) == baseline_clique_cover(g, seed=99)


# ---------------------------------------------------------------------------
# multiplicity baseline
# ---------------------------------------------------------------------------


def test_multiplicity_requires_multiplicities():
    g = project(Hypergraph.from_edges([(0, 1)]))
    with pytest.raises(ValueError):
        baseline_multiplicity(g)


def test_multiplicity_exact_on_disjoint_hyperedges():
    h = Hypergraph.from_edges([(0, 1, 2), (3, 4), (5,)])
    out = baseline_multiplicity(project(h, with_multiplicity=True))
    assert set(out) == set(h.hyperedges)
    assert jaccard(h.edge_sets, out) == 1.0


def test_multiplicity_peels_two_triangles_sharing_an_edge():
    h = Hypergraph.from_edges([(0, 1, 2), (1, 2, 3)])
    out = baseline_multiplicity(project(h, with_multiplicity=True))
    assert sorted(out) == [(0, 1, 2), (1, 2, 3)]


def test_multiplicity_conserves_edge_counts(rng):
    for _ in range(40):
        h = random_covering_hypergraph(rng, int(rng.integers(3, 9)), max_edges=6)
        g = project(h, with_multiplicity=True)
        out = baseline_multiplicity(g)
        used = Counter()
        for clique in out:
            for pair in itertools.combinations(sorted(clique), 2):
                used[pair] += 1
        assert used == Counter(g.multiplicity)


def test_multiplicity_weight_changes_selection():
    # a heavily multi-covered 4-clique against a plain triangle: a small
    # weight prefers the larger clique, a large weight the lighter one
    h = Hypergraph.from_edges(
        [(3, 4, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6), (0, 1, 2)]
    )
    g = project(h, with_multiplicity=True)
    light = baseline_multiplicity(g, weight=0.1)
    heavy = baseline_multiplicity(g, weight=2.0)
    assert light[0] == (3, 4, 5, 6)
    assert heavy[0] == (0, 1, 2)
    for out in (light, heavy):
        used = Counter()
        for clique in out:
            for pair in itertools.combinations(sorted(clique), 2):
                used[pair] += 1
        assert used == Counter(g.multiplicity)
