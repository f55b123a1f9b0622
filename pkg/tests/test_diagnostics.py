import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperrec import (
    Hypergraph,
    RhoCell,
    RhoTable,
    error_partition,
    maximal_cliques,
    project,
    property_vector,
    rho_distance,
    rho_table,
)
from hyperrec.diagnostics import write_rho_csv

from oracles import brute_rho_table, random_covering_hypergraph

hyperedges_strategy = st.lists(
    st.frozensets(st.integers(0, 6), min_size=1, max_size=5),
    min_size=1,
    max_size=8,
)


# ---------------------------------------------------------------------------
# error partition
# ---------------------------------------------------------------------------


def test_error_partition_nested_pair():
    rep = error_partition(Hypergraph.from_edges([(0, 1, 2), (0, 1)]))
    assert rep.e_total == 2 and rep.e_unnested == 1 and rep.m_total == 1
    assert rep.error1 == pytest.approx(0.5)
    assert rep.error2 == 0.0
    assert rep.jaccard_maxclique == pytest.approx(0.5)


def test_error_partition_zero_for_sperner_conformal():
    rep = error_partition(Hypergraph.from_edges([(0, 1, 2), (3, 4)]))
    assert rep.error1 == rep.error2 == 0.0
    assert rep.jaccard_maxclique == 1.0


def test_error_partition_error_ii_instance(error_ii_hypergraph):
    rep = error_partition(error_ii_hypergraph)
    # all three hyperedges unnested; one phantom maximal clique
    assert rep.e_unnested == 3 and rep.m_total == 4
    assert rep.error1 == 0.0
    assert rep.error2 == pytest.approx(1 / 4)


@given(hyperedges_strategy)
@settings(max_examples=150, deadline=None)
def test_error_shares_sum_to_one_exactly(edges):
    rep = error_partition(Hypergraph.from_edges(edges))
    assert rep.error1 + rep.error2 + rep.jaccard_maxclique == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# rho table
# ---------------------------------------------------------------------------


def test_rho_table_disjoint_hyperedges():
    h = Hypergraph.from_edges([(0, 1, 2), (3, 4, 5)])
    table = rho_table(h)
    assert table.rho(3, 3) == 1.0
    assert table.rho(3, 2) == 0.0
    assert table.rho(3, 1) == 0.0
    assert set(table.cells) == {(3, 1), (3, 2), (3, 3)}


def test_rho_table_nested_pair_cell_values():
    table = rho_table(Hypergraph.from_edges([(0, 1, 2), (0, 1)]))
    cell = table.cells[(3, 2)]
    assert cell.pair_space == 3
    assert len(cell.edge_ids) == 1
    assert table.rho(3, 2) == pytest.approx(1 / 3)
    assert table.rho(3, 3) == 1.0


def test_rho_table_matches_brute_force(rng):
    for _ in range(120):
        h = random_covering_hypergraph(rng, int(rng.integers(2, 8)), max_edges=6)
        table = rho_table(h)
        expected = brute_rho_table(h)
        got = {key: (len(cell.edge_ids), cell.pair_space) for key, cell in table.cells.items()}
        assert got == expected


def test_rho_table_monte_carlo_pair_sampling(rng):
    """Uniform (clique, subset) pair draws hit hyperedges at the cell's pair
    rate; that rate equals rho exactly on cells where no hyperedge sits in
    two same-size maximal cliques."""
    h = random_covering_hypergraph(rng, 7, max_edges=7)
    cliques = maximal_cliques(project(h))
    table = rho_table(h, cliques)
    edge_sets = set(h.edge_sets)
    draws = 20_000
    for (n, k), cell in table.cells.items():
        if cell.pair_space < 10:
            continue
        group = cliques.by_size[n]
        hits = 0
        pair_hits = 0  # exact count of (clique, subset) pairs that are hyperedges
        for clique in group:
            from itertools import combinations

            pair_hits += sum(1 for s in combinations(clique, k) if frozenset(s) in edge_sets)
        for _ in range(draws):
            clique = group[rng.integers(len(group))]
            subset = frozenset(rng.choice(clique, size=k, replace=False).tolist())
            hits += subset in edge_sets
        mc = hits / draws
        pair_rate = pair_hits / cell.pair_space
        se = math.sqrt(max(pair_rate * (1 - pair_rate), 1e-12) / draws)
        assert abs(mc - pair_rate) <= 4 * se + 1e-9
        assert cell.rho <= pair_rate + 1e-12
        if pair_hits == len(cell.edge_ids):  # no same-size double containment
            assert abs(mc - cell.rho) <= 4 * se + 1e-9


def test_rho_cells_in_one_column_overlap_by_containment(rng):
    """Within a column k, a hyperedge appears once per distinct maximal-clique
    size containing it, so column sums exceed distinct counts under overlap."""
    for _ in range(40):
        h = random_covering_hypergraph(rng, int(rng.integers(3, 9)), max_edges=6)
        cliques = maximal_cliques(project(h))
        table = rho_table(h, cliques)
        for k in {key[1] for key in table.cells}:
            column_total = sum(
                len(cell.edge_ids) for (n, kk), cell in table.cells.items() if kk == k
            )
            expected = 0
            for eid, edge in enumerate(h.edge_sets):
                if len(edge) != k:
                    continue
                sizes = {len(c) for c in cliques if edge <= frozenset(c)}
                expected += len(sizes)
            assert column_total == expected


def test_rho_csv_export(tmp_path):
    table = rho_table(Hypergraph.from_edges([(0, 1, 2), (0, 1)]))
    path = tmp_path / "rho.csv"
    write_rho_csv(path, table)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,k,count_E,count_Q,rho_hat"
    assert len(lines) == 1 + len(table.cells)


# ---------------------------------------------------------------------------
# rho distance
# ---------------------------------------------------------------------------


def test_rho_distance_identical_is_zero():
    table = rho_table(Hypergraph.from_edges([(0, 1, 2), (0, 1)]))
    assert rho_distance(table, table) == 0.0


def test_rho_distance_against_empty_table():
    table = rho_table(Hypergraph.from_edges([(0, 1, 2), (0, 1)]))
    empty = RhoTable(max_clique_size=0, cells={})
    rhos = [cell.rho for cell in table.cells.values()]
    expected = sum(r * r for r in rhos) / len(rhos)
    assert rho_distance(table, empty) == pytest.approx(expected)
    assert rho_distance(empty, empty) == 0.0


def test_rho_distance_symmetric(rng):
    for _ in range(30):
        a = rho_table(random_covering_hypergraph(rng, 6, max_edges=5))
        b = rho_table(random_covering_hypergraph(rng, 7, max_edges=5))
        assert rho_distance(a, b) == pytest.approx(rho_distance(b, a))
        assert rho_distance(a, b) >= 0.0


def test_rho_table_rejects_invalid_cells():
    with pytest.raises(ValueError):
        RhoTable(max_clique_size=2, cells={(3, 1): RhoCell(frozenset(), 1)})
    with pytest.raises(ValueError):
        RhoTable(max_clique_size=3, cells={(3, 1): RhoCell(frozenset(), 0)})
    with pytest.raises(ValueError):
        RhoTable(max_clique_size=3, cells={(3, 1): RhoCell(frozenset({1, 2}), 1)})


# ---------------------------------------------------------------------------
# property vector
# ---------------------------------------------------------------------------


def test_property_vector_single_edge():
    pv = property_vector(Hypergraph.from_edges([(0, 1)]))
    assert pv.e_count == 1
    assert pv.mean_size == 2.0
    assert pv.std_size == 0.0
    assert pv.avg_node_degree == 1.0


def test_property_vector_counts_isolated_nodes_in_denominator():
    h = Hypergraph(node_count=4, hyperedges=((0, 1),))
    assert property_vector(h).avg_node_degree == pytest.approx(0.5)


@given(hyperedges_strategy)
@settings(max_examples=100, deadline=None)
def test_property_vector_matches_direct_computation(edges):
    h = Hypergraph.from_edges(edges)
    pv = property_vector(h)
    sizes = [len(e) for e in h.hyperedges]
    mean = sum(sizes) / len(sizes)
    assert pv.mean_size == pytest.approx(mean)
    assert pv.std_size == pytest.approx(math.sqrt(sum((s - mean) ** 2 for s in sizes) / len(sizes)))
    degrees = [sum(1 for e in h.edge_sets if v in e) for v in range(h.node_count)]
    assert pv.avg_node_degree == pytest.approx(sum(degrees) / h.node_count)
