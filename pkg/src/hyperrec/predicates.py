"""Structural predicates that decide when max-clique reconstruction is exact.

A hypergraph whose maximal cliques coincide with its hyperedges is exactly
the one that is both Sperner (no hyperedge nested in another) and conformal
(every maximal clique of the projection is a hyperedge).  Conformality also
has a clique-free characterization over hyperedge triples, checked by
:func:`is_conformal_triangle`.
"""

from __future__ import annotations

from itertools import combinations

from .cliques import CliqueSet, maximal_cliques
from .hypergraph import Hypergraph, project


def is_sperner(h: Hypergraph) -> bool:
    """True iff no hyperedge is a proper subset of another hyperedge."""
    inc = h.incidence
    sizes = [len(e) for e in h.hyperedges]
    for i, edge in enumerate(h.hyperedges):
        containing = set(inc[edge[0]])
        for v in edge[1:]:
            containing.intersection_update(inc[v])
            if len(containing) == 1:
                break
        if any(sizes[j] > sizes[i] for j in containing):
            return False
    return True


def is_conformal(h: Hypergraph, cliques: CliqueSet | None = None) -> bool:
    """True iff every maximal clique of the projection is itself a hyperedge."""
    if cliques is None:
        cliques = maximal_cliques(project(h))
    edges = set(h.edge_sets)
    return all(frozenset(c) in edges for c in cliques.cliques)


def is_conformal_triangle(h: Hypergraph) -> bool:
    """Conformality via hyperedge triples, without computing maximal cliques.

    For every three hyperedges, some hyperedge must contain the union of their
    pairwise intersections.  Triples repeating a hyperedge satisfy this
    trivially, so only distinct triples are scanned.  A node belonging to no
    hyperedge forms a singleton maximal clique in the projection, which can
    never be a hyperedge; such nodes fail conformality directly, keeping this
    predicate equivalent to :func:`is_conformal` on every input.
    """
    covered: set[int] = set()
    for e in h.hyperedges:
        covered.update(e)
    if len(covered) < h.node_count:
        return False

    sets = h.edge_sets
    m = len(sets)
    pair_inter: dict[tuple[int, int], frozenset[int]] = {}
    for i, j in combinations(range(m), 2):
        pair_inter[(i, j)] = sets[i] & sets[j]
    inc = h.incidence
    sizes = [len(e) for e in h.hyperedges]

    def contained_in_some_edge(nodes: frozenset[int]) -> bool:
        it = iter(nodes)
        first = next(it)
        candidates = set(inc[first])
        for v in it:
            candidates.intersection_update(inc[v])
            if not candidates:
                return False
        return bool(candidates)

    for i, j, q in combinations(range(m), 3):
        union = pair_inter[(i, j)] | pair_inter[(j, q)] | pair_inter[(i, q)]
        if len(union) <= 1:
            continue
        # cheap containment in one of the triple's own hyperedges first
        if union <= sets[i] or union <= sets[j] or union <= sets[q]:
            continue
        if len(union) > max(sizes):
            return False
        if not contained_in_some_edge(union):
            return False
    return True
