"""Deterministic reconstruction baselines.

* ``baseline_max_clique``: every maximal clique becomes a hyperedge.
* ``baseline_clique_cover``: greedy edge clique cover; each uncovered edge is
  grown into a maximal clique, preferring neighbors incident to many
  uncovered edges.
* ``baseline_multiplicity``: when edge multiplicities are known, repeatedly
  emit the maximal clique scoring best on (size - weight * mean edge
  multiplicity), decrement its edges, and drop exhausted edges.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Iterable

from .cliques import CliqueSet, maximal_cliques
from .hypergraph import ProjectedGraph

Clique = tuple[int, ...]


def baseline_max_clique(g: ProjectedGraph, cliques: CliqueSet | None = None) -> tuple[Clique, ...]:
    if cliques is None:
        cliques = maximal_cliques(g)
    return cliques.cliques


def baseline_clique_cover(g: ProjectedGraph, seed: int | None = None) -> tuple[Clique, ...]:
    """Greedy edge clique cover plus isolated nodes as size-1 sets.

    The heuristic is fully deterministic (edges scanned in sorted order, ties
    broken toward the lowest node id); ``seed`` is accepted for interface
    parity and ignored.
    """
    del seed
    adj = g.adjacency
    uncovered = set(g.edges)
    load = [len(adj[v]) for v in range(g.node_count)]

    def cover(a: int, b: int) -> None:
        key = (a, b) if a < b else (b, a)
        if key in uncovered:
            uncovered.remove(key)
            load[a] -= 1
            load[b] -= 1

    out: list[Clique] = []
    for u, v in sorted(g.edges):
        if (u, v) not in uncovered:
            continue
        clique = [u, v]
        cover(u, v)
        common = set(adj[u] & adj[v])
        while common:
            w = max(sorted(common), key=lambda x: load[x])
            for x in clique:
                cover(w, x)
            clique.append(w)
            common &= adj[w]
        out.append(tuple(sorted(clique)))
    out.extend((v,) for v in range(g.node_count) if not adj[v])
    return tuple(out)


def _clique_score(clique: Clique, mult: dict[tuple[int, int], int], weight: float) -> float:
    pairs = list(itertools.combinations(clique, 2))
    mean = sum(mult[p] for p in pairs) / len(pairs)
    return len(clique) - weight * mean


def baseline_multiplicity(
    g: ProjectedGraph, weight: float = 1.0, seed: int | None = None
) -> tuple[Clique, ...]:
    """Peel maximal cliques off a multiplicity-weighted projection.

    Each round emits the maximal clique of the current positive-multiplicity
    graph maximizing ``size - weight * mean(edge multiplicity)``, reduces its
    edge multiplicities by one, and drops edges reaching zero, until no edges
    remain.  Nodes isolated in the original graph are emitted as singletons
    at the end.  The result is a multiset: a clique reappears once per time
    it is peeled.  Deterministic; ``seed`` is accepted and ignored.
    """
    del seed
    if g.multiplicity is None:
        raise ValueError("baseline_multiplicity needs a graph with a multiplicity map")
    mult = dict(g.multiplicity)
    adj: list[set[int]] = [set(a) for a in g.adjacency]
    singletons = [v for v in range(g.node_count) if not adj[v]]

    current: set[frozenset[int]] = set()
    by_node: dict[int, set[frozenset[int]]] = {v: set() for v in range(g.node_count)}
    heap: list[tuple[float, Clique]] = []

    def add_clique(nodes: Iterable[int]) -> None:
        fs = frozenset(nodes)
        if len(fs) < 2 or fs in current:
            return
        current.add(fs)
        for v in fs:
            by_node[v].add(fs)
        clique = tuple(sorted(fs))
        heapq.heappush(heap, (-_clique_score(clique, mult, weight), clique))

    def drop_clique(fs: frozenset[int]) -> None:
        current.remove(fs)
        for v in fs:
            by_node[v].discard(fs)

    for clique in maximal_cliques(g):
        add_clique(clique)

    out: list[Clique] = []
    while mult:
        neg_score, clique = heapq.heappop(heap)
        fs = frozenset(clique)
        if fs not in current:
            continue
        score = _clique_score(clique, mult, weight)
        if -neg_score != score:
            heapq.heappush(heap, (-score, clique))
            continue
        out.append(clique)
        removed: list[tuple[int, int]] = []
        for pair in itertools.combinations(clique, 2):
            mult[pair] -= 1
            if mult[pair] == 0:
                del mult[pair]
                adj[pair[0]].discard(pair[1])
                adj[pair[1]].discard(pair[0])
                removed.append(pair)
        if not removed:
            # still a maximal clique of the unchanged graph; re-queue it
            heapq.heappush(heap, (-_clique_score(clique, mult, weight), clique))
            continue
        affected: set[frozenset[int]] = set()
        for a, b in removed:
            affected.update(c for c in by_node[a] if b in c)
        for old in affected:
            drop_clique(old)
        for old in affected:
            for sub in _local_maximal_cliques(sorted(old), adj):
                # keep only cliques that are maximal in the whole graph
                it = iter(sub)
                common = set(adj[next(it)])
                for v in it:
                    common &= adj[v]
                if not (common - set(sub)):
                    add_clique(sub)
    out.extend((v,) for v in singletons)
    return tuple(out)


def _local_maximal_cliques(nodes: list[int], adj: list[set[int]]) -> list[list[int]]:
    """Maximal cliques of the subgraph induced by ``nodes``."""
    allowed = set(nodes)
    local = {v: adj[v] & allowed for v in nodes}
    out: list[list[int]] = []

    def expand(base: list[int], cand: set[int], done: set[int]) -> None:
        if not cand and not done:
            out.append(sorted(base))
            return
        pivot, best = -1, -1
        for u in cand | done:
            score = len(cand & local[u])
            if score > best or (score == best and u < pivot):
                pivot, best = u, score
        for v in sorted(cand - local[pivot]):
            expand(base + [v], cand & local[v], done & local[v])
            cand.remove(v)
            done.add(v)

    expand([], set(nodes), set())
    return out
