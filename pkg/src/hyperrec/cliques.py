"""Maximal-clique enumeration and exact clique counting.

Enumeration is Bron-Kerbosch with pivoting, driven by a degeneracy ordering
of the vertices, so running time is output-sensitive.  Output order is
deterministic given the graph's node ordering.  Isolated nodes count as
size-1 maximal cliques.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .hypergraph import ProjectedGraph

DEFAULT_CLIQUE_LIMIT = 10_000_000

Clique = tuple[int, ...]


class CliqueLimitError(RuntimeError):
    """More maximal cliques than the configured cap; never truncate silently."""

    def __init__(self, limit: int):
        super().__init__(f"more than {limit} maximal cliques")
        self.limit = limit


class CliqueCountOverflow(RuntimeError):
    """The clique count exceeds the cap; carries a certified lower bound."""

    def __init__(self, cap: int, lower_bound: int):
        super().__init__(f"more than {cap} cliques (at least {lower_bound})")
        self.cap = cap
        self.lower_bound = lower_bound


@dataclass(frozen=True)
class CliqueSet:
    """A deduplicated collection of cliques with a by-size index."""

    cliques: tuple[Clique, ...]

    @cached_property
    def by_size(self) -> dict[int, tuple[Clique, ...]]:
        buckets: dict[int, list[Clique]] = {}
        for c in self.cliques:
            buckets.setdefault(len(c), []).append(c)
        return {n: tuple(cs) for n, cs in buckets.items()}

    @cached_property
    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.cliques)

    @property
    def max_size(self) -> int:
        return max(self.by_size) if self.cliques else 0

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self) -> Iterator[Clique]:
        return iter(self.cliques)

    def __contains__(self, nodes) -> bool:
        return frozenset(nodes) in self.as_sets


def degeneracy_order(adjacency) -> list[int]:
    """Order nodes by repeatedly removing a minimum-degree node (bucket queue)."""
    n = len(adjacency)
    degree = [len(adjacency[v]) for v in range(n)]
    buckets: list[list[int]] = [[] for _ in range(n + 1)]
    for v in range(n):
        buckets[degree[v]].append(v)
    removed = [False] * n
    order: list[int] = []
    d = 0
    while len(order) < n:
        while d < len(buckets) and not buckets[d]:
            d += 1
        v = buckets[d].pop()
        if removed[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in adjacency[v]:
            if not removed[u]:
                degree[u] -= 1
                buckets[degree[u]].append(u)
                if degree[u] < d:
                    d = degree[u]
    return order


def maximal_cliques(g: ProjectedGraph, limit: int = DEFAULT_CLIQUE_LIMIT) -> CliqueSet:
    """Enumerate exactly the inclusion-maximal cliques of ``g``.

    Raises :class:`CliqueLimitError` when the graph has more than ``limit``
    maximal cliques.
    """
    adj = g.adjacency
    order = degeneracy_order(adj)
    pos = {v: i for i, v in enumerate(order)}
    out: list[Clique] = []

    def expand(base: list[int], cand: set[int], done: set[int]) -> None:
        if not cand and not done:
            out.append(tuple(sorted(base)))
            if len(out) > limit:
                raise CliqueLimitError(limit)
            return
        pivot, best = -1, -1
        for u in cand | done:
            score = len(cand & adj[u])
            if score > best or (score == best and u < pivot):
                pivot, best = u, score
        for v in sorted(cand - adj[pivot]):
            expand(base + [v], cand & adj[v], done & adj[v])
            cand.remove(v)
            done.add(v)

    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        earlier = set(adj[v]) - later
        expand([v], later, earlier)
    out.sort()
    return CliqueSet(cliques=tuple(out))


def count_all_cliques(g: ProjectedGraph, cap: int) -> int:
    """Count all non-empty cliques of ``g`` exactly, up to ``cap``.

    Every clique is visited once through its degeneracy-ordered node sequence,
    so work is linear in the count.  Past the cap, computation aborts with a
    :class:`CliqueCountOverflow` carrying a cheap certified lower bound (the
    sum of ``2**|C| - 1`` over greedily chosen node-disjoint maximal cliques).
    """
    adj = g.adjacency
    order = degeneracy_order(adj)
    pos = {v: i for i, v in enumerate(order)}
    later = [frozenset(u for u in adj[v] if pos[u] > pos[v]) for v in range(g.node_count)]
    total = 0

    def count_within(cand: frozenset[int]) -> None:
        nonlocal total
        for v in sorted(cand):
            total += 1
            if total > cap:
                raise CliqueCountOverflow(cap, _disjoint_clique_bound(g))
            count_within(cand & later[v])

    count_within(frozenset(range(g.node_count)))
    return total


def _disjoint_clique_bound(g: ProjectedGraph) -> int:
    """Sum 2^|C|-1 over greedily grown node-disjoint maximal cliques."""
    available = set(range(g.node_count))
    adj = g.adjacency
    bound = 0
    for v in sorted(available, key=lambda u: -len(adj[u])):
        if v not in available:
            continue
        clique = {v}
        cand = adj[v] & available
        while cand:
            u = max(cand, key=lambda w: (len(adj[w] & cand), -w))
            clique.add(u)
            cand &= adj[u]
        available -= clique
        bound += (1 << len(clique)) - 1
    return bound
