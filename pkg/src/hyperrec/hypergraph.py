"""Hypergraph and projected-graph data types, projection, and file ingestion.

A hypergraph is a set of distinct hyperedges (node sets) over dense 0-based
integer node ids.  Its projection is the simple graph joining every pair of
nodes that co-occur in at least one hyperedge, optionally annotated with the
number of hyperedges shared by each pair (edge multiplicity).

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

logger = logging.getLogger(__name__)

Edge = tuple[int, ...]


class FormatError(ValueError):
    """A data file violated the expected line format."""

    def __init__(self, path: str | Path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


def _canonical_edge(nodes: Iterable[int]) -> Edge:
    edge = tuple(sorted(set(int(v) for v in nodes)))
    if not edge:
        raise ValueError("hyperedge must contain at least one node")
    return edge


@dataclass(frozen=True)
class Hypergraph:
    """A node universe ``[0, node_count)`` plus distinct hyperedges.

    ``hyperedges`` holds each hyperedge as a strictly increasing tuple of node
    ids.  Hyperedges of size 1 are legal; they project to no edges.
    """

    node_count: int
    hyperedges: tuple[Edge, ...]

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        seen: set[Edge] = set()
        for edge in self.hyperedges:
            if not edge:
                raise ValueError("hyperedges must be non-empty")
            if any(edge[i] >= edge[i + 1] for i in range(len(edge) - 1)):
                raise ValueError(f"hyperedge {edge!r} is not a sorted node set")
            if edge[0] < 0 or edge[-1] >= self.node_count:
                raise ValueError(f"hyperedge {edge!r} has node ids outside [0, {self.node_count})")
            if edge in seen:
                raise ValueError(f"duplicate hyperedge {edge!r}")
            seen.add(edge)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], node_count: int | None = None) -> "Hypergraph":
        """Build a hypergraph, dropping duplicate hyperedges with a warning.

        Node ids repeated inside one edge are collapsed (an edge is a set).
        ``node_count`` defaults to ``max node id + 1``.
        """
        canonical: list[Edge] = []
        seen: set[Edge] = set()
        dropped = 0
        for raw in edges:
            edge = _canonical_edge(raw)
            if edge in seen:
                dropped += 1
                continue
            seen.add(edge)
            canonical.append(edge)
        if dropped:
            logger.warning("dropped %d duplicate hyperedge(s)", dropped)
        if node_count is None:
            node_count = 1 + max((e[-1] for e in canonical), default=-1)
        return cls(node_count=node_count, hyperedges=tuple(canonical))

    @cached_property
    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.hyperedges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each node, the indices of the hyperedges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.node_count)]
        for i, edge in enumerate(self.hyperedges):
            for v in edge:
                inc[v].append(i)
        return tuple(tuple(ids) for ids in inc)

    def __len__(self) -> int:
        return len(self.hyperedges)

    def subsample(self, fraction: float, seed: int = 0) -> "Hypergraph":
        """Keep a random ``fraction`` of hyperedges and re-index nodes densely."""
        if not 0 < fraction <= 1:
            raise ValueError("fraction must be in (0, 1]")
        rng = np.random.default_rng(seed)
        m = len(self.hyperedges)
        keep = sorted(rng.permutation(m)[: max(1, int(round(fraction * m)))].tolist())
        return reindex_hypergraph([self.hyperedges[i] for i in keep], seed=seed)[0]


def reindex_hypergraph(edges: Sequence[Edge], seed: int = 0) -> tuple[Hypergraph, dict[int, int]]:
    """Re-index node ids of ``edges`` to a dense random range starting at 0.

    Returns the re-indexed hypergraph and the old-id -> new-id map.  Random
    (rather than order-preserving) re-indexing enforces the inductive setting:
    node identities carry no information across splits.
    """
    nodes = sorted({v for e in edges for v in e})
    perm = np.random.default_rng(seed).permutation(len(nodes))
    mapping = {old: int(perm[i]) for i, old in enumerate(nodes)}
    remapped = [tuple(sorted(mapping[v] for v in e)) for e in edges]
    return Hypergraph.from_edges(remapped, node_count=len(nodes)), mapping


@dataclass(frozen=True)
class ProjectedGraph:
    """Simple undirected graph; edges stored once as ``(u, v)`` with ``u < v``.

    ``multiplicity`` (optional) maps each edge to the number of hyperedges
    containing both endpoints.
    """

    node_count: int
    edges: frozenset[tuple[int, int]]
    multiplicity: Mapping[tuple[int, int], int] | None = None

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) is not an ordered in-range pair")
        if self.multiplicity is not None:
            if set(self.multiplicity) != set(self.edges):
                raise ValueError("multiplicity keys must equal the edge set")
            if any(c < 1 for c in self.multiplicity.values()):
                raise ValueError("multiplicities must be >= 1")

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def project(h: Hypergraph, with_multiplicity: bool = False) -> ProjectedGraph:
    """Project a hypergraph: join every two nodes sharing some hyperedge."""
    if not with_multiplicity:
        edges: set[tuple[int, int]] = set()
        for e in h.hyperedges:
            edges.update(itertools.combinations(e, 2))
        return ProjectedGraph(node_count=h.node_count, edges=frozenset(edges))
    counts: Counter[tuple[int, int]] = Counter()
    for e in h.hyperedges:
        counts.update(itertools.combinations(e, 2))
    return ProjectedGraph(
        node_count=h.node_count,
        edges=frozenset(counts),
        multiplicity=dict(counts),
    )


# ---------------------------------------------------------------------------
# File formats.
#
# Hyperedge list: one hyperedge per line, whitespace-separated integer node
# ids, '#' lines ignored; an optional leading integer column carries a
# timestamp (epoch seconds).  Weighted edge list: "u v w" per line with w a
# positive integer multiplicity.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypergraphFile:
    """A parsed hyperedge-list file.

    ``labels`` maps dense node ids back to the original tokens when the input
    required re-mapping (None when ids were already dense 0-based integers).
    ``records`` preserves the raw (timestamp, edge) rows, duplicates included,
    when the file was parsed with timestamps.
    """

    hypergraph: Hypergraph
    labels: tuple[str, ...] | None = None
    records: tuple[tuple[int, Edge], ...] | None = None


def _parse_rows(path: str | Path, timestamps: bool) -> list[tuple[int, list[str]]]:
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if timestamps:
                if len(tokens) < 2:
                    raise FormatError(path, lineno, "expected a timestamp plus at least one node id")
                try:
                    ts = int(tokens[0])
                except ValueError:
                    raise FormatError(path, lineno, f"bad timestamp {tokens[0]!r}") from None
                rows.append((ts, tokens[1:]))
            else:
                rows.append((0, tokens))
            if not rows[-1][1]:
                raise FormatError(path, lineno, "empty hyperedge")
    return rows


def load_hyperedges(path: str | Path, timestamps: bool = False) -> HypergraphFile:
    """Load a hyperedge-list file.

    Arbitrary node labels are re-mapped to dense 0-based ids (sorted token
    order, numeric when every token is an integer); files whose ids are
    already dense 0-based integers are taken verbatim so saved files
    round-trip exactly.
    """
    rows = _parse_rows(path, timestamps)
    tokens = {t for _, row in rows for t in row}
    labels: tuple[str, ...] | None = None
    try:
        as_int = {t: int(t) for t in tokens}
        dense = bool(tokens) and min(as_int.values()) >= 0 and (
            {v for v in as_int.values()} == set(range(max(as_int.values()) + 1))
        )
    except ValueError:
        as_int, dense = {}, False
    if dense or not tokens:
        mapping = {t: as_int[t] for t in tokens}
    else:
        if as_int:
            ordered = sorted(tokens, key=lambda t: as_int[t])
        else:
            ordered = sorted(tokens)
        mapping = {t: i for i, t in enumerate(ordered)}
        labels = tuple(ordered)
    edges = []
    records = []
    for ts, row in rows:
        edge = _canonical_edge(mapping[t] for t in row)
        edges.append(edge)
        records.append((ts, edge))
    h = Hypergraph.from_edges(edges)
    return HypergraphFile(
        hypergraph=h,
        labels=labels,
        records=tuple(records) if timestamps else None,
    )


def save_hyperedges(path: str | Path, edges: Iterable[Iterable[int]], labels: Sequence[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for edge in edges:
            nodes = sorted(set(edge))
            if labels is not None:
                fh.write(" ".join(labels[v] for v in nodes) + "\n")
            else:
                fh.write(" ".join(str(v) for v in nodes) + "\n")


def _parse_edge_rows(path: str | Path, columns: int) -> dict[tuple[int, int], int]:
    label = "'u v'" if columns == 2 else "'u v w'"
    rows: dict[tuple[int, int], int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(tokens) != columns:
                raise FormatError(path, lineno, f"expected {label}")
            try:
                values = [int(t) for t in tokens]
            except ValueError:
                raise FormatError(path, lineno, f"expected integer {label}") from None
            u, v = values[0], values[1]
            w = values[2] if columns == 3 else 1
            if u == v:
                raise FormatError(path, lineno, "self-loop")
            if w < 1:
                raise FormatError(path, lineno, "multiplicity must be >= 1")
            key = (min(u, v), max(u, v))
            if key in rows:
                raise FormatError(path, lineno, f"duplicate edge {key}")
            rows[key] = w
    return rows


def load_edges(path: str | Path) -> ProjectedGraph:
    """Load a plain "u v" edge list as a graph (no multiplicities)."""
    rows = _parse_edge_rows(path, columns=2)
    max_node = max((v for e in rows for v in e), default=-1)
    return ProjectedGraph(node_count=max_node + 1, edges=frozenset(rows))


def load_weighted_edges(path: str | Path) -> ProjectedGraph:
    """Load a "u v w" weighted edge list as a graph with multiplicities."""
    rows = _parse_edge_rows(path, columns=3)
    max_node = max((v for e in rows for v in e), default=-1)
    return ProjectedGraph(node_count=max_node + 1, edges=frozenset(rows), multiplicity=rows)


def save_weighted_edges(path: str | Path, g: ProjectedGraph) -> None:
    if g.multiplicity is None:
        raise ValueError("graph has no multiplicity map")
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in sorted(g.edges):
            fh.write(f"{u} {v} {g.multiplicity[(u, v)]}\n")
