"""Topological diagnostics: error partitioning, density tables, summaries.

``error_partition`` splits the mistakes of the max-clique reconstruction into
the share caused by nested hyperedges (Error I) and the share caused by
non-conformal overlaps (Error II).  ``rho_table`` measures, per cell (n, k),
how densely size-k hyperedges populate the size-k subsets of size-n maximal
cliques; the clique sampler is optimized against that table.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Mapping

import numpy as np

from .cliques import CliqueSet, maximal_cliques
from .hypergraph import Hypergraph, project


@dataclass(frozen=True)
class ErrorReport:
    """Counts and normalized shares of the max-clique reconstruction errors.

    ``e_unnested`` counts hyperedges not properly contained in another
    hyperedge.  All shares are normalized by ``|hyperedges ∪ maximal cliques|``
    and satisfy ``error1 + error2 + jaccard_maxclique == 1`` exactly.
    """

    e_total: int
    e_unnested: int
    m_total: int
    error1: float
    error2: float
    jaccard_maxclique: float

    def to_dict(self) -> dict:
        return {
            "hyperedges": self.e_total,
            "unnested_hyperedges": self.e_unnested,
            "maximal_cliques": self.m_total,
            "error1": self.error1,
            "error2": self.error2,
            "jaccard_maxclique": self.jaccard_maxclique,
        }


def unnested_hyperedges(h: Hypergraph) -> frozenset[frozenset[int]]:
    """Hyperedges that are not a proper subset of any other hyperedge."""
    inc = h.incidence
    out = []
    for i, edge in enumerate(h.hyperedges):
        containing = set(inc[edge[0]])
        for v in edge[1:]:
            containing.intersection_update(inc[v])
            if len(containing) == 1:
                break
        if not any(len(h.hyperedges[j]) > len(edge) for j in containing):
            out.append(h.edge_sets[i])
    return frozenset(out)


def error_partition(h: Hypergraph, cliques: CliqueSet | None = None) -> ErrorReport:
    """Partition the max-clique reconstruction errors of ``h``.

    A hyperedge failing for both reasons (nested and non-conformal) is
    attributed to Error I.
    """
    if cliques is None:
        cliques = maximal_cliques(project(h))
    edges = set(h.edge_sets)
    unnested = unnested_hyperedges(h)
    clique_sets = set(cliques.as_sets)
    union = len(edges | clique_sets)
    if union == 0:
        return ErrorReport(0, 0, 0, 0.0, 0.0, 1.0)
    nested = len(edges) - len(unnested)
    e2 = len(clique_sets - unnested) + len(unnested - clique_sets)
    inter = len(edges & clique_sets)
    return ErrorReport(
        e_total=len(edges),
        e_unnested=len(unnested),
        m_total=len(clique_sets),
        error1=nested / union,
        error2=e2 / union,
        jaccard_maxclique=inter / union,
    )


@dataclass(frozen=True)
class RhoCell:
    """One (n, k) cell: hyperedge ids found in the cell plus its pair space.

    ``pair_space`` is the number of (size-n maximal clique, size-k subset)
    pairs: ``count(size-n cliques) * C(n, k)``.
    """

    edge_ids: frozenset[int]
    pair_space: int

    @property
    def rho(self) -> float:
        return len(self.edge_ids) / self.pair_space


@dataclass(frozen=True)
class RhoTable:
    """Per-(n, k) hyperedge density over the maximal-clique subset space."""

    max_clique_size: int
    cells: Mapping[tuple[int, int], RhoCell]

    def __post_init__(self):
        for (n, k), cell in self.cells.items():
            if not 1 <= k <= n <= self.max_clique_size:
                raise ValueError(f"cell ({n}, {k}) outside the valid triangle")
            if cell.pair_space <= 0:
                raise ValueError(f"cell ({n}, {k}) has empty pair space; omit it")
            if len(cell.edge_ids) > cell.pair_space:
                raise ValueError(f"cell ({n}, {k}) has rho > 1")

    def rho(self, n: int, k: int) -> float:
        cell = self.cells.get((n, k))
        return cell.rho if cell is not None else 0.0

    @cached_property
    def edge_cells(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """For each hyperedge id, the cells that contain it."""
        where: dict[int, list[tuple[int, int]]] = {}
        for key in sorted(self.cells):
            for eid in self.cells[key].edge_ids:
                where.setdefault(eid, []).append(key)
        return {eid: tuple(ks) for eid, ks in where.items()}

    def to_rows(self) -> list[tuple[int, int, int, int, float]]:
        return [
            (n, k, len(cell.edge_ids), cell.pair_space, cell.rho)
            for (n, k), cell in sorted(self.cells.items())
        ]


def rho_table(h: Hypergraph, cliques: CliqueSet | None = None) -> RhoTable:
    """Build the exact (n, k) density table of ``h``.

    Matches every hyperedge against the maximal cliques containing it through
    per-node incidence lists, so work stays near-linear in the clique count
    for sparse hypergraphs.
    """
    if cliques is None:
        cliques = maximal_cliques(project(h))
    inc = h.incidence
    edge_sets = h.edge_sets
    found: dict[tuple[int, int], set[int]] = {}
    size_counts: dict[int, int] = {}
    for clique in cliques:
        n = len(clique)
        size_counts[n] = size_counts.get(n, 0) + 1
        cnodes = frozenset(clique)
        seen: set[int] = set()
        for v in clique:
            for eid in inc[v]:
                if eid in seen:
                    continue
                seen.add(eid)
                if edge_sets[eid] <= cnodes:
                    found.setdefault((n, len(edge_sets[eid])), set()).add(eid)
    cells = {}
    for n, count in size_counts.items():
        for k in range(1, n + 1):
            cells[(n, k)] = RhoCell(
                edge_ids=frozenset(found.get((n, k), ())),
                pair_space=count * math.comb(n, k),
            )
    return RhoTable(max_clique_size=max(size_counts, default=0), cells=cells)


def rho_distance(a: RhoTable, b: RhoTable) -> float:
    """Mean squared difference of cell densities after aligning the two tables.

    Cells absent from one table read as 0; cells absent from both are ignored.
    """
    keys = set(a.cells) | set(b.cells)
    if not keys:
        return 0.0
    return sum((a.rho(n, k) - b.rho(n, k)) ** 2 for n, k in keys) / len(keys)


@dataclass(frozen=True)
class PropertyVector:
    """Summary statistics of a hypergraph (size distribution uses the
    population standard deviation; degree-0 nodes count in the denominator of
    ``avg_node_degree``)."""

    e_count: int
    mean_size: float
    std_size: float
    avg_node_degree: float

    def as_array(self) -> np.ndarray:
        return np.array([self.e_count, self.mean_size, self.std_size, self.avg_node_degree])

    def to_dict(self) -> dict:
        return {
            "hyperedges": self.e_count,
            "mean_size": self.mean_size,
            "std_size": self.std_size,
            "avg_node_degree": self.avg_node_degree,
        }


def property_vector(h: Hypergraph) -> PropertyVector:
    sizes = np.array([len(e) for e in h.hyperedges], dtype=float)
    if len(sizes) == 0:
        return PropertyVector(0, 0.0, 0.0, 0.0)
    degree_total = float(sizes.sum())
    return PropertyVector(
        e_count=len(sizes),
        mean_size=float(sizes.mean()),
        std_size=float(sizes.std()),
        avg_node_degree=degree_total / h.node_count if h.node_count else 0.0,
    )


def write_rho_csv(path: str | Path, table: RhoTable) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "k", "count_E", "count_Q", "rho_hat"])
        for row in table.to_rows():
            writer.writerow(row)
