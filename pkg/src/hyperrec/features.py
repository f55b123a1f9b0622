"""Structural feature extractors for candidate cliques.

Two extractors characterize a target clique C inside a projected graph:

* ``count_features`` - 8 generalized counts over C's nodes, edges, and the
  maximal cliques covering them.
* ``motif_features`` - distributions of 13 connectivity patterns ("clique
  motifs") between 1-2 nodes of C and 1-2 maximal cliques containing at least
  one of those nodes, each summarized by [mean, std, min, max]: 52 values.

The motif taxonomy is frozen as the exhaustive set of non-isomorphic
patterns, distinguished by which marked nodes each clique contains and by
whether the two cliques intersect exactly in their shared marked nodes or
beyond.  Writing M, M' for maximal cliques and o/x for the one or two marked
nodes of C:

    type  1:   [ o ]            one clique containing the node
    type  2:   [ o ]--[ o ]     two cliques meeting exactly at the node
    type  3:   [ o ]==[ o ]     two cliques sharing the node and more

    type  4:   [ o x ]          one clique containing both nodes
    type  5:   [ o ] x          one clique containing exactly one node
    type  6:   [ o x ]--[ o x ] both contain both; intersection is {o, x}
    type  7:   [ o x ]==[ o x ] both contain both; intersection is larger
    type  8:   [ o x ]--[ o ]   one contains both, one contains o only;
                                intersection is {o}
    type  9:   [ o x ]==[ o ]   same membership; intersection is larger
    type 10:   [ o ]  [ x ]     each contains one node; cliques disjoint
    type 11:   [ o ]~~[ x ]     each contains one node; cliques intersect
    type 12:   [ o ]--[ o ] x   both contain o, neither contains x;
                                intersection is {o}
    type 13:   [ o ]==[ o ] x   same membership; intersection is larger

(-- marks intersection exactly in the shared marked nodes, == a strictly
larger intersection, ~~ a non-empty intersection avoiding both marks.)
Asymmetric pair patterns are counted in both orientations of (o, x).
"""

from __future__ import annotations

import csv
import itertools
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .cliques import CliqueSet, maximal_cliques
from .hypergraph import ProjectedGraph

COUNT_FEATURE_NAMES = (
    "size",
    "avg_degree",
    "avg_neighbor_degree",
    "avg_clique_membership",
    "avg_edge_clique_cover",
    "all_edges_multicovered",
    "avg_clustering",
    "avg_containing_clique_size",
)

MOTIF_COUNT = 13
SUMMARY_STATS = ("mean", "std", "min", "max")
MOTIF_FEATURE_NAMES = tuple(
    f"motif{i:02d}_{stat}" for i in range(1, MOTIF_COUNT + 1) for stat in SUMMARY_STATS
)

SCHEMAS = {"count": COUNT_FEATURE_NAMES, "motif": MOTIF_FEATURE_NAMES}

# Build a dense clique-node incidence matrix only while it stays small.
_DENSE_INCIDENCE_CELLS = 50_000_000
# Switch from per-pair set intersections to matrix products past this many
# clique pairs.
_MATMUL_CUTOFF = 1024


def summarize(counts: Sequence[float] | np.ndarray) -> np.ndarray:
    """[mean, population std, min, max] of a count distribution; zeros when empty."""
    arr = np.asarray(counts, dtype=float)
    if arr.size == 0:
        return np.zeros(4)
    return np.array([arr.mean(), arr.std(), arr.min(), arr.max()])


class MotifContext:
    """Shared per-graph state for feature extraction.

    Holds the projected graph, its maximal cliques, and the node-to-clique
    index, plus lazy caches for degrees, clustering coefficients, and motif
    counts.  Extraction through a context is a pure function of (clique,
    graph), so one context can serve any number of candidates.
    """

    def __init__(self, graph: ProjectedGraph, cliques: CliqueSet | None = None):
        self.graph = graph
        self.cliques = cliques if cliques is not None else maximal_cliques(graph)
        node_to_cliques: list[list[int]] = [[] for _ in range(graph.node_count)]
        for idx, clique in enumerate(self.cliques):
            for v in clique:
                node_to_cliques[v].append(idx)
        self.node_to_cliques: tuple[tuple[int, ...], ...] = tuple(
            tuple(ids) for ids in node_to_cliques
        )
        self._clique_sets = [frozenset(c) for c in self.cliques]
        self._sizes = np.array([len(c) for c in self.cliques], dtype=np.int64)
        self._incidence: np.ndarray | None = None
        if len(self.cliques) * max(graph.node_count, 1) <= _DENSE_INCIDENCE_CELLS:
            inc = np.zeros((len(self.cliques), graph.node_count), dtype=np.float32)
            for idx, clique in enumerate(self.cliques):
                inc[idx, list(clique)] = 1.0
            self._incidence = inc
        self._nbr_deg: dict[int, float] = {}
        self._cc: dict[int, float] = {}
        self._edge_cover: dict[tuple[int, int], int] = {}
        self._single_motifs: dict[int, np.ndarray] = {}
        self._pair_motifs: dict[tuple[int, int], np.ndarray] = {}

    # -- plain graph statistics -------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.graph.adjacency[v])

    def neighbor_degree_mean(self, v: int) -> float:
        if v not in self._nbr_deg:
            nbrs = self.graph.adjacency[v]
            self._nbr_deg[v] = (
                sum(self.degree(u) for u in nbrs) / len(nbrs) if nbrs else 0.0
            )
        return self._nbr_deg[v]

    def clustering(self, v: int) -> float:
        if v not in self._cc:
            nbrs = self.graph.adjacency[v]
            d = len(nbrs)
            if d < 2:
                self._cc[v] = 0.0
            else:
                links = sum(len(self.graph.adjacency[u] & nbrs) for u in nbrs) // 2
                self._cc[v] = 2.0 * links / (d * (d - 1))
        return self._cc[v]

    # -- maximal-clique statistics ----------------------------------------

    def edge_cover_count(self, u: int, v: int) -> int:
        """Number of maximal cliques containing both endpoints."""
        key = (u, v) if u < v else (v, u)
        if key not in self._edge_cover:
            a, b = self.node_to_cliques[key[0]], self.node_to_cliques[key[1]]
            if len(a) > len(b):
                a, b = b, a
            bset = set(b)
            self._edge_cover[key] = sum(1 for i in a if i in bset)
        return self._edge_cover[key]

    def cliques_containing(self, nodes: Iterable[int]) -> list[int]:
        """Indices of maximal cliques containing every node of ``nodes``."""
        ordered = sorted(set(nodes), key=lambda v: len(self.node_to_cliques[v]))
        found = set(self.node_to_cliques[ordered[0]])
        for v in ordered[1:]:
            found.intersection_update(self.node_to_cliques[v])
            if not found:
                break
        return sorted(found)

    # -- pairwise clique intersections ------------------------------------

    def _intersection_matrix(self, rows: list[int]) -> np.ndarray:
        if self._incidence is not None and len(rows) * len(rows) > _MATMUL_CUTOFF:
            sub = self._incidence[rows]
            return np.rint(sub @ sub.T).astype(np.int64)
        cs = self._clique_sets
        out = np.empty((len(rows), len(rows)), dtype=np.int64)
        for i, a in enumerate(rows):
            out[i, i] = len(cs[a])
            for j in range(i + 1, len(rows)):
                size = len(cs[a] & cs[rows[j]])
                out[i, j] = size
                out[j, i] = size
        return out

    def single_motif_counts(self, v: int) -> np.ndarray:
        """COUNT of motif types 1-3 at node ``v``."""
        if v not in self._single_motifs:
            rows = list(self.node_to_cliques[v])
            t1 = len(rows)
            if t1 < 2:
                counts = np.array([t1, 0, 0], dtype=np.int64)
            else:
                inter = self._intersection_matrix(rows)
                iu = np.triu_indices(len(rows), k=1)
                vals = inter[iu]
                counts = np.array(
                    [t1, int((vals == 1).sum()), int((vals >= 2).sum())], dtype=np.int64
                )
            self._single_motifs[v] = counts
        return self._single_motifs[v]

    def pair_motif_counts(self, u: int, v: int) -> np.ndarray:
        """COUNT of motif types 4-13 at the node pair ``{u, v}``."""
        key = (u, v) if u < v else (v, u)
        if key not in self._pair_motifs:
            self._pair_motifs[key] = self._compute_pair_motifs(*key)
        return self._pair_motifs[key]

    def _compute_pair_motifs(self, u: int, v: int) -> np.ndarray:
        mu, mv = set(self.node_to_cliques[u]), set(self.node_to_cliques[v])
        both = mu & mv
        only_u = sorted(mu - both)
        only_v = sorted(mv - both)
        shared = sorted(both)
        rows = shared + only_u + only_v
        counts = np.zeros(10, dtype=np.int64)
        counts[0] = len(shared)                  # type 4
        counts[1] = len(only_u) + len(only_v)    # type 5
        if len(rows) >= 2:
            inter = self._intersection_matrix(rows)
            ns, na = len(shared), len(only_u)
            sl_s = slice(0, ns)
            sl_a = slice(ns, ns + na)
            sl_b = slice(ns + na, len(rows))
            if ns >= 2:
                iu = np.triu_indices(ns, k=1)
                vals = inter[sl_s, sl_s][iu]
                counts[2] = int((vals == 2).sum())       # type 6
                counts[3] = int((vals >= 3).sum())       # type 7
            for sl in (sl_a, sl_b):
                block = inter[sl_s, sl]
                counts[4] += int((block == 1).sum())     # type 8
                counts[5] += int((block >= 2).sum())     # type 9
            cross = inter[sl_a, sl_b]
            counts[6] = int((cross == 0).sum())          # type 10
            counts[7] = int((cross >= 1).sum())          # type 11
            for sl, count in ((sl_a, len(only_u)), (sl_b, len(only_v))):
                if count >= 2:
                    iu = np.triu_indices(count, k=1)
                    vals = inter[sl, sl][iu]
                    counts[8] += int((vals == 1).sum())  # type 12
                    counts[9] += int((vals >= 2).sum())  # type 13
        return counts


def count_features(c: Sequence[int], ctx: MotifContext) -> np.ndarray:
    """The 8 count features of clique ``c``; see module docstring for order.

    Edge-indexed features of a single node read off their degenerate values:
    the mean over zero edges is 0 and the empty product is 1.
    """
    nodes = sorted(set(c))
    size = len(nodes)
    pairs = list(itertools.combinations(nodes, 2))
    covers = [ctx.edge_cover_count(a, b) for a, b in pairs]
    containing = ctx.cliques_containing(nodes)
    return np.array(
        [
            float(size),
            sum(ctx.degree(v) for v in nodes) / size,
            sum(ctx.neighbor_degree_mean(v) for v in nodes) / size,
            sum(len(ctx.node_to_cliques[v]) for v in nodes) / size,
            sum(covers) / len(covers) if covers else 0.0,
            float(all(cv > 1 for cv in covers)),
            sum(ctx.clustering(v) for v in nodes) / size,
            sum(len(ctx.cliques.cliques[i]) for i in containing) / len(containing)
            if containing
            else 0.0,
        ]
    )


def motif_features(c: Sequence[int], ctx: MotifContext) -> np.ndarray:
    """The 52 motif features of clique ``c``: per-type count distributions
    over its nodes (types 1-3) or node pairs (types 4-13), each summarized by
    [mean, std, min, max].  Distributions over zero items summarize to zeros.
    """
    nodes = sorted(set(c))
    singles = np.array([ctx.single_motif_counts(v) for v in nodes])
    out = [summarize(singles[:, i]) for i in range(3)]
    pair_rows = [
        ctx.pair_motif_counts(a, b) for a, b in itertools.combinations(nodes, 2)
    ]
    if pair_rows:
        pair_mat = np.array(pair_rows)
        out.extend(summarize(pair_mat[:, i]) for i in range(10))
    else:
        out.extend(np.zeros(4) for _ in range(10))
    return np.concatenate(out)


Extractor = Callable[[Sequence[int], MotifContext], np.ndarray]

EXTRACTORS: dict[str, Extractor] = {"count": count_features, "motif": motif_features}


def resolve_extractor(extractor: str | Extractor) -> tuple[Extractor, str | None]:
    if callable(extractor):
        return extractor, None
    if extractor not in EXTRACTORS:
        raise ValueError(f"unknown extractor {extractor!r}; expected one of {sorted(EXTRACTORS)}")
    return EXTRACTORS[extractor], extractor


def extract_matrix(
    candidates: Iterable[Sequence[int]],
    ctx: MotifContext,
    extractor: str | Extractor = "count",
) -> np.ndarray:
    fn, _ = resolve_extractor(extractor)
    rows = [fn(c, ctx) for c in candidates]
    if not rows:
        width = len(SCHEMAS.get(extractor, ())) if isinstance(extractor, str) else 0
        return np.zeros((0, width))
    return np.vstack(rows)


def write_feature_csv(
    path: str | Path,
    matrix: np.ndarray,
    schema: str | Sequence[str] = "count",
    candidates: Sequence[Sequence[int]] | None = None,
) -> None:
    """Dump a feature matrix (one candidate per row) for offline analysis."""
    names = list(SCHEMAS[schema]) if isinstance(schema, str) else list(schema)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = (["candidate"] if candidates is not None else []) + names
        writer.writerow(header)
        for i, row in enumerate(matrix):
            prefix = [" ".join(map(str, candidates[i]))] if candidates is not None else []
            writer.writerow(prefix + [f"{x:.10g}" for x in row])
