"""Budgeted clique sampling.

A sampler is a ratio ``r[n, k]`` per table cell: from every size-n maximal
clique, size-k subsets are drawn so that each (clique, subset) pair is kept
independently with probability ``r[n, k]``, under a total budget
``sum(r * pair_space) <= beta``.  Ratios are optimized greedily on the
training table, column by column, picking the cell with the best marginal
rate of fresh hyperedges per unit of budget; the greedy is within a factor
``1 - 1/e`` of the best possible sampler.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator

from .cliques import CliqueSet, maximal_cliques
from .diagnostics import RhoTable, rho_table
from .hypergraph import Hypergraph, ProjectedGraph, project

Cell = tuple[int, int]

# Full subset enumeration is cheaper than rejection sampling up to this many
# k-subsets per clique.
_ENUMERATION_CUTOFF = 4096

# numpy's binomial sampler needs the trial count in int64 range; beyond that
# the Poisson limit is exact to far more precision than we need.
_BINOMIAL_MAX_N = 2**62


@dataclass(frozen=True)
class SamplerPlan:
    """Per-cell sampling ratios under a budget, plus the training-side yield.

    At most one cell is partially sampled (``0 < r < 1``); the expected number
    of drawn pairs ``sum(r * pair_space)`` never exceeds ``beta``.
    """

    beta: int
    ratios: dict[Cell, float]
    expected_yield: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "beta": self.beta,
                "cells": [
                    {"n": n, "k": k, "r": r} for (n, k), r in sorted(self.ratios.items())
                ],
                "expected_yield": self.expected_yield,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SamplerPlan":
        data = json.loads(text)
        return cls(
            beta=int(data["beta"]),
            ratios={(int(c["n"]), int(c["k"])): float(c["r"]) for c in data["cells"]},
            expected_yield=float(data["expected_yield"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SamplerPlan":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def expected_yield(plan: SamplerPlan, table: RhoTable) -> float:
    """Expected number of distinct hyperedges the plan collects on ``table``.

    Cells of one column overlap (the same hyperedge can sit inside maximal
    cliques of several sizes), so each hyperedge contributes
    ``1 - prod(1 - r)`` over the cells holding it; cells sample independently.
    """
    total = 0.0
    for eid, cells in table.edge_cells.items():
        miss = 1.0
        for cell in cells:
            miss *= 1.0 - plan.ratios.get(cell, 0.0)
        total += 1.0 - miss
    return total


def optimize_plan(table: RhoTable, beta: int) -> SamplerPlan:
    """Greedy budget allocation over table cells.

    Column state tracks the union of already-picked hyperedges; each round
    selects the cell with the highest marginal efficiency (fresh hyperedges
    per pair of budget), spends ``min(1, remaining/pair_space)`` of it, and
    continues until the budget runs out or every cell is taken.  Ties break
    toward the smaller column then the smaller row for determinism.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    columns: dict[int, list[int]] = {}
    for n, k in table.cells:
        columns.setdefault(k, []).append(n)

    gamma: dict[int, set[int]] = {k: set() for k in columns}
    available: dict[int, set[int]] = {k: set(ns) for k, ns in columns.items()}
    ratios: dict[Cell, float] = {}

    def update(k: int) -> tuple[float, int]:
        best_delta, best_n = -1.0, 0
        for n in sorted(available[k]):
            cell = table.cells[(n, k)]
            fresh = len(cell.edge_ids - gamma[k])
            delta = fresh / cell.pair_space
            if delta > best_delta:
                best_delta, best_n = delta, n
        return (best_delta, best_n) if available[k] else (-1.0, 0)

    frontier = {k: update(k) for k in columns}
    remaining = float(beta)
    while remaining > 0 and any(available[k] for k in columns):
        k = max(
            (k for k in columns if available[k]),
            key=lambda kk: (frontier[kk][0], -kk),
        )
        delta, n = frontier[k]
        cell = table.cells[(n, k)]
        ratios[(n, k)] = min(1.0, remaining / cell.pair_space)
        gamma[k] |= cell.edge_ids
        available[k].discard(n)
        remaining -= cell.pair_space
        frontier[k] = update(k)

    plan = SamplerPlan(beta=beta, ratios=ratios, expected_yield=0.0)
    return SamplerPlan(beta=beta, ratios=ratios, expected_yield=expected_yield(plan, table))


@dataclass(frozen=True)
class CandidateSet:
    """Deduplicated candidate cliques with per-candidate provenance.

    ``provenance[i]`` lists the (n, k) cells candidate ``i`` was drawn from;
    heuristic (ablation) draws carry an empty provenance.  ``labels`` flags
    true hyperedges when ground truth was supplied.
    """

    candidates: tuple[tuple[int, ...], ...]
    provenance: tuple[tuple[Cell, ...], ...]
    labels: tuple[bool, ...] | None = None

    def __len__(self) -> int:
        return len(self.candidates)

    def with_labels(self, truth: Hypergraph) -> "CandidateSet":
        edges = set(truth.edge_sets)
        return CandidateSet(
            candidates=self.candidates,
            provenance=self.provenance,
            labels=tuple(frozenset(c) in edges for c in self.candidates),
        )


def _draw_distinct_subsets(rng: np.random.Generator, clique: tuple[int, ...], k: int, count: int):
    """Draw ``count`` distinct size-k subsets of ``clique`` uniformly."""
    total = math.comb(len(clique), k)
    if count >= total:
        return list(itertools.combinations(clique, k))
    if total <= _ENUMERATION_CUTOFF:
        combos = list(itertools.combinations(clique, k))
        picks = rng.choice(total, size=count, replace=False)
        return [combos[i] for i in sorted(picks)]
    nodes = np.array(clique)
    seen: set[tuple[int, ...]] = set()
    while len(seen) < count:
        pick = tuple(sorted(rng.choice(nodes, size=k, replace=False).tolist()))
        seen.add(pick)
    return sorted(seen)


def draw_candidates(
    g: ProjectedGraph,
    cliques: CliqueSet,
    plan: SamplerPlan,
    seed: int,
    truth: Hypergraph | None = None,
) -> CandidateSet:
    """Sample candidate cliques from ``g`` per the plan's cell ratios.

    Every (size-n maximal clique, size-k subset) pair of the query graph is
    retained independently with probability ``r[n, k]``: the per-clique draw
    count is binomial, then that many distinct subsets are drawn uniformly.
    Plan cells with no size-n cliques in ``g`` are skipped (the query's clique
    size distribution need not match training exactly).  Deterministic given
    ``seed``; each (cell, clique) pair gets its own derived random stream.
    """
    found: dict[tuple[int, ...], list[Cell]] = {}
    for (n, k), r in sorted(plan.ratios.items()):
        if r <= 0:
            continue
        for idx, clique in enumerate(cliques.by_size.get(n, ())):
            rng = np.random.default_rng(np.random.SeedSequence((seed, n, k, idx)))
            total = math.comb(n, k)
            if r >= 1.0:
                count = total
            elif total > _BINOMIAL_MAX_N:
                count = int(rng.poisson(r * total))
            else:
                count = int(rng.binomial(total, r))
            if count == 0:
                continue
            for subset in _draw_distinct_subsets(rng, clique, k, count):
                found.setdefault(subset, []).append((n, k))
    ordered = sorted(found)
    out = CandidateSet(
        candidates=tuple(ordered),
        provenance=tuple(tuple(dict.fromkeys(found[c])) for c in ordered),
    )
    return out.with_labels(truth) if truth is not None else out


ABLATION_KINDS = ("random", "small", "head_and_tail")


def _sample_pool(rng: np.random.Generator, pool: list[tuple[int, ...]], beta: int):
    if beta >= len(pool):
        return pool
    picks = rng.choice(len(pool), size=beta, replace=False)
    return [pool[i] for i in sorted(picks)]


def ablation_sampler(
    g: ProjectedGraph,
    cliques: CliqueSet,
    kind: str,
    beta: int,
    seed: int,
) -> CandidateSet:
    """Sampling heuristics that replace the optimized plan in ablations.

    "random" grows a clique from a random node up to a random target size,
    ``beta`` times; "small" draws ``beta`` cliques of sizes 1-2 (nodes and
    edges); "head_and_tail" draws ``beta`` cliques from sizes 1-2 plus the
    maximal cliques.  All results are deduplicated.
    """
    if kind not in ABLATION_KINDS:
        raise ValueError(f"kind must be one of {ABLATION_KINDS}")
    rng = np.random.default_rng(np.random.SeedSequence((seed, ABLATION_KINDS.index(kind))))
    nodes = [(v,) for v in range(g.node_count)]
    edges = sorted(g.edges)
    if kind == "small":
        chosen = _sample_pool(rng, nodes + edges, beta)
    elif kind == "head_and_tail":
        pool = list(dict.fromkeys(nodes + edges + list(cliques.cliques)))
        chosen = _sample_pool(rng, pool, beta)
    else:
        max_size = cliques.max_size
        adj = g.adjacency
        grown: set[tuple[int, ...]] = set()
        for _ in range(beta):
            if g.node_count == 0:
                break
            v = int(rng.integers(g.node_count))
            target = int(rng.integers(1, max(max_size, 1) + 1))
            clique = [v]
            cand = set(adj[v])
            while len(clique) < target and cand:
                u = sorted(cand)[int(rng.integers(len(cand)))]
                clique.append(u)
                cand &= adj[u]
            grown.add(tuple(sorted(clique)))
        chosen = sorted(grown)
    deduped = sorted(set(tuple(c) for c in chosen))
    return CandidateSet(candidates=tuple(deduped), provenance=tuple(() for _ in deduped))


class CliqueSampler(BaseEstimator):
    """Estimator facade: learn a sampling plan on a training hypergraph, then
    draw candidate cliques from any projected graph with it.
    """

    def __init__(self, beta: int = 10_000, seed: int = 0):
        self.beta = beta
        self.seed = seed

    def fit(self, hypergraph: Hypergraph, cliques: CliqueSet | None = None):
        if cliques is None:
            cliques = maximal_cliques(project(hypergraph))
        self.table_ = rho_table(hypergraph, cliques)
        self.plan_ = optimize_plan(self.table_, self.beta)
        self.training_recall_ = (
            self.plan_.expected_yield / len(hypergraph) if len(hypergraph) else 0.0
        )
        return self

    def sample(
        self,
        g: ProjectedGraph,
        cliques: CliqueSet | None = None,
        truth: Hypergraph | None = None,
    ) -> CandidateSet:
        if cliques is None:
            cliques = maximal_cliques(g)
        return draw_candidates(g, cliques, self.plan_, seed=self.seed, truth=truth)
