from __future__ import annotations

import numpy as np
import pytest

from hyperrec.datasets import has_split, load_split


def require_dataset(name: str):
    """Load a prepared train/query split or skip the test.

    The benchmark corpora are fetched with scripts/fetch_data.py (network
    required once); without them the data-gated acceptance criteria cannot
    run.
    """
    if not has_split(name):
        pytest.skip(f"dataset {name!r} not prepared; run scripts/fetch_data.py")
    return load_split(name)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


# The Error II pattern from the motivating example: three hyperedges pairwise
# sharing one node, whose projection has the triangle over the shared nodes
# as an extra maximal clique.
ERROR_II_EDGES = ((0, 1, 2), (2, 3, 4), (4, 5, 0))
ERROR_II_PHANTOM = frozenset({0, 2, 4})


@pytest.fixture
def error_ii_hypergraph():
    from hyperrec import Hypergraph

    return Hypergraph.from_edges(ERROR_II_EDGES)
