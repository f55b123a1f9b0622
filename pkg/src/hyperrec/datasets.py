"""Dataset registry, budget presets, and split preparation.

The eight benchmark corpora are not bundled; ``scripts/fetch_data.py``
downloads the raw sources listed here and builds the train/query splits.
None of the core commands require network access: they read plain hyperedge
lists from the data directory (``$HYPERREC_DATA`` or ``./data``), one
directory per dataset holding ``train.txt`` and ``query.txt``.

Split conventions: timestamped corpora split deterministically (Enron at the
published median timestamp, DBLP into the 2011/2010 year slices); the others
split into random halves with the seed recorded in the manifest.  Checksums
of downloaded files are recorded on first fetch into ``checksums.json`` and
verified on later fetches.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .hypergraph import Edge, Hypergraph, load_hyperedges, save_hyperedges
from .pipeline import split_dataset, split_temporal_records

# Sampling budgets that put the training recall inside [0.6, 0.95] on each
# corpus.
BETA_PRESETS: dict[str, int] = {
    "enron": 1_000,
    "dblp": 1_000_000,
    "pschool": 350_000,
    "hschool": 60_000,
    "foursquare": 20_000,
    "hosts-virus": 6_000,
    "directors": 800,
    "crimes": 1_000,
}

# 2001-02-27 23:59 UTC, the median email timestamp splitting Enron.
ENRON_CUTOFF = int(datetime(2001, 2, 27, 23, 59, tzinfo=timezone.utc).timestamp())


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    source: str  # "benson" (nverts/simplices/times triplet) or "plain" edge lists
    urls: tuple[str, ...]
    split: str  # "enron-temporal", "dblp-years", or "random"


REGISTRY: dict[str, DatasetSpec] = {
    spec.name: spec
    for spec in [
        DatasetSpec(
            "enron",
            "benson",
            (
                "https://www.cs.cornell.edu/~arb/data/email-Enron/email-Enron.zip",
            ),
            "enron-temporal",
        ),
        DatasetSpec(
            "dblp",
            "benson",
            (
                "https://www.cs.cornell.edu/~arb/data/coauth-DBLP/coauth-DBLP.zip",
            ),
            "dblp-years",
        ),
        DatasetSpec(
            "pschool",
            "benson",
            (
                "https://www.cs.cornell.edu/~arb/data/contact-primary-school/contact-primary-school.zip",
            ),
            "random",
        ),
        DatasetSpec(
            "hschool",
            "benson",
            (
                "https://www.cs.cornell.edu/~arb/data/contact-high-school/contact-high-school.zip",
            ),
            "random",
        ),
        DatasetSpec(
            "foursquare",
            "plain",
            ("https://github.com/jg-you/hypergraph-rec/raw/master/data/foursquare.txt",),
            "random",
        ),
        DatasetSpec(
            "hosts-virus",
            "plain",
            ("https://github.com/jg-you/hypergraph-rec/raw/master/data/hosts-virus.txt",),
            "random",
        ),
        DatasetSpec(
            "directors",
            "plain",
            ("https://github.com/jg-you/hypergraph-rec/raw/master/data/directors.txt",),
            "random",
        ),
        DatasetSpec(
            "crimes",
            "plain",
            ("https://github.com/jg-you/hypergraph-rec/raw/master/data/crimes.txt",),
            "random",
        ),
    ]
}


def data_dir() -> Path:
    return Path(os.environ.get("HYPERREC_DATA", "data"))


def split_paths(name: str) -> tuple[Path, Path]:
    base = data_dir() / name
    return base / "train.txt", base / "query.txt"


def has_split(name: str) -> bool:
    train, query = split_paths(name)
    return train.is_file() and query.is_file()


def load_split(name: str) -> tuple[Hypergraph, Hypergraph]:
    train, query = split_paths(name)
    if not (train.is_file() and query.is_file()):
        raise FileNotFoundError(
            f"dataset {name!r} not prepared; run scripts/fetch_data.py (needs network)"
        )
    return load_hyperedges(train).hypergraph, load_hyperedges(query).hypergraph


def parse_benson_triplet(
    nverts_path: Path, simplices_path: Path, times_path: Path
) -> list[tuple[int, Edge]]:
    """Read the nverts/simplices/times triplet format into raw records."""
    nverts = [int(t) for t in nverts_path.read_text().split()]
    flat = [int(t) for t in simplices_path.read_text().split()]
    times = [int(t) for t in times_path.read_text().split()]
    if len(times) != len(nverts) or sum(nverts) != len(flat):
        raise ValueError("inconsistent triplet files")
    records: list[tuple[int, Edge]] = []
    pos = 0
    for size, ts in zip(nverts, times):
        edge = tuple(sorted(set(flat[pos : pos + size])))
        pos += size
        records.append((ts, edge))
    return records


def _normalize_seconds(records: list[tuple[int, Edge]]) -> list[tuple[int, Edge]]:
    # millisecond timestamps are far beyond any plausible epoch-second value
    return [(ts // 1000 if ts > 10**11 else ts, e) for ts, e in records]


def build_split(name: str, records: list[tuple[int, Edge]] | None = None,
                edges: list[Edge] | None = None, seed: int = 0) -> tuple[Path, Path]:
    """Build train/query hyperedge lists for one dataset in the data dir."""
    spec = REGISTRY[name]
    if spec.split == "enron-temporal":
        assert records is not None
        h0, h1 = split_temporal_records(_normalize_seconds(records), ENRON_CUTOFF, seed=seed)
    elif spec.split == "dblp-years":
        assert records is not None
        first = list(dict.fromkeys(e for ts, e in records if ts == 2011))
        second = list(dict.fromkeys(e for ts, e in records if ts == 2010))
        from .hypergraph import reindex_hypergraph

        h0, _ = reindex_hypergraph(first, seed=seed * 2 + 1)
        h1, _ = reindex_hypergraph(second, seed=seed * 2 + 2)
    else:
        assert edges is not None
        h = Hypergraph.from_edges(edges)
        h0, h1 = split_dataset(h, mode="random", fraction=0.5, seed=seed)
    train, query = split_paths(name)
    train.parent.mkdir(parents=True, exist_ok=True)
    save_hyperedges(train, h0.hyperedges)
    save_hyperedges(query, h1.hyperedges)
    manifest = {
        "dataset": name,
        "split": spec.split,
        "seed": seed,
        "train_edges": len(h0),
        "query_edges": len(h1),
    }
    (train.parent / "split.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return train, query


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def fetch(name: str, force: bool = False) -> Path:
    """Download the raw files of one dataset into the data dir.

    Checksums are recorded in ``<data>/checksums.json`` on first download and
    verified afterwards.
    """
    import urllib.request

    spec = REGISTRY[name]
    raw_dir = data_dir() / name / "raw"
    raw_dir.mkdir(parents=True, exist_ok=True)
    checks_path = data_dir() / "checksums.json"
    checks = json.loads(checks_path.read_text()) if checks_path.is_file() else {}
    for url in spec.urls:
        target = raw_dir / url.rsplit("/", 1)[-1]
        if target.is_file() and not force:
            continue
        urllib.request.urlretrieve(url, target)
        digest = sha256_file(target)
        if str(target.name) in checks and checks[str(target.name)] != digest:
            raise RuntimeError(f"checksum mismatch for {target}")
        checks[str(target.name)] = digest
    checks_path.write_text(json.dumps(checks, indent=2, sort_keys=True) + "\n")
    return raw_dir
