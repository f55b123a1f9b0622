#!/usr/bin/env python3
"""Download the benchmark corpora and build train/query splits.

Needs network access once; every other command in this repository works
offline from the files this script writes under the data directory
(``$HYPERREC_DATA`` or ``./data``).

Timestamped corpora (enron, dblp) split deterministically; the rest split
into random halves with the given seed.  SHA-256 checksums of downloads are
recorded into ``<data>/checksums.json`` on first fetch and verified on
later runs.

If a source URL moves, download the raw files by hand and point
``--source-dir`` at them: triplet corpora need ``<base>-nverts.txt``,
``<base>-simplices.txt`` and ``<base>-times.txt``; the others need a plain
hyperedge list (one hyperedge per line, whitespace-separated node ids).
"""

from __future__ import annotations

import argparse
import sys
import zipfile
from pathlib import Path

from hyperrec.datasets import (
    REGISTRY,
    build_split,
    data_dir,
    fetch,
    parse_benson_triplet,
)
from hyperrec.hypergraph import load_hyperedges


def find_triplet(root: Path) -> tuple[Path, Path, Path]:
    nverts = sorted(root.rglob("*-nverts.txt"))
    if not nverts:
        raise FileNotFoundError(f"no *-nverts.txt under {root}")
    base = nverts[0].name[: -len("-nverts.txt")]
    folder = nverts[0].parent
    return (
        folder / f"{base}-nverts.txt",
        folder / f"{base}-simplices.txt",
        folder / f"{base}-times.txt",
    )


def prepare(name: str, source_dir: Path | None, seed: int, force: bool) -> None:
    spec = REGISTRY[name]
    if source_dir is None:
        raw = fetch(name, force=force)
        for archive in raw.glob("*.zip"):
            with zipfile.ZipFile(archive) as zf:
                zf.extractall(raw)
    else:
        raw = source_dir
    if spec.source == "benson":
        records = parse_benson_triplet(*find_triplet(raw))
        build_split(name, records=records, seed=seed)
    else:
        lists = sorted(p for p in raw.rglob("*.txt") if "nverts" not in p.name)
        if not lists:
            raise FileNotFoundError(f"no hyperedge list under {raw}")
        edges = list(load_hyperedges(lists[0]).hypergraph.hyperedges)
        build_split(name, edges=edges, seed=seed)
    train, query = (data_dir() / name / s for s in ("train.txt", "query.txt"))
    print(f"{name}: wrote {train} and {query}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("datasets", nargs="*", default=[], help="default: all")
    parser.add_argument("--seed", type=int, default=0, help="seed for random splits")
    parser.add_argument("--source-dir", type=Path, default=None,
                        help="prepare from manually downloaded files (single dataset)")
    parser.add_argument("--force", action="store_true", help="re-download")
    args = parser.parse_args(argv)
    names = args.datasets or sorted(REGISTRY)
    if args.source_dir is not None and len(names) != 1:
        parser.error("--source-dir needs exactly one dataset name")
    failures = 0
    for name in names:
        if name not in REGISTRY:
            parser.error(f"unknown dataset {name!r}; known: {sorted(REGISTRY)}")
        try:
            prepare(name, args.source_dir, args.seed, args.force)
        except Exception as exc:  # keep going; report at the end
            failures += 1
            print(f"{name}: FAILED ({exc})", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
