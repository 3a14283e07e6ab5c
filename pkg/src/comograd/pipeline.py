"""End-to-end extraction and batch orchestration.

One protein chain flows through: coordinate file -> Cα trace -> distance
matrix -> canonical 128x128 grid -> descriptor. This module wires those
stages together for single files, directory-scale indexing, querying, and
label-based evaluation; the CLI and the service are thin fronts over it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import evalkit, retrieval
from .descriptors import (
    DEFAULT_PARAMS,
    Descriptor,
    DescriptorKind,
    DescriptorParams,
    extract_descriptor,
)
from .distmap import compute_distance_matrix
from .errors import ComogradError, EmptyDatabase, UnknownId
from .rescale import canonicalize
from .retrieval import RankedHit
from .store import FeatureDb
from .structure import CaTrace, parse_structure


def canonical_grid(trace: CaTrace) -> np.ndarray:
    """The chain's distance matrix at canonical size, exactly symmetric.

    A distance matrix is symmetric, and rescaling preserves that in exact
    arithmetic, but the rescaler's matrix products lose it at the last ulp.
    Averaging with the transpose restores it bitwise; without this, the
    diagonal's 45-degree orientations sit on a bin edge and quantize
    nondeterministically, breaking rigid-motion invariance.
    """
    grid = canonicalize(compute_distance_matrix(trace))
    return (grid + grid.T) / 2.0


def descriptor_from_trace(
    trace: CaTrace, kind: DescriptorKind, params: DescriptorParams = DEFAULT_PARAMS
) -> Descriptor:
    """Full single-chain pipeline: distances, canonical grid, descriptor."""
    return extract_descriptor(canonical_grid(trace), kind, params)


def as_stored(desc: Descriptor) -> Descriptor:
    """desc rounded through binary32, the precision the database keeps.

    Query vectors pass through this before distance computation so a stored
    protein queries against itself at exactly distance zero.
    """
    return Descriptor(desc.kind, desc.values.astype(np.float32).astype(np.float64), desc.params)


def extract_from_bytes(
    data: bytes | str,
    kind: DescriptorKind,
    chain: str | None = None,
    base_id: str = "",
    params: DescriptorParams = DEFAULT_PARAMS,
) -> list[tuple[str, Descriptor]]:
    """(id, descriptor) per matching chain of one coordinate file.

    A single-chain file keeps base_id unchanged, so per-domain corpus files
    get ids equal to their file stem; multi-chain files get "stem_chain".
    """
    traces = parse_structure(data, chain=chain, base_id=base_id)
    if len(traces) == 1 and base_id:
        traces = [CaTrace(base_id, traces[0].residues)]
    return [(t.id, descriptor_from_trace(t, kind, params)) for t in traces]


def extract_file(
    path,
    kind: DescriptorKind,
    chain: str | None = None,
    params: DescriptorParams = DEFAULT_PARAMS,
) -> list[tuple[str, Descriptor]]:
    p = Path(path)
    return extract_from_bytes(p.read_bytes(), kind, chain=chain, base_id=p.stem, params=params)


@dataclass
class IndexReport:
    """Outcome of a batch indexing run; skips never abort the batch."""

    indexed: list[str] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)  # (unit, reason)

    def summary(self) -> str:
        lines = [f"indexed\t{len(self.indexed)}", f"skipped\t{len(self.skipped)}"]
        lines += [f"skip\t{unit}\t{reason}" for unit, reason in self.skipped]
        return "\n".join(lines)


def index_paths(
    paths,
    kind: DescriptorKind,
    params: DescriptorParams = DEFAULT_PARAMS,
    workers: int | None = None,
) -> tuple[FeatureDb, IndexReport]:
    """Extract every chain of every file into a FeatureDb.

    Extraction is pure, so files are processed on a thread pool; results are
    collected in input order, making the db independent of thread timing.
    Per-file and per-chain failures are reported and skipped, never fatal.
    """
    files = [Path(p) for p in paths]

    def one_file(p: Path) -> tuple[list[tuple[str, Descriptor]], list[tuple[str, str]]]:
        good: list[tuple[str, Descriptor]] = []
        bad: list[tuple[str, str]] = []
        try:
            traces = parse_structure(p.read_bytes(), base_id=p.stem)
        except (ComogradError, OSError, UnicodeDecodeError) as exc:
            return [], [(str(p), f"{type(exc).__name__}: {exc}")]
        if len(traces) == 1:
            traces = [CaTrace(p.stem, traces[0].residues)]
        for t in traces:
            try:
                good.append((t.id, descriptor_from_trace(t, kind, params)))
            except ComogradError as exc:
                bad.append((t.id, f"{type(exc).__name__}: {exc}"))
        return good, bad

    if workers is not None and workers > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one_file, files))
    else:
        outcomes = [one_file(p) for p in files]

    report = IndexReport()
    entries: list[tuple[str, Descriptor]] = []
    seen: set[str] = set()
    for good, bad in outcomes:
        report.skipped += bad
        for entry_id, desc in good:
            if entry_id in seen:
                raise ValueError(f"duplicate id {entry_id!r} across input files")
            seen.add(entry_id)
            entries.append((entry_id, desc))
            report.indexed.append(entry_id)
    return FeatureDb.from_descriptors(kind, entries, params), report


def index_directory(
    directory,
    kind: DescriptorKind,
    params: DescriptorParams = DEFAULT_PARAMS,
    workers: int | None = None,
) -> tuple[FeatureDb, IndexReport]:
    """index_paths over every regular non-hidden file, sorted by name."""
    root = Path(directory)
    files = sorted(
        p for p in root.iterdir() if p.is_file() and not p.name.startswith(".")
    )
    return index_paths(files, kind, params, workers=workers)


def query_bytes(
    db: FeatureDb,
    data: bytes | str,
    k: int,
    chain: str | None = None,
    partitions: int = 1,
) -> list[RankedHit]:
    """Extract the first matching chain of a coordinate file and rank it
    against db with the db's own extraction parameters."""
    traces = parse_structure(data, chain=chain)
    desc = as_stored(descriptor_from_trace(traces[0], db.kind, db.params))
    return retrieval.query(db, desc, k, partitions=partitions)


def query_file(db: FeatureDb, path, k: int, chain: str | None = None) -> list[RankedHit]:
    return query_bytes(db, Path(path).read_bytes(), k, chain=chain)


def stored_descriptor(db: FeatureDb, entry_id: str) -> Descriptor:
    """The descriptor stored under entry_id, widened to float64."""
    try:
        row = db.values[db.ids.index(entry_id)]
    except ValueError:
        raise UnknownId(f"id {entry_id!r} is not in the database") from None
    return Descriptor(db.kind, row.astype(np.float64), db.params)


def evaluate(
    db: FeatureDb,
    query_ids,
    labels,
    k_values=range(5, 55, 5),
) -> dict[str, evalkit.MatchCurve]:
    """Leave-self-out retrieval curves for the given stored queries.

    Each query's vector is taken from the db itself; the query's own entry
    is dropped from its ranking before scoring, so one extra hit is fetched
    to keep k results available.
    """
    ks = sorted(set(int(k) for k in k_values))
    if not ks:
        raise ValueError("k_values must be non-empty")
    if len(db) == 0:
        raise EmptyDatabase("cannot evaluate an empty database")
    fetch = min(ks[-1] + 1, len(db))
    results = {}
    for query_id in query_ids:
        hits = retrieval.query(db, stored_descriptor(db, query_id), fetch)
        results[query_id] = evalkit.drop_self(query_id, [h.id for h in hits])
    return evalkit.match_curves(results, labels, ks)
