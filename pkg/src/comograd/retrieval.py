"""Exhaustive nearest-neighbour search over a feature database.

Every query is compared against every stored vector; no approximate index.
Distances are computed in double precision even though storage is binary32,
so the sort order does not depend on accumulation quirks, and ties are
broken by id to keep rankings deterministic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .descriptors import Descriptor
from .errors import EmptyDatabase, KindMismatch, ParamsMismatch
from .store import FeatureDb


@dataclass(frozen=True)
class RankedHit:
    id: str
    distance: float
    rank: int  # 1-based; within a result list distance is non-decreasing in rank

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if not self.distance >= 0:
            raise ValueError("distance must be non-negative")


def euclidean_distance(a: Descriptor, b: Descriptor) -> float:
    """sqrt(sum((a[j] - b[j])^2)) over the full vector length."""
    if a.kind is not b.kind or len(a) != len(b):
        raise KindMismatch(
            f"cannot compare {a.kind.label}({len(a)}) with {b.kind.label}({len(b)})"
        )
    diff = a.values - b.values
    return float(np.sqrt(np.sum(diff * diff)))


def scan_distances(matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Distances from q to every row of matrix (the scan's hot loop)."""
    diff = matrix - q
    return np.sqrt((diff * diff).sum(axis=1))


def query(db: FeatureDb, q: Descriptor, k: int, partitions: int = 1) -> list[RankedHit]:
    """Top-k entries of db by ascending distance to q, ties broken by id.

    partitions > 1 splits the scan into that many row blocks evaluated on a
    thread pool; block results are concatenated in block order, so the
    ranking is identical to the single-threaded scan.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if partitions < 1:
        raise ValueError("partitions must be >= 1")
    if q.kind is not db.kind or q.params != db.params:
        raise ParamsMismatch(
            f"query descriptor ({q.kind.label}, {q.params}) does not match "
            f"database header ({db.kind.label}, {db.params})"
        )
    if len(db) == 0:
        raise EmptyDatabase("cannot query an empty database")
    qv = q.values  # float64 already; db.matrix is the float64 view of storage
    matrix = db.matrix
    if partitions == 1 or partitions >= len(db):
        dist = scan_distances(matrix, qv)
    else:
        bounds = np.linspace(0, len(db), partitions + 1).astype(int)
        blocks = [matrix[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
        with ThreadPoolExecutor(max_workers=partitions) as pool:
            parts = list(pool.map(lambda block: scan_distances(block, qv), blocks))
        dist = np.concatenate(parts)
    order = np.lexsort((np.array(db.ids), dist))[: min(k, len(db))]
    return [
        RankedHit(db.ids[i], float(dist[i]), rank)
        for rank, i in enumerate(order, start=1)
    ]
