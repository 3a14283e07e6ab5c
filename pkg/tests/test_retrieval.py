"""Euclidean distance and the exhaustive top-k scan."""

import numpy as np
import pytest

from comograd.descriptors import Descriptor, DescriptorKind, DescriptorParams
from comograd.errors import EmptyDatabase, KindMismatch, ParamsMismatch
from comograd.retrieval import RankedHit, euclidean_distance, query
from comograd.store import FeatureDb

from reference import naive_query

PARAMS = DescriptorParams()


def combined_desc(values) -> Descriptor:
    vec = np.zeros(1021)
    vec[: len(values)] = values
    return Descriptor(DescriptorKind.COMBINED, vec)


def random_db(rng, n, kind=DescriptorKind.COMOGRAD) -> FeatureDb:
    width = PARAMS.vector_length(kind)
    values = rng.random((n, width), dtype=np.float32)
    ids = tuple(f"e{i:04d}" for i in range(n))
    return FeatureDb(kind, PARAMS, ids, values)


def test_distance_identity():
    d = combined_desc([1.0, 2.0, 3.0])
    assert euclidean_distance(d, d) == 0.0


def test_distance_orthogonal_units():
    e0 = combined_desc([1.0])
    e1 = combined_desc([0.0, 1.0])
    assert euclidean_distance(e0, e1) == pytest.approx(np.sqrt(2.0), rel=1e-15)


def test_distance_three_four_five():
    a = combined_desc([3.0])
    b = combined_desc([0.0, 4.0])
    assert euclidean_distance(a, b) == 5.0


def test_distance_rejects_kind_mismatch(rng):
    c = Descriptor(DescriptorKind.COMOGRAD, rng.random(256))
    p = Descriptor(DescriptorKind.PHOG, rng.random(765))
    with pytest.raises(KindMismatch):
        euclidean_distance(c, p)


def test_distance_is_a_metric(rng):
    descs = [Descriptor(DescriptorKind.COMOGRAD, rng.random(256)) for _ in range(12)]
    for a in descs:
        assert euclidean_distance(a, a) == 0.0
        for b in descs:
            assert euclidean_distance(a, b) == euclidean_distance(b, a)
            for c in descs:
                ab = euclidean_distance(a, b)
                bc = euclidean_distance(b, c)
                ac = euclidean_distance(a, c)
                assert ac <= ab + bc + 1e-9


def test_self_retrieval_rank_one(rng):
    db = random_db(rng, 20)
    q = Descriptor(db.kind, db.values[7].astype(np.float64), db.params)
    hits = query(db, q, 5)
    assert hits[0] == RankedHit("e0007", 0.0, 1)


def test_tie_broken_by_lexicographic_id():
    values = np.zeros((2, 256), np.float32)
    db = FeatureDb(DescriptorKind.COMOGRAD, PARAMS, ("zz", "aa"), values)
    q = Descriptor(DescriptorKind.COMOGRAD, np.ones(256))
    hits = query(db, q, 2)
    assert [h.id for h in hits] == ["aa", "zz"]
    assert hits[0].distance == hits[1].distance


def test_k_larger_than_db_returns_all(rng):
    db = random_db(rng, 4)
    hits = query(db, Descriptor(db.kind, rng.random(256)), 99)
    assert len(hits) == 4
    assert [h.rank for h in hits] == [1, 2, 3, 4]


def test_ranks_consecutive_distances_monotone(rng):
    db = random_db(rng, 50)
    hits = query(db, Descriptor(db.kind, rng.random(256)), 50)
    assert [h.rank for h in hits] == list(range(1, 51))
    distances = [h.distance for h in hits]
    assert distances == sorted(distances)


def test_query_validation(rng):
    db = random_db(rng, 3)
    q = Descriptor(db.kind, rng.random(256))
    with pytest.raises(ValueError):
        query(db, q, 0)
    with pytest.raises(ValueError):
        query(db, q, 2, partitions=0)
    with pytest.raises(ParamsMismatch):
        query(db, Descriptor(DescriptorKind.PHOG, rng.random(765)), 2)
    other = Descriptor(DescriptorKind.COMOGRAD, rng.random(64), DescriptorParams(cooc_bins=8))
    with pytest.raises(ParamsMismatch):
        query(db, other, 2)
    empty = FeatureDb(db.kind, PARAMS, (), np.empty((0, 256), np.float32))
    with pytest.raises(EmptyDatabase):
        query(empty, q, 1)


def test_query_matches_naive_oracle_exactly(rng):
    for n in (1, 17, 300, 1000):
        db = random_db(rng, n)
        q = Descriptor(db.kind, rng.random(256))
        k = min(n, 25)
        hits = query(db, q, k)
        expect = naive_query(db.ids, db.matrix, q.values, k)
        assert [(h.id, h.distance, h.rank) for h in hits] == expect


def test_partitioned_scan_identical_to_single_thread(rng):
    db = random_db(rng, 101)
    q = Descriptor(db.kind, rng.random(256))
    base = query(db, q, 101)
    for partitions in (2, 3, 7, 16, 200):
        assert query(db, q, 101, partitions=partitions) == base


def test_rankedhit_validation():
    with pytest.raises(ValueError):
        RankedHit("a", 1.0, 0)
    with pytest.raises(ValueError):
        RankedHit("a", -0.5, 1)
