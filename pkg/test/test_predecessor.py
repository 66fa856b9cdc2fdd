"""Tests for the predecessor module."""

import random

import numpy as np
import pytest

from cooccurx.errors import PredecessorBuildError
from cooccurx.predecessor import (BaselinePredecessorMap, BucketedPredecessorMap, PredecessorVariant,
                                  build_predecessor)

VARIANTS = list(PredecessorVariant)


@pytest.mark.parametrize('variant', VARIANTS)
def test_example_keys(variant):
    pmap = build_predecessor([4, 7], 13, variant)
    assert pmap.pred(5) == (4, 1)
    assert pmap.pred(3) is None
    assert pmap.pred(7) == (7, 2)
    assert pmap.pred(13) == (7, 2)
    assert pmap.pred(10 ** 9) == (7, 2)
    assert pmap.pred(-1) is None


@pytest.mark.parametrize('variant', VARIANTS)
def test_empty_and_singleton(variant):
    empty = build_predecessor([], 10, variant)
    assert all(empty.pred(x) is None for x in range(0, 12))
    single = build_predecessor([2], 2, variant)
    assert single.pred(2) == (2, 1)
    assert single.pred(1) is None


def test_build_rejects_bad_keys():
    with pytest.raises(PredecessorBuildError):
        build_predecessor([7, 4], 13)
    with pytest.raises(PredecessorBuildError):
        build_predecessor([4, 4], 13)
    with pytest.raises(PredecessorBuildError):
        build_predecessor([1, 4], 13)
    with pytest.raises(PredecessorBuildError):
        build_predecessor([4, 14], 13)


def test_variant_classes():
    assert isinstance(build_predecessor([3], 5, 'baseline'), BaselinePredecessorMap)
    assert isinstance(build_predecessor([3], 5, 'bucketed'), BucketedPredecessorMap)


def random_keys(rng, n, d):
    return sorted(rng.sample(range(2, n + 1), min(d, n - 1)))


def test_exhaustive_cross_variant():
    rng = random.Random(5)
    for n in (2, 3, 17, 64, 255, 1000, 4096):
        for d in (1, 5, 40, 300, 4095):
            keys = random_keys(rng, n, d)
            baseline = build_predecessor(keys, n, PredecessorVariant.BASELINE)
            bucketed = build_predecessor(keys, n, PredecessorVariant.BUCKETED)
            previous = None
            for x in range(0, n + 1):
                answer = baseline.pred(x)
                assert bucketed.pred(x) == answer
                if previous is not None:
                    assert answer is not None and answer[0] >= previous[0]
                previous = answer


def test_dense_keys_recurse():
    keys = list(range(2, 4097))
    pmap = build_predecessor(keys, 4096, PredecessorVariant.BUCKETED)
    assert isinstance(pmap._top, BucketedPredecessorMap)
    assert all(pmap.pred(x) == (x, x - 1) for x in range(2, 4097))


def test_random_queries_large_universe():
    rng = random.Random(9)
    n = 10 ** 6
    keys = random_keys(rng, n, 3000)
    baseline = build_predecessor(keys, n, PredecessorVariant.BASELINE)
    bucketed = build_predecessor(keys, n, PredecessorVariant.BUCKETED)
    xs = [rng.randint(0, n) for _ in range(10 ** 5)]
    ranks = baseline.pred_many(xs)
    for x, rank in zip(xs, ranks.tolist()):
        hit = bucketed.pred(x)
        assert (0 if hit is None else hit[1]) == rank


def test_pred_many_matches_pred():
    pmap = build_predecessor([4, 7], 13)
    assert pmap.pred_many([0, 3, 4, 5, 7, 100, -2]).tolist() == [0, 0, 1, 1, 2, 2, 0]


def test_space_is_linear_in_keys():
    rng = random.Random(1)
    for d in (10, 100, 1000):
        keys = random_keys(rng, 10 ** 6, d)
        for variant in VARIANTS:
            assert build_predecessor(keys, 10 ** 6, variant).words() <= 10 * d + 32


def test_keys_array_type():
    pmap = build_predecessor(np.array([4, 7], dtype=np.int64), 13)
    assert pmap.keys == [4, 7]
