"""Predecessor maps

Static maps from a sorted key set Z within [2, n] to the rank of each key. Two variants answer
the same queries: a binary search baseline, and a bucketed structure that splits keys by their
high bits and recurses on the set of non-empty buckets, giving doubly logarithmic probing at
the sizes we run.
"""

import logging
from bisect import bisect_right
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PredecessorBuildError

logger = logging.getLogger(__name__)


class PredecessorVariant(str, Enum):
    BASELINE = 'baseline'
    BUCKETED = 'bucketed'


class PredecessorMap:
    """
    Base class for predecessor maps over sorted distinct integer keys.

    Attributes:
    keys (list): sorted keys.
    universe (int): largest admissible query; larger queries are treated as this value.

    Methods:
    pred(x): returns (key, rank) of the largest key <= x, rank 1-based, or None.
    pred_many(xs): vectorized ranks for an array of queries, 0 meaning no predecessor.
    words(): logical size in 64-bit words.
    """
    variant: PredecessorVariant = None

    def __init__(self, keys: Sequence[int], universe: int) -> None:
        self.keys: List[int] = [int(key) for key in keys]
        self.universe = int(universe)

    def __len__(self) -> int:
        return len(self.keys)

    def _index(self, x: int) -> int:
        """0-based position of the predecessor of x, -1 if none."""
        raise NotImplementedError

    def pred(self, x: int) -> Optional[Tuple[int, int]]:
        """
        Finds the predecessor of ``x``.

        :param x: Query value; values above the universe are clamped, negatives have no predecessor.
        :return: (key, rank) with rank 1-based, or None.
        """
        x = min(int(x), self.universe)
        if x < 0:
            return None
        i = self._index(x)
        if i < 0:
            return None
        return self.keys[i], i + 1

    def pred_many(self, xs: Iterable[int]) -> np.ndarray:
        """Ranks (1-based, 0 for none) of the predecessors of every query in ``xs``."""
        xs = np.minimum(np.asarray(xs, dtype=np.int64), self.universe)
        ranks = np.searchsorted(np.asarray(self.keys, dtype=np.int64), xs, side='right')
        return np.where(xs < 0, 0, ranks)

    def words(self) -> int:
        return len(self.keys) + 1

    def __repr__(self) -> str:
        return f'{type(self).__name__}(d={len(self.keys)}, universe={self.universe})'


class BaselinePredecessorMap(PredecessorMap):
    """Binary search over the sorted key list."""
    variant = PredecessorVariant.BASELINE

    def _index(self, x: int) -> int:
        return bisect_right(self.keys, x) - 1


class BucketedPredecessorMap(PredecessorMap):
    """
    Two-level predecessor map.

    Keys are grouped by their high bits (the top half of the bits of the universe). Each
    non-empty bucket remembers its slice of the key list, searched by binary search over at most
    sqrt(universe) values. The distinct high parts form a smaller predecessor problem over a
    universe of about sqrt(universe), solved by a nested BucketedPredecessorMap until it holds
    no more than LEAF_SIZE keys. Space is O(d) words.
    """
    variant = PredecessorVariant.BUCKETED
    LEAF_SIZE = 16

    def __init__(self, keys: Sequence[int], universe: int) -> None:
        super().__init__(keys, universe)
        self._shift = max(self.universe, 1).bit_length() // 2
        self._spans = dict()
        highs = list()
        for i, key in enumerate(self.keys):
            high = key >> self._shift
            if high in self._spans:
                self._spans[high] = (self._spans[high][0], i + 1)
            else:
                self._spans[high] = (i, i + 1)
                highs.append(high)

        top_universe = max(self.universe >> self._shift, 1)
        if len(highs) > self.LEAF_SIZE and self._shift > 0:
            self._top = BucketedPredecessorMap(highs, top_universe)
        else:
            self._top = BaselinePredecessorMap(highs, top_universe)

    def _index(self, x: int) -> int:
        keys = self.keys
        if not keys or x < keys[0]:
            return -1
        if x >= keys[-1]:
            return len(keys) - 1

        high = x >> self._shift
        span = self._spans.get(high)
        if span is not None and keys[span[0]] <= x:
            return bisect_right(keys, x, span[0], span[1]) - 1

        # x precedes everything in its own bucket, so the answer is the last key of an earlier bucket
        top_index = self._top._index(high - 1)
        return self._spans[self._top.keys[top_index]][1] - 1

    def words(self) -> int:
        return len(self.keys) + 3 * len(self._spans) + self._top.words() + 2


_VARIANTS = {
    PredecessorVariant.BASELINE: BaselinePredecessorMap,
    PredecessorVariant.BUCKETED: BucketedPredecessorMap,
}


def build_predecessor(keys: Sequence[int], n: int,
                      variant: PredecessorVariant = PredecessorVariant.BUCKETED) -> PredecessorMap:
    """
    Builds a predecessor map over keys drawn from [2, n].

    :param keys: Sorted distinct integers in [2, n].
    :param n: Universe bound.
    :param variant: baseline or bucketed.
    :return: PredecessorMap
    """
    keys = [int(key) for key in keys]
    for previous, key in zip(keys, keys[1:]):
        if key <= previous:
            raise PredecessorBuildError(f'Keys must be sorted and distinct, found {previous} before {key}.')
    if keys and (keys[0] < 2 or keys[-1] > n):
        raise PredecessorBuildError(f'Keys must lie in [2, {n}], got [{keys[0]}, {keys[-1]}].')

    pmap = _VARIANTS[PredecessorVariant(variant)](keys, n)
    logger.debug('built %r', pmap)
    return pmap
