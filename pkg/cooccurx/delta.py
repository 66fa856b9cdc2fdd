"""Difference encoding

Builds the sparse difference encoding of lmco from the ordered minimal co-occurrences. Each
minimal co-occurrence [l_i, r_i] adds +1 at length len(l_i, r_i) and -1 at length
len(l_i, r_{i+1}), with r_{mu+1} = n + 1. Only non-zero entries in [2, n] are kept.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .scanner import MinimalCooccurrence

logger = logging.getLogger(__name__)

SORT_RADIX = 'radix'
SORT_COMPARISON = 'comparison'


@dataclass(frozen=True, eq=False)
class DeltaEncoding:
    """
    Sorted non-zero entries of delta with their prefix sums.

    Attributes:
    n (int): string length.
    z (np.ndarray): keys z_1 < ... < z_d in [2, n].
    delta (np.ndarray): delta(z_j), never zero.
    F (np.ndarray): F[j] = lmco(z_j), prefix sums of delta.
    W (np.ndarray): W[j] = sum of z_i * delta(z_i) for i <= j.
    r1 (int): end of the first minimal co-occurrence, None when there is none.
    """
    n: int
    z: np.ndarray
    delta: np.ndarray
    F: np.ndarray
    W: np.ndarray
    r1: Optional[int]

    @classmethod
    def from_entries(cls, n: int, entries: Sequence[Tuple[int, int]], r1: Optional[int]) -> 'DeltaEncoding':
        """Builds the arrays from sorted (key, delta) pairs."""
        z = np.fromiter((key for key, _ in entries), dtype=np.int64, count=len(entries))
        delta = np.fromiter((value for _, value in entries), dtype=np.int64, count=len(entries))
        return cls(n=n, z=z, delta=delta, F=np.cumsum(delta), W=np.cumsum(z * delta), r1=r1)

    @property
    def d(self) -> int:
        return int(self.z.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaEncoding):
            return NotImplemented
        return (self.n == other.n and self.r1 == other.r1
                and all(np.array_equal(a, b) for a, b in zip(self.arrays(), other.arrays())))

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.z, self.delta, self.F, self.W

    def delta_at(self, w: int) -> int:
        """delta(w), zero for lengths not in Z."""
        i = int(np.searchsorted(self.z, w))
        if i < self.d and self.z[i] == w:
            return int(self.delta[i])
        return 0

    def words(self) -> int:
        """Logical size in 64-bit words: four d-length arrays plus n, d and r1."""
        return 4 * self.d + 3

    def check(self) -> None:
        """
        Validates the internal consistency of the encoding.

        :raises ValueError: when any invariant is violated.
        """
        z, delta, F, W = self.arrays()
        if not (z.size == delta.size == F.size == W.size):
            raise ValueError('Encoding arrays differ in length.')
        if z.size == 0:
            return
        if np.any(np.diff(z) <= 0):
            raise ValueError('Keys are not strictly increasing.')
        if z[0] < 2 or z[-1] > self.n:
            raise ValueError(f'Keys fall outside [2, {self.n}].')
        if np.any(delta == 0):
            raise ValueError('Zero delta entry stored.')
        if not np.array_equal(np.cumsum(delta), F):
            raise ValueError('F is not the prefix sum of delta.')
        if not np.array_equal(np.cumsum(z * delta), W):
            raise ValueError('W is not the weighted prefix sum of delta.')
        if np.any(F < 0):
            raise ValueError('Negative lmco value.')


def _radix_sort(pairs: List[Tuple[int, int]], n: int) -> List[Tuple[int, int]]:
    """Two-pass bucket sort: most significant half of the bits, then the least significant half."""
    low_bits = (max(n, 1).bit_length() + 1) // 2
    low_mask = (1 << low_bits) - 1

    high_buckets = [list() for _ in range((n >> low_bits) + 1)]
    for pair in pairs:
        high_buckets[pair[0] >> low_bits].append(pair)

    ordered = list()
    low_buckets = [None] * (1 << low_bits)
    for bucket in high_buckets:
        if len(bucket) < 2:
            ordered.extend(bucket)
            continue
        # keys are distinct, so each low bucket holds at most one pair
        for pair in bucket:
            low_buckets[pair[0] & low_mask] = pair
        for slot, pair in enumerate(low_buckets):
            if pair is not None:
                ordered.append(pair)
                low_buckets[slot] = None
    return ordered


def choose_sort(d: int, n: int) -> str:
    """Radix when d >= n / log2(n), comparison otherwise."""
    if n < 2:
        return SORT_COMPARISON
    return SORT_RADIX if d >= n / math.log2(n) else SORT_COMPARISON


def sort_entries(pairs: Sequence[Tuple[int, int]], n: int, method: str = None) -> List[Tuple[int, int]]:
    """
    Sorts (key, value) pairs by key.

    :param pairs: Pairs with distinct keys in [2, n].
    :param n: Universe bound.
    :param method: 'radix' or 'comparison' to force a path; chosen from d and n when omitted.
    :return: list sorted ascending by key.
    """
    pairs = list(pairs)
    if not pairs:
        return pairs
    method = method or choose_sort(len(pairs), n)
    logger.debug('sorting d=%d entries for n=%d with %s sort', len(pairs), n, method)
    if method == SORT_RADIX:
        return _radix_sort(pairs, n)
    if method == SORT_COMPARISON:
        return sorted(pairs, key=lambda pair: pair[0])
    raise ValueError(f'Unknown sort method: {method}')


def build_delta(mins: Sequence[MinimalCooccurrence], n: int) -> DeltaEncoding:
    """
    Converts minimal co-occurrences into the sparse difference encoding.

    :param mins: Minimal co-occurrences ordered by end index.
    :param n: Length of the scanned sequence.
    :return: DeltaEncoding
    """
    contributions: Dict[int, int] = dict()
    mu = len(mins)
    for i, current in enumerate(mins):
        start, end = current.start, current.end
        opening = end - start + 1
        contributions[opening] = contributions.get(opening, 0) + 1
        next_end = mins[i + 1].end if i + 1 < mu else n + 1
        closing = next_end - start + 1
        # a closing length of n + 1 lies outside the domain of delta
        if closing <= n:
            contributions[closing] = contributions.get(closing, 0) - 1

    pairs = [(length, value) for length, value in contributions.items() if value != 0]
    entries = sort_entries(pairs, n)
    r1 = mins[0].end if mu else None

    encoding = DeltaEncoding.from_entries(n, entries, r1)
    encoding.check()
    logger.debug('built delta encoding n=%d mu=%d d=%d r1=%s', n, mu, encoding.d, r1)
    return encoding
