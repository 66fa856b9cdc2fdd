"""Brute-force reference

Quadratic implementations of co, lmco and the minimal co-occurrences straight from their
definitions. They share no code with the scanner or the index and are the ground truth for the
tests. Tables are lists of length n + 1 indexed by window length (entry 0 is always 0).
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Set

from .scanner import MinimalCooccurrence


@dataclass
class OracleResult:
    lmco_table: List[int]
    co_table: List[int]
    minimal_list: List[MinimalCooccurrence] = field(default_factory=list)
    r1: Optional[int] = None


def _covers(tokens: Sequence[int], start: int, end: int, query: Set[int]) -> bool:
    """True when S[start..end] (1-based, inclusive) contains every member of query."""
    if start > end:
        return False
    return query.issubset(tokens[start - 1:end])


def _left_minimal_start(tokens: Sequence[int], end: int, query: Set[int]) -> Optional[int]:
    """Largest start j with S[j..end] a co-occurrence, None if there is none."""
    missing = set(query)
    j = end
    while j >= 1:
        missing.discard(tokens[j - 1])
        if not missing:
            return j
        j -= 1
    return None


def oracle_co(tokens: Sequence[int], query: Iterable[int]) -> List[int]:
    """
    co(w) for w in 0..n by extending a window from every start.

    :param tokens: Token sequence.
    :param query: Query members; any size, including 1.
    :return: list indexed by w.
    """
    query = set(query)
    n = len(tokens)
    diff = [0] * (n + 2)
    for start in range(1, n + 1):
        missing = set(query)
        for end in range(start, n + 1):
            missing.discard(tokens[end - 1])
            if not missing:
                # every length from end - start + 1 up to n - start + 1 qualifies
                diff[end - start + 1] += 1
                diff[n - start + 2] -= 1
                break
    table = [0] * (n + 1)
    running = 0
    for w in range(1, n + 1):
        running += diff[w]
        table[w] = running
    return table


def oracle_lmco(tokens: Sequence[int], query: Iterable[int]) -> OracleResult:
    """
    lmco(w) for w in 0..n, together with co, the minimal co-occurrences and r1.

    For every end k the left-minimal start is found by scanning left; [j, k] is minimal when
    additionally S[j..k-1] is not a co-occurrence.
    """
    query = set(query)
    n = len(tokens)
    lmco_table = [0] * (n + 1)
    minimal = list()
    for end in range(1, n + 1):
        start = _left_minimal_start(tokens, end, query)
        if start is None:
            continue
        lmco_table[end - start + 1] += 1
        if not _covers(tokens, start + 1, end, query) and not _covers(tokens, start, end - 1, query):
            minimal.append(MinimalCooccurrence(start, end))
    return OracleResult(
        lmco_table=lmco_table,
        co_table=oracle_co(tokens, query),
        minimal_list=minimal,
        r1=minimal[0].end if minimal else None,
    )
