"""Minimal co-occurrence scanner

Streams the minimal co-occurrences of a query set in a token sequence in one left to right
pass. The scan keeps a move-to-front recency list over the query members; the member at the
back of the list is the least recently seen one and gives the length of the left-minimal
co-occurrence ending at the current position.

All positions are 1-based.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence

from .errors import InvalidQueryError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QueryProfile:
    """Query set Q as distinct token ids."""
    members: FrozenSet[int]

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise InvalidQueryError(f'Query set needs at least 2 distinct members, got {len(self.members)}.')

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> 'QueryProfile':
        """Collapses duplicates before checking q >= 2."""
        return cls(frozenset(int(token_id) for token_id in ids))

    @property
    def q(self) -> int:
        return len(self.members)

    def __contains__(self, token_id: int) -> bool:
        return token_id in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))


@dataclass(frozen=True, order=True)
class MinimalCooccurrence:
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start + 1

    def __iter__(self):
        yield self.start
        yield self.end


class RecencyList:
    """
    Move-to-front list over the members of Q.

    The list is an OrderedDict from member id to the position of its last occurrence (None
    while unseen). The front of the dict is the least recently seen member, the back the most
    recent one, so both ends are reachable in constant time. It always holds exactly q entries.
    """

    def __init__(self, query: QueryProfile) -> None:
        self._order = OrderedDict((member, None) for member in query)
        self.q = query.q
        self.seen_count = 0

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, token_id: int) -> bool:
        return token_id in self._order

    def touch(self, member: int, position: int) -> None:
        """Records an occurrence of ``member`` at ``position`` and moves it to the most-recent end."""
        if self._order[member] is None:
            self.seen_count += 1
        self._order[member] = position
        self._order.move_to_end(member)

    def least_recent(self) -> Optional[int]:
        """Position of the last occurrence of the least recently seen member, None if some member is unseen."""
        if self.seen_count < self.q:
            return None
        return next(iter(self._order.values()))

    def recency_order(self) -> List[int]:
        """Members, most recently seen first."""
        return list(reversed(self._order))


def lm_value(state: RecencyList, j: int) -> Optional[int]:
    """
    Length of the left-minimal co-occurrence ending at ``j``.

    :param state: Recency list after consuming S[1..j].
    :param j: Current 1-based position.
    :return: lm(j), or None while some member of Q has not been seen.
    """
    oldest = state.least_recent()
    if oldest is None:
        return None
    return j - oldest + 1


class MinimalScanner:
    """
    Incremental scanner; feed tokens one at a time.

    Attributes:
    recency (RecencyList): the move-to-front state.
    position (int): number of tokens consumed so far (n after a full pass).
    lm (int): lm(position) or None.
    emitted (int): number of minimal co-occurrences reported so far.
    """

    def __init__(self, query: QueryProfile) -> None:
        self.query = query
        self.recency = RecencyList(query)
        self.position = 0
        self.lm = None
        self.emitted = 0

    def feed(self, token: int) -> Optional[MinimalCooccurrence]:
        """
        Consumes one token.

        :param token: Next token id; tokens outside Q only advance the position.
        :return: the minimal co-occurrence ending at this position, if any.
        """
        self.position += 1
        j = self.position
        if token in self.recency:
            self.recency.touch(token, j)
        previous = self.lm
        self.lm = lm_value(self.recency, j)
        if self.lm is None:
            return None
        # lm(j) == lm(j-1) + 1 means the window ending here only extends the previous one
        if previous is not None and self.lm == previous + 1:
            return None
        self.emitted += 1
        return MinimalCooccurrence(j - self.lm + 1, j)


def iter_minimal(tokens: Iterable[int], query: QueryProfile) -> Iterator[MinimalCooccurrence]:
    """Yields the minimal co-occurrences of ``query`` in ``tokens`` ordered by end index."""
    scanner = MinimalScanner(query)
    for token in tokens:
        found = scanner.feed(token)
        if found is not None:
            yield found
    logger.debug('scanned n=%d q=%d mu=%d', scanner.position, query.q, scanner.emitted)


def scan_minimal(tokens: Sequence[int], query: QueryProfile) -> List[MinimalCooccurrence]:
    """
    Returns the minimal co-occurrences of Q in S in one pass.

    :param tokens: Token id sequence S (bytes or list of ints); may be empty.
    :param query: QueryProfile with q >= 2.
    :return: list of MinimalCooccurrence ordered by end (and start) index.
    """
    if not isinstance(query, QueryProfile):
        query = QueryProfile.from_ids(query)
    return list(iter_minimal(tokens, query))


def lm_profile(tokens: Sequence[int], query: QueryProfile) -> List[Optional[int]]:
    """Returns [lm(1), ..., lm(n)] with None where undefined."""
    scanner = MinimalScanner(query)
    profile = list()
    for token in tokens:
        scanner.feed(token)
        profile.append(scanner.lm)
    return profile
