"""Co-occurrence index

Compact index answering, for every window length w, the number of length-w windows of a token
sequence that contain every member of a query set (co) and the number of left-minimal such
windows (lmco), in space proportional to the number of non-zero entries of delta.
"""

import hashlib
import logging
import struct
import zlib
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .delta import DeltaEncoding, build_delta
from .errors import (BadMagicError, ChecksumError, CorpusMismatchError, IndexFormatError,
                     TruncatedIndexError, VersionMismatchError)
from .predecessor import PredecessorMap, PredecessorVariant, build_predecessor
from .scanner import QueryProfile, scan_minimal

__all__ = ['CooccurrenceIndex', 'IndexOptions', 'build_index', 'corpus_digest', 'MAGIC', 'FORMAT_VERSION']

logger = logging.getLogger(__name__)

MAGIC = b'COOC'
FORMAT_VERSION = 1
NONE_SENTINEL = 2 ** 64 - 1
DIGEST_SIZE = 32

_PREAMBLE = struct.Struct('<4sI')
_HEADER = struct.Struct('<QQQQQ')
_CRC = struct.Struct('<I')


@dataclass(frozen=True)
class IndexOptions:
    variant: PredecessorVariant = PredecessorVariant.BUCKETED
    seed: int = 0


def corpus_digest(tokens: Sequence[int]) -> bytes:
    """SHA-256 over the token ids as little-endian int64 values."""
    if isinstance(tokens, (bytes, bytearray, memoryview)):
        ids = np.frombuffer(bytes(tokens), dtype=np.uint8).astype('<i8')
    else:
        ids = np.asarray(tokens, dtype='<i8')
    return hashlib.sha256(ids.tobytes()).digest()


class CooccurrenceIndex:
    """
    Class that answers co and lmco queries from a DeltaEncoding and a PredecessorMap.

    Attributes:
    enc (DeltaEncoding): sorted non-zero delta entries with prefix sums.
    pmap (PredecessorMap): predecessor map over enc.z.
    n (int): length of the indexed sequence.
    q (int): size of the query set.
    mu (int): number of minimal co-occurrences.
    seed (int): build seed, kept for reproducibility; not part of the serialized form.
    digest (bytes): SHA-256 of the indexed token ids.

    Methods:
    lmco(w): number of left-minimal co-occurrences of length w.
    co(w): number of length-w windows containing every member of Q.
    full_table(): co(1..n) in a single sweep.
    lmco_table(): lmco(1..n) in a single sweep.
    serialize() / deserialize(data): versioned binary form.
    save(path) / load(path): file wrappers.
    """

    def __init__(self, enc: DeltaEncoding, q: int, mu: int, digest: bytes, seed: int = 0,
                 variant: PredecessorVariant = PredecessorVariant.BUCKETED) -> None:
        """
        Initializes an index from a built encoding.

        :param enc: DeltaEncoding of the sequence.
        :param q: Query set size.
        :param mu: Number of minimal co-occurrences.
        :param digest: 32-byte corpus digest.
        :param seed: Build seed.
        :param variant: Predecessor map variant.
        """
        self.enc = enc
        self.pmap: PredecessorMap = build_predecessor(enc.z, enc.n, variant)
        self.n = enc.n
        self.q = q
        self.mu = mu
        self.seed = seed
        self.digest = digest

    @property
    def d(self) -> int:
        return self.enc.d

    @property
    def r1(self) -> Optional[int]:
        return self.enc.r1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CooccurrenceIndex):
            return NotImplemented
        return (self.enc == other.enc and self.q == other.q and self.mu == other.mu
                and self.digest == other.digest)

    def __repr__(self) -> str:
        return f'CooccurrenceIndex(n={self.n}, q={self.q}, mu={self.mu}, d={self.d}, r1={self.r1})'

    def lmco(self, w: int) -> int:
        """
        Returns the number of left-minimal co-occurrences of length w.

        :param w: Window length; 0 is returned outside [2, n].
        :return: int
        """
        if w < 2 or w > self.n:
            return 0
        hit = self.pmap.pred(w)
        if hit is None:
            return 0
        return int(self.enc.F[hit[1] - 1])

    def co(self, w: int) -> int:
        """
        Returns the number of length-w windows that contain every member of Q.

        :param w: Window length; 0 is returned outside [1, n].
        :return: int
        """
        if w < 1 or w > self.n or self.r1 is None:
            return 0
        hit = self.pmap.pred(w)
        if hit is None:
            return 0
        rank = hit[1] - 1
        # python ints: (w + 1) * F can exceed int64 long before n does
        total = (w + 1) * int(self.enc.F[rank]) - int(self.enc.W[rank])
        return total - max(w - self.r1, 0)

    def lmco_table(self) -> np.ndarray:
        """lmco(1..n) as an int64 array, one O(n + d) sweep."""
        dense = np.zeros(self.n + 1, dtype=np.int64)
        dense[self.enc.z] = self.enc.delta
        return np.cumsum(dense)[1:]

    def full_table(self) -> np.ndarray:
        """co(1..n) as an int64 array, one O(n + d) sweep."""
        if self.n == 0:
            return np.zeros(0, dtype=np.int64)
        if self.r1 is None:
            return np.zeros(self.n, dtype=np.int64)
        widths = np.arange(1, self.n + 1, dtype=np.int64)
        covered = np.cumsum(self.lmco_table())
        return covered - np.maximum(widths - self.r1, 0)

    def words(self) -> int:
        """Resident size in 64-bit words: encoding, predecessor map and metadata."""
        return self.enc.words() + self.pmap.words() + 4 + DIGEST_SIZE // 8

    def verify_corpus(self, tokens: Sequence[int]) -> None:
        """
        Checks that ``tokens`` is the sequence this index was built from.

        :raises CorpusMismatchError: when the digests differ.
        """
        if corpus_digest(tokens) != self.digest:
            raise CorpusMismatchError('Index was built from a different corpus.')

    def serialize(self) -> bytes:
        """
        Returns the versioned little-endian binary form.

        Layout: magic, u32 version, u64 n q mu d r1 (u64 max for none), d u64 keys,
        d i64 delta, d i64 F, d i64 W, 32-byte digest, u32 CRC32 of everything before.
        """
        r1 = NONE_SENTINEL if self.r1 is None else self.r1
        parts = [
            _PREAMBLE.pack(MAGIC, FORMAT_VERSION),
            _HEADER.pack(self.n, self.q, self.mu, self.d, r1),
            self.enc.z.astype('<u8').tobytes(),
            self.enc.delta.astype('<i8').tobytes(),
            self.enc.F.astype('<i8').tobytes(),
            self.enc.W.astype('<i8').tobytes(),
            self.digest,
        ]
        body = b''.join(parts)
        return body + _CRC.pack(zlib.crc32(body))

    @classmethod
    def deserialize(cls, data: bytes,
                    variant: PredecessorVariant = PredecessorVariant.BUCKETED) -> 'CooccurrenceIndex':
        """
        Rebuilds an index from its binary form.

        :param data: Serialized stream.
        :param variant: Predecessor variant for the rebuilt map.
        :raises BadMagicError, VersionMismatchError, TruncatedIndexError, ChecksumError, IndexFormatError:
        :return: CooccurrenceIndex
        """
        data = bytes(data)
        if len(data) < len(MAGIC):
            raise TruncatedIndexError('Stream ends inside the magic number.')
        if data[:len(MAGIC)] != MAGIC:
            raise BadMagicError(f'Bad magic {data[:len(MAGIC)]!r}, expected {MAGIC!r}.')
        if len(data) < _PREAMBLE.size:
            raise TruncatedIndexError('Stream ends inside the version field.')
        _, version = _PREAMBLE.unpack_from(data, 0)
        if version != FORMAT_VERSION:
            raise VersionMismatchError(f'Unsupported format version {version}, expected {FORMAT_VERSION}.')
        if len(data) < _PREAMBLE.size + _HEADER.size:
            raise TruncatedIndexError('Stream ends inside the header.')
        n, q, mu, d, r1 = _HEADER.unpack_from(data, _PREAMBLE.size)

        expected = _PREAMBLE.size + _HEADER.size + 4 * 8 * d + DIGEST_SIZE + _CRC.size
        if len(data) < expected:
            raise TruncatedIndexError(f'Stream holds {len(data)} bytes, header announces {expected}.')
        if len(data) > expected:
            raise IndexFormatError(f'{len(data) - expected} trailing bytes after checksum.')
        (crc,) = _CRC.unpack_from(data, expected - _CRC.size)
        if zlib.crc32(data[:expected - _CRC.size]) != crc:
            raise ChecksumError('CRC32 mismatch.')

        offset = _PREAMBLE.size + _HEADER.size
        arrays = list()
        for dtype in ('<u8', '<i8', '<i8', '<i8'):
            arrays.append(np.frombuffer(data, dtype=dtype, count=d, offset=offset).astype(np.int64))
            offset += 8 * d
        digest = data[offset:offset + DIGEST_SIZE]

        z, delta, F, W = arrays
        enc = DeltaEncoding(n=n, z=z, delta=delta, F=F, W=W, r1=None if r1 == NONE_SENTINEL else r1)
        try:
            enc.check()
        except ValueError as e:
            raise IndexFormatError(f'Inconsistent index arrays: {e}') from e
        if q < 2:
            raise IndexFormatError(f'Header holds q={q}, a query set needs at least 2 members.')
        if d > 2 * mu:
            raise IndexFormatError(f'Header holds d={d} entries for only mu={mu} minimal co-occurrences.')
        if (enc.r1 is None) != (mu == 0):
            raise IndexFormatError(f'Header r1={enc.r1} does not agree with mu={mu}.')
        if enc.r1 is not None and not 1 <= enc.r1 <= n:
            raise IndexFormatError(f'Header r1={enc.r1} lies outside [1, {n}].')
        return cls(enc, q=q, mu=mu, digest=digest, variant=variant)

    def save(self, path: str) -> None:
        with open(path, 'wb') as f:
            f.write(self.serialize())

    @classmethod
    def load(cls, path: str, variant: PredecessorVariant = PredecessorVariant.BUCKETED) -> 'CooccurrenceIndex':
        with open(path, 'rb') as f:
            return cls.deserialize(f.read(), variant=variant)


def build_index(tokens: Sequence[int], query: QueryProfile, options: IndexOptions = None) -> CooccurrenceIndex:
    """
    Builds the index in one pass over the tokens.

    :param tokens: Token id sequence S.
    :param query: QueryProfile (or iterable of ids, deduplicated and checked for q >= 2).
    :param options: IndexOptions with predecessor variant and seed.
    :raises InvalidQueryError: when q < 2.
    :return: CooccurrenceIndex
    """
    options = options or IndexOptions()
    if not isinstance(query, QueryProfile):
        query = QueryProfile.from_ids(query)
    mins = scan_minimal(tokens, query)
    enc = build_delta(mins, len(tokens))
    index = CooccurrenceIndex(enc, q=query.q, mu=len(mins), digest=corpus_digest(tokens),
                              seed=options.seed, variant=options.variant)
    logger.info('built %r seed=%d', index, options.seed)
    return index
