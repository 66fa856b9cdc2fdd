"""Tests for the index in the _core module."""

import random
import struct
import zlib

import numpy as np
import pytest

import cooccurx
from cooccurx import CooccurrenceIndex, IndexOptions, build_index
from cooccurx._core import NONE_SENTINEL
from cooccurx.errors import (BadMagicError, ChecksumError, CorpusMismatchError, IndexFormatError,
                             InvalidQueryError, TruncatedIndexError, VersionMismatchError)
from cooccurx.gadgets import GadgetConcatSpec, encode_gadget, render_concat
from cooccurx.oracle import oracle_lmco
from cooccurx.predecessor import PredecessorVariant
from cooccurx.scanner import QueryProfile

EXAMPLE_TABLE = [0, 0, 0, 2, 4, 6, 6, 6, 5, 4, 3, 2, 1]


@pytest.fixture(scope='module')
def example_index(example):
    tokens, query = example
    return build_index(tokens, query)


def test_example_shape(example_index):
    assert (example_index.n, example_index.q, example_index.mu, example_index.d) == (13, 3, 2, 2)
    assert example_index.r1 == 8


def test_example_co(example_index):
    assert example_index.co(3) == 0
    assert example_index.co(4) == 2
    assert example_index.co(8) == 6
    assert example_index.co(10) == 4


def test_example_lmco(example_index):
    assert example_index.lmco(5) == 2
    assert example_index.lmco(3) == 0
    assert example_index.lmco(8) == 0
    assert example_index.lmco(1) == 0


def test_example_full_table(example, example_index):
    tokens, query = example
    assert example_index.full_table().tolist() == EXAMPLE_TABLE
    assert oracle_lmco(tokens, query).co_table[1:] == EXAMPLE_TABLE


def test_out_of_range_widths(example_index):
    for w in (-3, 0, 14, 10 ** 9):
        assert example_index.co(w) == 0
        assert example_index.lmco(w) == 0


def test_absent_member_gives_zero_everywhere():
    index = build_index(b'AAAA', QueryProfile.from_ids(b'AB'))
    assert index.d == 0
    assert index.r1 is None
    assert [index.co(w) for w in range(0, 6)] == [0] * 6
    assert index.full_table().tolist() == [0, 0, 0, 0]


def test_two_token_string():
    index = build_index(b'AB', QueryProfile.from_ids(b'AB'))
    assert index.full_table().tolist() == [0, 1]


def test_empty_string():
    index = build_index(b'', QueryProfile.from_ids(b'AB'))
    assert index.n == 0
    assert index.full_table().tolist() == []
    assert index.co(1) == 0


def test_invalid_query():
    with pytest.raises(InvalidQueryError):
        build_index(b'AB', [ord('A')])


def test_increment_gadget_pair():
    tokens, query = encode_gadget(render_concat(GadgetConcatSpec(u=5, E=(3,), c=(2,))), ('A', 'B'))
    index = build_index(tokens, query)
    assert index.enc.delta_at(3) == 2


@pytest.mark.parametrize('variant', list(PredecessorVariant))
def test_oracle_equivalence(random_instances, variant):
    options = IndexOptions(variant=variant, seed=3)
    for tokens, query in random_instances:
        index = build_index(tokens, query, options)
        expected = oracle_lmco(tokens, query)
        n = len(tokens)
        for w in range(0, n + 3):
            co = expected.co_table[w] if w <= n else 0
            lmco = expected.lmco_table[w] if w <= n else 0
            assert index.co(w) == co
            assert index.lmco(w) == lmco
        assert index.full_table().tolist() == expected.co_table[1:]
        assert index.lmco_table().tolist() == expected.lmco_table[1:]
        assert index.r1 == expected.r1


def test_difference_identity(random_instances):
    for tokens, query in random_instances:
        index = build_index(tokens, query)
        if index.r1 is None:
            continue
        r1 = index.r1
        for w in range(2, index.n + 1):
            step = index.lmco(w) - max(w - r1, 0) + max(w - 1 - r1, 0)
            assert index.co(w) - index.co(w - 1) == step


def test_table_invariants(random_instances):
    for tokens, query in random_instances[:60]:
        index = build_index(tokens, query)
        n = index.n
        table = index.full_table()
        widths = np.arange(1, n + 1)
        assert np.all(table >= 0)
        assert np.all(table <= n - widths + 1)
        assert np.all(np.diff(np.cumsum(index.lmco_table())) >= 0)
        assert [index.co(w) for w in range(1, n + 1)] == table.tolist()


def test_space_audit(random_instances):
    for tokens, query in random_instances[:60]:
        index = build_index(tokens, query)
        assert index.words() <= 16 * index.d + 64


def test_space_parameter_bound(random_instances):
    worst = max(build_index(tokens, query).d / np.sqrt(len(tokens) * query.q) for tokens, query in random_instances)
    assert worst <= 4


def test_round_trip(example_index):
    copy = CooccurrenceIndex.deserialize(example_index.serialize())
    assert copy == example_index
    assert copy.full_table().tolist() == EXAMPLE_TABLE


def test_round_trip_random(instance_factory):
    rng = random.Random(17)
    for tokens, query in instance_factory(100, seed=99, max_n=300):
        index = build_index(tokens, query)
        variant = rng.choice(list(PredecessorVariant))
        copy = CooccurrenceIndex.deserialize(index.serialize(), variant=variant)
        assert copy == index
        assert (copy.n, copy.q, copy.mu, copy.r1, copy.digest) == (index.n, index.q, index.mu, index.r1, index.digest)
        assert copy.full_table().tolist() == index.full_table().tolist()


def test_round_trip_without_cooccurrences():
    index = build_index(b'AAAA', QueryProfile.from_ids(b'AB'))
    assert CooccurrenceIndex.deserialize(index.serialize()).r1 is None


def test_bad_magic(example_index):
    data = example_index.serialize()
    with pytest.raises(BadMagicError):
        CooccurrenceIndex.deserialize(b'XOOC' + data[4:])


def test_version_mismatch(example_index):
    data = example_index.serialize()
    with pytest.raises(VersionMismatchError):
        CooccurrenceIndex.deserialize(data[:4] + struct.pack('<I', 2) + data[8:])


def test_truncated_streams(example_index):
    data = example_index.serialize()
    # cut inside the W array: drops the CRC, the digest and the last W entry
    with pytest.raises(TruncatedIndexError):
        CooccurrenceIndex.deserialize(data[:-(4 + 32 + 8)])
    with pytest.raises(TruncatedIndexError):
        CooccurrenceIndex.deserialize(data[:20])
    with pytest.raises(TruncatedIndexError):
        CooccurrenceIndex.deserialize(b'CO')


def test_checksum_failure(example_index):
    data = bytearray(example_index.serialize())
    data[60] ^= 0xFF
    with pytest.raises(ChecksumError):
        CooccurrenceIndex.deserialize(bytes(data))


def test_trailing_bytes(example_index):
    with pytest.raises(IndexFormatError):
        CooccurrenceIndex.deserialize(example_index.serialize() + b'\x00')


def with_header(data, n, q, mu, d, r1):
    """Replaces the header of a stream and recomputes its CRC."""
    body = data[:8] + struct.pack('<QQQQQ', n, q, mu, d, r1) + data[48:-4]
    return body + struct.pack('<I', zlib.crc32(body))


def test_rewritten_header_keeps_stream_valid(example_index):
    data = example_index.serialize()
    assert CooccurrenceIndex.deserialize(with_header(data, 13, 3, 2, 2, 8)) == example_index


@pytest.mark.parametrize('header', [
    (13, 1, 2, 2, 8),
    (13, 3, 0, 2, 8),
    (13, 3, 2, 2, NONE_SENTINEL),
    (13, 3, 2, 2, 100),
    (13, 3, 2, 2, 0),
    (13, 1, 0, 2, 100),
])
def test_header_contradicting_arrays(example_index, header):
    with pytest.raises(IndexFormatError):
        CooccurrenceIndex.deserialize(with_header(example_index.serialize(), *header))


def test_save_load_and_corpus_check(tmp_path, example, example_index):
    tokens, _ = example
    path = tmp_path / 'example.cooc'
    example_index.save(str(path))
    loaded = CooccurrenceIndex.load(str(path))
    assert loaded == example_index
    loaded.verify_corpus(tokens)
    with pytest.raises(CorpusMismatchError):
        loaded.verify_corpus(b'----BC-ACCB-A')


def test_package_exports():
    assert cooccurx.build_index is build_index
    assert cooccurx.MAGIC == b'COOC'
