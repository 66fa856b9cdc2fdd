"""Tests for the gadget generators and their claim checks."""

import random

import pytest

from cooccurx import build_index
from cooccurx.errors import GadgetSpecError
from cooccurx.gadgets import (FILLER, GadgetConcatSpec, GadgetFamily, IncrementGadgetSpec, PermutationSpec,
                              PredecessorInstanceSpec, SetEncodingSpec, encode_gadget, render, render_concat,
                              render_increment, render_set_encoding, spec_record, verify_claims)


def built(family, spec):
    tokens, query = render(family, spec)
    return build_index(*encode_gadget(tokens, query))


def test_increment_gadget_layout():
    tokens = render_increment(IncrementGadgetSpec(u=5, i=3))
    assert tokens == ['A', FILLER, 'B'] + [FILLER] * 5
    assert render_increment(IncrementGadgetSpec(u=5, i=2))[:2] == ['A', 'B']


@pytest.mark.parametrize('i', [0, 1, 6])
def test_increment_gadget_range(i):
    with pytest.raises(GadgetSpecError):
        render_increment(IncrementGadgetSpec(u=5, i=i))


def test_concat_small():
    spec = GadgetConcatSpec(u=6, E=(2, 5), c=(1, 3))
    assert len(render_concat(spec)) == (2 + 6) + 3 * (5 + 6)
    index = built(GadgetFamily.CONCAT, spec)
    assert [index.enc.delta_at(e) for e in range(2, 7)] == [1, 0, 0, 3, 0]
    assert verify_claims(GadgetFamily.CONCAT, spec, index).passed


@pytest.mark.parametrize('spec', [
    GadgetConcatSpec(u=6, E=(5, 2), c=(1, 1)),
    GadgetConcatSpec(u=6, E=(2, 5), c=(1,)),
    GadgetConcatSpec(u=6, E=(2, 7), c=(1, 1)),
    GadgetConcatSpec(u=6, E=(1, 3), c=(1, 1)),
    GadgetConcatSpec(u=6, E=(2, 3), c=(1, 0)),
])
def test_concat_rejects_bad_specs(spec):
    with pytest.raises(GadgetSpecError):
        render_concat(spec)


def test_concat_random():
    rng = random.Random(50)
    for _ in range(50):
        u = rng.randint(3, 200)
        m = rng.randint(1, min(20, u - 1))
        E = tuple(sorted(rng.sample(range(2, u + 1), m)))
        c = tuple(rng.randint(1, 10) for _ in range(m))
        spec = GadgetConcatSpec(u=u, E=E, c=c)
        index = built(GadgetFamily.CONCAT, spec)
        report = verify_claims(GadgetFamily.CONCAT, spec, index)
        assert report.passed, report.failures()
        counts = dict(zip(E, c))
        assert all(index.enc.delta_at(e) == counts.get(e, 0) for e in range(2, u + 1))
        assert m <= index.d <= 8 * m


def test_permutation_instance():
    spec = PermutationSpec(u=6, p=(3, 2, 4))
    index = built(GadgetFamily.PERMUTATION, spec)
    assert [index.enc.delta_at(i) for i in (2, 3, 4)] == [3, 2, 4]
    assert verify_claims(GadgetFamily.PERMUTATION, spec, index).passed
    with pytest.raises(GadgetSpecError):
        render(GadgetFamily.PERMUTATION, PermutationSpec(u=3, p=(2, 2, 2)))


def test_predecessor_small():
    spec = PredecessorInstanceSpec(u=4, X=(2, 4))
    index = built(GadgetFamily.PREDECESSOR, spec)
    assert index.lmco(2) == 2
    assert index.lmco(3) == 2
    assert index.lmco(4) == 4
    assert spec.predecessor(1) == 0


def test_predecessor_random():
    rng = random.Random(51)
    for _ in range(50):
        u = rng.randint(3, 100)
        m = rng.randint(1, min(10, u - 1))
        spec = PredecessorInstanceSpec(u=u, X=tuple(sorted(rng.sample(range(2, u + 1), m))))
        index = built(GadgetFamily.PREDECESSOR, spec)
        report = verify_claims(GadgetFamily.PREDECESSOR, spec, index)
        assert report.passed, report.failures()
        assert index.n <= 2 * u * u
        assert all(index.lmco(x) == spec.predecessor(x) for x in range(2, u + 1))


def test_set_encoding_small():
    spec = SetEncodingSpec(k=3, alpha=4, T=(4, 8))
    tokens = render_set_encoding(spec)
    assert len(tokens) == 36
    assert tokens[:3] == ['C1', 'C2', 'C3']
    index = built(GadgetFamily.SET_ENCODING, spec)
    assert index.enc.delta_at(4) == 1
    assert index.enc.delta_at(8) == 1
    assert [index.enc.delta_at(i) for i in (6, 10, 12)] == [0, 0, 0]


def test_set_encoding_padding():
    spec = SetEncodingSpec(k=4, alpha=4, T=(6,))
    assert spec.padding() == [18, 20]
    assert spec.blocks() == [[6, 18, 20]]
    assert verify_claims(GadgetFamily.SET_ENCODING, spec, built(GadgetFamily.SET_ENCODING, spec)).passed


def test_set_encoding_empty():
    spec = SetEncodingSpec(k=3, alpha=3, T=())
    assert render_set_encoding(spec) == []
    assert verify_claims(GadgetFamily.SET_ENCODING, spec, built(GadgetFamily.SET_ENCODING, spec)).passed


@pytest.mark.parametrize('spec', [
    SetEncodingSpec(k=3, alpha=4, T=(5,)),
    SetEncodingSpec(k=3, alpha=4, T=(2,)),
    SetEncodingSpec(k=3, alpha=4, T=(14,)),
    SetEncodingSpec(k=3, alpha=4, T=(4, 4)),
    SetEncodingSpec(k=3, alpha=2, T=()),
    SetEncodingSpec(k=2, alpha=4, T=()),
])
def test_set_encoding_rejects_bad_specs(spec):
    with pytest.raises(GadgetSpecError):
        render_set_encoding(spec)


def test_set_encoding_random():
    rng = random.Random(52)
    for _ in range(25):
        k = rng.randint(3, 6)
        alpha = rng.randint(k, 12)
        universe = SetEncodingSpec(k=k, alpha=alpha, T=()).even_universe()
        T = tuple(sorted(rng.sample(universe, rng.randint(0, len(universe)))))
        spec = SetEncodingSpec(k=k, alpha=alpha, T=T)
        index = built(GadgetFamily.SET_ENCODING, spec)
        report = verify_claims(GadgetFamily.SET_ENCODING, spec, index)
        assert report.passed, report.failures()
        assert all((index.enc.delta_at(i) == 1) == (i in T) for i in universe)


def test_claim_report_flags_wrong_index():
    spec = GadgetConcatSpec(u=6, E=(2, 5), c=(1, 3))
    other = built(GadgetFamily.CONCAT, GadgetConcatSpec(u=6, E=(3,), c=(1,)))
    report = verify_claims(GadgetFamily.CONCAT, spec, other)
    assert not report.passed
    frame = report.to_frame()
    assert list(frame.columns) == ['name', 'passed', 'detail']
    assert not frame.loc[frame['name'] == 'delta', 'passed'].item()


def test_spec_record():
    record = spec_record(GadgetFamily.CONCAT, GadgetConcatSpec(u=6, E=(2, 5), c=(1, 3)))
    assert record == {'family': 'concat', 'u': 6, 'E': [2, 5], 'c': [1, 3]}


def test_encode_gadget_shares_ids():
    ids, query = encode_gadget(['A', '$', 'B'], ('A', 'B'))
    assert ids == [0, 1, 2]
    assert query == [0, 2]
