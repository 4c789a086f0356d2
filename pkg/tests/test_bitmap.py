import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lanebfs.bitmap import BITS_PER_WORD, Bitmap, bit_to_vertex, swap_and_clear, vertex_to_bit


def test_word_layout_two_bits():
    # vertices 28 and 30 share word 0: 2^28 + 2^30 = 0x50000000
    bm = Bitmap(64)
    bm.set_bit(28)
    bm.set_bit(30)
    assert bm.word_at(0) == 0x50000000
    assert bm.word_at(1) == 0


def test_word_counts_round_up():
    assert Bitmap(1).word_count == 1
    assert Bitmap(32).word_count == 1
    assert Bitmap(33).word_count == 2
    assert Bitmap(2**20).word_count == 2**20 // 32


def test_footprint_one_mega_vertex():
    # one bit per vertex: 2^20 / 8 bytes
    assert Bitmap(2**20).nbytes == 131072


def test_set_test_isolated_exhaustive():
    for n in range(256):
        bm = Bitmap(256)
        bm.set_bit(n)
        assert bm.test_bit(n)
        assert bm.count_set() == 1
        w, off = vertex_to_bit(n)
        assert bm.word_at(w) == 1 << off
        assert bit_to_vertex(w, off) == n


def test_set_idempotent():
    bm = Bitmap(100)
    bm.set_bit(77)
    bm.set_bit(77)
    assert bm.count_set() == 1


def test_store_word_roundtrip():
    bm = Bitmap(96)
    bm.store_word(2, 0xDEADBEEF)
    assert bm.word_at(2) == 0xDEADBEEF
    assert bm.test_bit(64 + 0)
    assert bm.test_bit(64 + 31)
    assert not bm.test_bit(64 + 4)


def test_out_of_range_rejected():
    bm = Bitmap(32)
    with pytest.raises(AssertionError):
        bm.set_bit(32)
    with pytest.raises(AssertionError):
        bm.test_bit(-1)


def test_to_indices_sorted_and_nonzero_words():
    bm = Bitmap(200)
    for v in (199, 3, 64, 65, 0):
        bm.set_bit(v)
    assert bm.to_indices().tolist() == [0, 3, 64, 65, 199]
    assert bm.nonzero_words().tolist() == [0, 2, 6]


def test_swap_and_clear():
    a = Bitmap(64)
    b = Bitmap(64)
    a.set_bit(1)
    b.set_bit(40)
    new_in, new_out = swap_and_clear(a, b)
    assert new_in is b and new_out is a
    assert new_in.to_indices().tolist() == [40]
    assert not new_out.any_set()


@settings(max_examples=300)
@given(
    ops=st.lists(st.tuples(st.booleans(), st.integers(0, 499)), max_size=60),
    capacity=st.just(500),
)
def test_matches_set_model(ops, capacity):
    bm = Bitmap(capacity)
    model: set[int] = set()
    for is_set, n in ops:
        if is_set:
            bm.set_bit(n)
            model.add(n)
        else:
            assert bm.test_bit(n) == (n in model)
    assert bm.count_set() == len(model)
    assert bm.to_indices().tolist() == sorted(model)
    assert bm.any_set() == bool(model)


@given(ws=st.lists(st.integers(0, 2**32 - 1), min_size=1, max_size=8))
def test_words_view_consistent(ws):
    bm = Bitmap(len(ws) * BITS_PER_WORD)
    for i, w in enumerate(ws):
        bm.store_word(i, w)
    expect = sum(int(w).bit_count() for w in ws)
    assert bm.count_set() == expect
    got = {bit_to_vertex(i, off) for i in range(len(ws)) for off in range(32) if ws[i] >> off & 1}
    assert set(bm.to_indices().tolist()) == got
