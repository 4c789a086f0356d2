"""Dense bit sets over 32-bit words, used as BFS frontier and visited maps."""

from __future__ import annotations

import numpy as np

BITS_PER_WORD = 32


class Bitmap:
    """Fixed-capacity bit set backed by little-endian 32-bit words.

    Bit ``n`` lives in word ``n // 32`` at offset ``n % 32``, so a word
    whose only set members are vertices 28 and 30 reads ``0x50000000``.
    One word answers membership for 32 vertices at once, which is what the
    word-at-a-time traversal and restoration passes rely on.
    """

    __slots__ = ("capacity", "words")

    def __init__(self, capacity: int):
        assert capacity > 0
        n_words = (capacity + BITS_PER_WORD - 1) // BITS_PER_WORD
        self.capacity = capacity
        self.words = np.zeros(n_words, dtype=np.uint32)

    @property
    def word_count(self) -> int:
        return len(self.words)

    @property
    def nbytes(self) -> int:
        return self.words.nbytes

    def set_bit(self, n: int) -> None:
        assert 0 <= n < self.capacity
        self.words[n // BITS_PER_WORD] |= np.uint32(1) << np.uint32(n % BITS_PER_WORD)

    def test_bit(self, n: int) -> bool:
        assert 0 <= n < self.capacity
        return bool((self.words[n // BITS_PER_WORD] >> np.uint32(n % BITS_PER_WORD)) & np.uint32(1))

    def word_at(self, i: int) -> int:
        return int(self.words[i])

    def store_word(self, i: int, value: int) -> None:
        assert 0 <= value < (1 << BITS_PER_WORD)
        self.words[i] = value

    def clear_all(self) -> None:
        self.words[:] = 0

    def any_set(self) -> bool:
        return bool(self.words.any())

    def count_set(self) -> int:
        return int(np.unpackbits(self.words.view(np.uint8)).sum())

    def nonzero_words(self) -> np.ndarray:
        """Indices of words with at least one set bit, ascending."""
        return np.nonzero(self.words)[0]

    def to_indices(self) -> np.ndarray:
        """Set bit positions in ascending order as int64 vertex ids."""
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return np.nonzero(bits)[0].astype(np.int64)


def bit_to_vertex(word_index: int, offset: int) -> int:
    return word_index * BITS_PER_WORD + offset


def vertex_to_bit(v: int) -> tuple[int, int]:
    return v // BITS_PER_WORD, v % BITS_PER_WORD


def swap_and_clear(in_map: Bitmap, out_map: Bitmap) -> tuple[Bitmap, Bitmap]:
    """End a layer: the out map becomes the next in map and the spent in
    map is zeroed for reuse as the next out map.  Returns (in, out)."""
    in_map.clear_all()
    return out_map, in_map
