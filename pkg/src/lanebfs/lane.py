"""Sixteen-lane 32-bit integer vector primitives with two backends.

ScalarBackend is the reference semantics: one Python loop per lane with
explicit wraparound to 32 bits.  NumpyBackend computes the same results
with whole-array operations.  Both hand out the same LaneVector/LaneMask
types, so traversal code takes a backend object and never branches on
which one it got.  Anything the numpy backend does must match the scalar
backend bit for bit; the differential suite enforces that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LANE_WIDTH = 16

_WORD_MOD = 1 << 32
_I32_MIN = -(1 << 31)


def _wrap32(x: int) -> int:
    """Two's complement wrap of an unbounded int to signed 32 bits."""
    return (x - _I32_MIN) % _WORD_MOD + _I32_MIN


def _i32(a: np.ndarray) -> np.ndarray:
    # Memory is typed by whoever owns it; lanes always see int32 bit patterns.
    if a.dtype == np.int32:
        return a
    assert a.dtype == np.uint32
    return a.view(np.int32)


class LaneVector:
    """16 signed 32-bit lanes."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        assert data.shape == (LANE_WIDTH,) and data.dtype == np.int32
        self.data = data

    @classmethod
    def from_ints(cls, values) -> "LaneVector":
        return cls(np.array([_wrap32(int(v)) for v in values], dtype=np.int32))

    def tolist(self) -> list[int]:
        return [int(x) for x in self.data]

    def __repr__(self) -> str:
        return f"LaneVector({self.tolist()})"


class LaneMask:
    """16 per-lane predicate bits."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        assert data.shape == (LANE_WIDTH,) and data.dtype == np.bool_
        self.data = data

    @classmethod
    def from_bools(cls, values) -> "LaneMask":
        return cls(np.array([bool(v) for v in values], dtype=np.bool_))

    @classmethod
    def all_true(cls) -> "LaneMask":
        return cls(np.ones(LANE_WIDTH, dtype=np.bool_))

    def tolist(self) -> list[bool]:
        return [bool(x) for x in self.data]

    def any(self) -> bool:
        return bool(self.data.any())

    def count(self) -> int:
        return int(self.data.sum())

    def __repr__(self) -> str:
        return f"LaneMask({self.tolist()})"


@dataclass(frozen=True)
class RunPartition:
    """An index run [start, end) split around 64-byte-aligned vector loads.

    peel: scalar prologue before the first aligned index
    body: whole 16-lane chunks, body length is a multiple of 16
    remainder: scalar epilogue shorter than one vector
    """

    peel: tuple[int, int]
    body: tuple[int, int]
    remainder: tuple[int, int]


def partition_run(start: int, end: int, origin: int = 0) -> RunPartition:
    """Split [start, end) so the body starts at an index congruent to
    ``origin`` mod 16 (an aligned full-width load for int32 data)."""
    assert 0 <= start <= end
    first_aligned = start + ((origin - start) % LANE_WIDTH)
    if first_aligned >= end:
        return RunPartition((start, end), (end, end), (end, end))
    body_end = first_aligned + (end - first_aligned) // LANE_WIDTH * LANE_WIDTH
    return RunPartition((start, first_aligned), (first_aligned, body_end), (body_end, end))


def _full(mask: LaneMask | None) -> LaneMask:
    return LaneMask.all_true() if mask is None else mask


class ScalarBackend:
    """Reference backend: per-lane Python integer arithmetic."""

    name = "scalar"

    def broadcast(self, value: int) -> LaneVector:
        return LaneVector(np.full(LANE_WIDTH, _wrap32(int(value)), dtype=np.int32))

    def load_contiguous(self, base: np.ndarray, offset: int) -> LaneVector:
        src = _i32(base)
        assert 0 <= offset and offset + LANE_WIDTH <= len(src)
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            out[i] = int(src[offset + i])
        return LaneVector(out)

    def add_lanes(self, a: LaneVector, b: LaneVector) -> LaneVector:
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            out[i] = _wrap32(int(a.data[i]) + int(b.data[i]))
        return LaneVector(out)

    def div_lanes(self, a: LaneVector, divisor: int) -> LaneVector:
        # Truncating division, like C: -5 div 3 is -1, not -2.
        assert divisor != 0
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            n = int(a.data[i])
            q = abs(n) // abs(divisor)
            if (n < 0) != (divisor < 0):
                q = -q
            out[i] = _wrap32(q)
        return LaneVector(out)

    def rem_lanes(self, a: LaneVector, divisor: int) -> LaneVector:
        # Remainder matching truncating division: sign follows the dividend.
        assert divisor != 0
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            n = int(a.data[i])
            q = abs(n) // abs(divisor)
            if (n < 0) != (divisor < 0):
                q = -q
            out[i] = _wrap32(n - q * divisor)
        return LaneVector(out)

    def shift_left_variable(self, base: LaneVector, counts: LaneVector) -> LaneVector:
        # Counts outside [0, 31] give 0, matching variable-shift hardware.
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            c = int(counts.data[i])
            out[i] = _wrap32(int(base.data[i]) << c) if 0 <= c <= 31 else 0
        return LaneVector(out)

    def gather(self, base: np.ndarray, indices: LaneVector, mask: LaneMask | None = None) -> LaneVector:
        # Inactive lanes read nothing and come back 0.
        src = _i32(base)
        m = _full(mask)
        out = np.zeros(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            if m.data[i]:
                idx = int(indices.data[i])
                assert 0 <= idx < len(src)
                out[i] = int(src[idx])
        return LaneVector(out)

    def scatter(self, base: np.ndarray, indices: LaneVector, values: LaneVector, mask: LaneMask | None = None) -> None:
        # Lane order: on duplicate indices the highest active lane wins.
        dst = _i32(base)
        m = _full(mask)
        for i in range(LANE_WIDTH):
            if m.data[i]:
                idx = int(indices.data[i])
                assert 0 <= idx < len(dst)
                dst[idx] = np.int32(int(values.data[i]))

    def test_nonzero_and(self, a: LaneVector, b: LaneVector) -> LaneMask:
        out = np.empty(LANE_WIDTH, dtype=np.bool_)
        for i in range(LANE_WIDTH):
            out[i] = (int(a.data[i]) & int(b.data[i])) != 0
        return LaneMask(out)

    def mask_or(self, a: LaneMask, b: LaneMask) -> LaneMask:
        out = np.empty(LANE_WIDTH, dtype=np.bool_)
        for i in range(LANE_WIDTH):
            out[i] = bool(a.data[i]) or bool(b.data[i])
        return LaneMask(out)

    def mask_not(self, a: LaneMask) -> LaneMask:
        out = np.empty(LANE_WIDTH, dtype=np.bool_)
        for i in range(LANE_WIDTH):
            out[i] = not bool(a.data[i])
        return LaneMask(out)

    def masked_or_lanes(self, src: LaneVector, mask: LaneMask, a: LaneVector, b: LaneVector) -> LaneVector:
        # Active lanes get a | b, inactive lanes pass src through.
        out = np.empty(LANE_WIDTH, dtype=np.int32)
        for i in range(LANE_WIDTH):
            if mask.data[i]:
                out[i] = _wrap32(int(a.data[i]) & 0xFFFFFFFF | int(b.data[i]) & 0xFFFFFFFF)
            else:
                out[i] = int(src.data[i])
        return LaneVector(out)

    def reduce_or(self, v: LaneVector, mask: LaneMask | None = None) -> int:
        m = _full(mask)
        acc = 0
        for i in range(LANE_WIDTH):
            if m.data[i]:
                acc |= int(v.data[i]) & 0xFFFFFFFF
        return _wrap32(acc)

    def prefetch_hint(self, base: np.ndarray, offset: int) -> None:
        # Purely advisory on real hardware; nothing to do here.
        pass


class NumpyBackend:
    """Accelerated backend: one array operation per lane primitive."""

    name = "numpy"

    def broadcast(self, value: int) -> LaneVector:
        return LaneVector(np.full(LANE_WIDTH, _wrap32(int(value)), dtype=np.int32))

    def load_contiguous(self, base: np.ndarray, offset: int) -> LaneVector:
        src = _i32(base)
        assert 0 <= offset and offset + LANE_WIDTH <= len(src)
        return LaneVector(src[offset:offset + LANE_WIDTH].copy())

    def add_lanes(self, a: LaneVector, b: LaneVector) -> LaneVector:
        with np.errstate(over="ignore"):
            return LaneVector(a.data + b.data)

    def div_lanes(self, a: LaneVector, divisor: int) -> LaneVector:
        assert divisor != 0
        a64 = a.data.astype(np.int64)
        q = np.sign(a64) * (np.sign(divisor) * (np.abs(a64) // abs(divisor)))
        return LaneVector((q & 0xFFFFFFFF).astype(np.uint32).view(np.int32).copy())

    def rem_lanes(self, a: LaneVector, divisor: int) -> LaneVector:
        assert divisor != 0
        a64 = a.data.astype(np.int64)
        q = np.sign(a64) * (np.sign(divisor) * (np.abs(a64) // abs(divisor)))
        r = a64 - q * divisor
        return LaneVector((r & 0xFFFFFFFF).astype(np.uint32).view(np.int32).copy())

    def shift_left_variable(self, base: LaneVector, counts: LaneVector) -> LaneVector:
        ok = (counts.data >= 0) & (counts.data < 32)
        safe = np.where(ok, counts.data, 0).astype(np.uint32)
        shifted = base.data.view(np.uint32) << safe
        return LaneVector(np.where(ok, shifted, np.uint32(0)).view(np.int32))

    def gather(self, base: np.ndarray, indices: LaneVector, mask: LaneMask | None = None) -> LaneVector:
        src = _i32(base)
        m = _full(mask).data
        inb = (indices.data >= 0) & (indices.data < len(src))
        assert bool(inb[m].all())
        vals = src[np.where(m, indices.data, 0)]
        return LaneVector(np.where(m, vals, np.int32(0)))

    def scatter(self, base: np.ndarray, indices: LaneVector, values: LaneVector, mask: LaneMask | None = None) -> None:
        dst = _i32(base)
        m = _full(mask).data
        idx = indices.data[m]
        inb = (idx >= 0) & (idx < len(dst))
        assert bool(inb.all())
        # Fancy assignment applies lanes in order, so the last duplicate wins
        # exactly like the scalar loop.
        dst[idx] = values.data[m]

    def test_nonzero_and(self, a: LaneVector, b: LaneVector) -> LaneMask:
        return LaneMask((a.data & b.data) != 0)

    def mask_or(self, a: LaneMask, b: LaneMask) -> LaneMask:
        return LaneMask(a.data | b.data)

    def mask_not(self, a: LaneMask) -> LaneMask:
        return LaneMask(~a.data)

    def masked_or_lanes(self, src: LaneVector, mask: LaneMask, a: LaneVector, b: LaneVector) -> LaneVector:
        return LaneVector(np.where(mask.data, a.data | b.data, src.data))

    def reduce_or(self, v: LaneVector, mask: LaneMask | None = None) -> int:
        m = _full(mask).data
        acc = np.bitwise_or.reduce(v.data[m].view(np.uint32))
        return _wrap32(int(acc))

    def prefetch_hint(self, base: np.ndarray, offset: int) -> None:
        pass
