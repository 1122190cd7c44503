"""Bit vectors, seeded hash families, and the classic Bloom filter.

Positions are 0-based everywhere. A hash family is fully determined by
(count, range_size, mode, seed): the same tuple reproduces the same positions
for an element across calls, runs, and machines, and families whose shapes
differ are statistically independent even under the same seed.
"""

from __future__ import annotations

import struct
from hashlib import blake2b

MASK64 = (1 << 64) - 1

MODE_RANDOM = "seeded-random-allocation"
MODE_DOUBLE = "double-hashing"
_MODES = (MODE_RANDOM, MODE_DOUBLE)

_CHUNKS_PER_BLOCK = 8


def element_to_bytes(element) -> bytes:
    """Canonical byte encoding of an element id (int, str, or bytes).

    Type-tagged so e.g. the int 5 and the bytes b"5" never collide.
    """
    if isinstance(element, bytes):
        return b"b" + element
    if isinstance(element, str):
        return b"s" + element.encode("utf-8")
    if isinstance(element, int):
        if 0 <= element <= MASK64:
            return b"i" + element.to_bytes(8, "little")
        return b"I" + str(element).encode("ascii")
    raise TypeError(f"unsupported element type: {type(element).__name__}")


def derive_seed(*parts) -> int:
    """Fold ints/strings/bytes into a 64-bit seed.

    Used to give trials and allocations their own independent streams, so
    results do not depend on execution order.
    """
    h = blake2b(digest_size=8)
    for part in parts:
        data = element_to_bytes(part)
        h.update(len(data).to_bytes(4, "little"))
        h.update(data)
    return int.from_bytes(h.digest(), "little")


class BitVector:
    """Fixed-length vector of bits backed by a single int."""

    __slots__ = ("length", "_bits")

    def __init__(self, length: int, bits: int = 0):
        if length < 1:
            raise ValueError(f"length must be positive, got {length}")
        if bits < 0 or bits >> length:
            raise ValueError(f"bits out of range for length {length}")
        self.length = length
        self._bits = bits

    @classmethod
    def from_positions(cls, length: int, positions) -> BitVector:
        bits = 0
        for pos in positions:
            if not 0 <= pos < length:
                raise ValueError(f"position {pos} out of range [0, {length})")
            bits |= 1 << pos
        return cls(length, bits)

    @classmethod
    def from_bitstring(cls, text: str) -> BitVector:
        """Parse a '0'/'1' string; character i is bit i."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError("bit string must be a non-empty run of 0s and 1s")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def get(self, position: int) -> bool:
        if not 0 <= position < self.length:
            raise ValueError(f"position {position} out of range [0, {self.length})")
        return bool(self._bits >> position & 1)

    def set(self, position: int) -> None:
        if not 0 <= position < self.length:
            raise ValueError(f"position {position} out of range [0, {self.length})")
        self._bits |= 1 << position

    def popcount(self) -> int:
        return self._bits.bit_count()

    def as_int(self) -> int:
        return self._bits

    def positions(self) -> tuple[int, ...]:
        """Indices of the set bits, ascending."""
        return tuple(i for i in range(self.length) if self._bits >> i & 1)

    def to_bitstring(self) -> str:
        return "".join("1" if self._bits >> i & 1 else "0" for i in range(self.length))

    def __or__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self._bits | other._bits)

    def __and__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self._bits & other._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and self._bits == other._bits

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"BitVector({self.length}, 0b{self._bits:0{self.length}b})"


def is_subset(a: BitVector, b: BitVector) -> bool:
    """True iff every set bit of a is set in b (b_a AND b_b == b_a)."""
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} vs {b.length}")
    return a._bits & b._bits == a._bits


class HashFamily:
    """Deterministic family of hash functions onto [0, range_size).

    count may be 0 (no functions, empty position list). In the default
    seeded-random-allocation mode each function is an independent uniform
    draw, with replacement unless distinct=True. Double-hashing mode derives
    all positions from two base hashes, the usual cheap alternative.
    """

    __slots__ = ("count", "range_size", "mode", "seed", "distinct", "_key")

    def __init__(self, count: int, range_size: int, *, mode: str = MODE_RANDOM,
                 seed: int = 0, distinct: bool = False):
        if count < 0:
            raise ValueError(f"count must be >= 0, got {count}")
        if range_size < 1:
            raise ValueError(f"range_size must be positive, got {range_size}")
        if mode not in _MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if distinct and count > range_size:
            raise ValueError(f"cannot draw {count} distinct positions from {range_size}")
        self.count = count
        self.range_size = range_size
        self.mode = mode
        self.seed = seed & MASK64
        self.distinct = distinct
        flags = _MODES.index(mode) | (distinct << 1)
        self._key = struct.pack("<QQQB", self.seed, count, range_size, flags)

    def _chunks(self, data: bytes, needed: int):
        """Yield unbounded 64-bit chunks of the element's keyed hash stream."""
        block = 0
        produced = 0
        while produced < needed:
            digest = blake2b(data + block.to_bytes(4, "little"),
                             key=self._key, digest_size=64).digest()
            for value in struct.unpack("<8Q", digest):
                yield value
                produced += 1
                if produced == needed:
                    return
            block += 1

    def positions(self, element) -> list[int]:
        """Hash positions of the element, one per function, order fixed."""
        if self.count == 0:
            return []
        data = element_to_bytes(element)
        size = self.range_size
        if self.mode == MODE_DOUBLE:
            digest = blake2b(data, key=self._key, digest_size=16).digest()
            h1, h2 = struct.unpack("<QQ", digest)
            a = h1 % size
            b = h2 % size or 1
            return [(a + i * b) % size for i in range(self.count)]
        if not self.distinct:
            return [c % size for c in self._chunks(data, self.count)]
        # distinct draws: walk the stream, keep first `count` unseen values
        out: list[int] = []
        seen = set()
        block = 0
        while len(out) < self.count:
            digest = blake2b(data + block.to_bytes(4, "little"),
                             key=self._key, digest_size=64).digest()
            for c in struct.unpack("<8Q", digest):
                pos = c % size
                if pos not in seen:
                    seen.add(pos)
                    out.append(pos)
                    if len(out) == self.count:
                        break
            block += 1
        return out

    def element_mask(self, element) -> int:
        """The element's bits as an int, the form the filters compare against."""
        mask = 0
        for pos in self.positions(element):
            mask |= 1 << pos
        return mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, HashFamily):
            return NotImplemented
        return self._key == other._key

    def __repr__(self) -> str:
        return (f"HashFamily(count={self.count}, range_size={self.range_size}, "
                f"mode={self.mode!r}, seed={self.seed}, distinct={self.distinct})")


class BloomFilter:
    """Classic Bloom filter: insert sets k bits, membership is a subset test.

    No false negatives ever; false positives at the usual rate for the
    (bits, hashes, inserted) shape.
    """

    __slots__ = ("vector", "family", "inserted_count")

    def __init__(self, bits: int, hashes: int, *, seed: int = 0,
                 mode: str = MODE_RANDOM, distinct: bool = False):
        if hashes < 1:
            raise ValueError(f"hashes must be >= 1, got {hashes}")
        self.vector = BitVector(bits)
        self.family = HashFamily(hashes, bits, mode=mode, seed=seed, distinct=distinct)
        self.inserted_count = 0

    @classmethod
    def from_family(cls, family: HashFamily) -> BloomFilter:
        if family.count < 1:
            raise ValueError("a Bloom filter needs at least one hash function")
        bf = cls.__new__(cls)
        bf.vector = BitVector(family.range_size)
        bf.family = family
        bf.inserted_count = 0
        return bf

    @property
    def bits(self) -> int:
        return self.vector.length

    @property
    def hashes(self) -> int:
        return self.family.count

    def element_vector(self, element) -> BitVector:
        """The element's own k-bit pattern b_e."""
        return BitVector(self.bits, self.family.element_mask(element))

    def insert(self, element) -> None:
        self.vector._bits |= self.family.element_mask(element)
        self.inserted_count += 1

    def contains(self, element) -> bool:
        mask = self.family.element_mask(element)
        return mask & self.vector._bits == mask

    def union(self, other: BloomFilter) -> BloomFilter:
        """Bitwise OR; equals inserting both element sets into one filter."""
        if self.family != other.family:
            raise ValueError("union requires identical length and hash family")
        out = BloomFilter.from_family(self.family)
        out.vector = self.vector | other.vector
        out.inserted_count = self.inserted_count + other.inserted_count
        return out

    def __eq__(self, other) -> bool:
        """Same family and same bits; insert bookkeeping is metadata."""
        if not isinstance(other, BloomFilter):
            return NotImplemented
        return self.family == other.family and self.vector == other.vector

    def __repr__(self) -> str:
        return (f"BloomFilter(bits={self.bits}, hashes={self.hashes}, "
                f"set={self.vector.popcount()}, inserted={self.inserted_count})")
