"""Bit-packed vectors and matrices over GF(2).

Vectors are stored as Python ints: coordinate 1 is bit 0 of the integer,
coordinate ``n`` is bit ``n - 1``.  All public coordinate arguments and
results are 1-indexed; bit positions used internally are 0-indexed.

Packing into machine words (``BitMatrix.words``) keeps the same order:
coordinate 1 is the least significant bit of word 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch

WORD_BITS = 64


def _nwords(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


@dataclass(frozen=True)
class BitVector:
    """A length-``length`` vector over GF(2).

    >>> v = BitVector.from_support(5, [1, 4])
    >>> str(v), v.weight, v.support()
    ('10010', 2, [1, 4])
    """

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"vector length must be positive, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond the vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            if not 1 <= i <= length:
                raise ValueError(f"coordinate {i} outside 1..{length}")
            bits |= 1 << (i - 1)
        return cls(length, bits)

    @classmethod
    def from_string(cls, s: str) -> BitVector:
        s = "".join(s.split())
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_bits(cls, seq: Sequence[int]) -> BitVector:
        return cls.from_string("".join("1" if b else "0" for b in seq))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return out

    def __getitem__(self, i: int) -> int:
        """Entry at 1-indexed coordinate ``i``."""
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return (self.bits >> (i - 1)) & 1

    def __len__(self) -> int:
        return self.length

    def _check(self, other: BitVector) -> None:
        if self.length != other.length:
            raise DimensionMismatch(f"length {self.length} vs {other.length}")

    def __add__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def dot(self, other: BitVector) -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector('{self}')"

    def lex_key(self) -> str:
        """Sort key for the left-to-right 0/1 string order (coordinate 1 first)."""
        return str(self)


@dataclass(frozen=True)
class BitMatrix:
    """A matrix over GF(2) with rows packed as ints.

    ``cols`` must be positive; ``rows`` may be empty.
    """

    cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if self.cols < 1:
            raise ValueError("a matrix needs at least one column")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if cols is None:
            if not vectors:
                raise ValueError("column count needed for an empty matrix")
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise DimensionMismatch(f"row of length {v.length} in a {cols}-column matrix")
        return cls(cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> BitMatrix:
        return cls.from_vectors([BitVector.from_string(s) for s in strings])

    @classmethod
    def from_array(cls, a) -> BitMatrix:
        a = np.asarray(a, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        weights = 1 << np.arange(a.shape[1], dtype=object)
        rows = tuple(int(sum(w for w, b in zip(weights, row) if b)) for row in a)
        return cls(a.shape[1], rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def row(self, i: int) -> BitVector:
        """Row ``i`` (0-based row index)."""
        return BitVector(self.cols, self.rows[i])

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(self.cols, r) for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.cols):
                out[i, j] = (r >> j) & 1
        return out

    def words(self) -> np.ndarray:
        """Rows packed into a ``(nrows, ceil(cols / 64))`` uint64 array."""
        return pack_ints(self.rows, self.cols)

    def transpose(self) -> BitMatrix:
        if not self.rows:
            raise ValueError("cannot transpose a matrix with no rows")
        out = []
        for j in range(self.cols):
            v = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    v |= 1 << i
            out.append(v)
        return BitMatrix(len(self.rows), tuple(out))

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if other.nrows != self.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return BitMatrix(
            self.cols + other.cols,
            tuple(a | (b << self.cols) for a, b in zip(self.rows, other.rows)),
        )

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return BitMatrix(self.cols, self.rows + other.rows)

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self)


def pack_ints(values: Sequence[int], n: int) -> np.ndarray:
    nw = _nwords(n)
    out = np.zeros((len(values), nw), dtype=np.uint64)
    mask = (1 << WORD_BITS) - 1
    for i, v in enumerate(values):
        for w in range(nw):
            out[i, w] = (v >> (WORD_BITS * w)) & mask
    return out


def unpack_words(words: np.ndarray) -> list[int]:
    """Inverse of :func:`pack_ints` for a 2-d uint64 array."""
    out = []
    for row in words:
        v = 0
        for w, x in enumerate(row):
            v |= int(x) << (WORD_BITS * w)
        out.append(v)
    return out


def rref_rows(rows: Iterable[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form on packed rows; returns (rows, 0-based pivots)."""
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(cols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        p = work.pop(idx)
        work = [r ^ p if r & bit else r for r in work]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return out, pivots


def reduce_by(v: int, rows: Sequence[int], pivots: Sequence[int]) -> int:
    """Eliminate the pivot bits of ``v`` using RREF ``rows``.

    The result is the lexicographically smallest member of ``v + rowspace``
    in the left-to-right string order, and zero iff ``v`` is in the span.
    """
    for r, p in zip(rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Return ``(reduced, rank, pivots)``; pivots are 1-indexed columns."""
    rows, piv = rref_rows(m.rows, m.cols)
    return BitMatrix(m.cols, tuple(rows)), len(rows), [p + 1 for p in piv]


def rank(m: BitMatrix) -> int:
    return len(rref_rows(m.rows, m.cols)[0])


def kernel_rows(rows: Sequence[int], cols: int) -> list[int]:
    """Basis of the right null space of the matrix with packed ``rows``."""
    red, piv = rref_rows(rows, cols)
    pivset = set(piv)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = 1 << f
        for r, p in zip(red, piv):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def kernel(m: BitMatrix) -> BitMatrix:
    """Rows form a basis of ``{v : m v^T = 0}``."""
    return BitMatrix(m.cols, tuple(kernel_rows(m.rows, m.cols)))


def member(m: BitMatrix, v: BitVector) -> bool:
    """Whether ``v`` lies in the row space of the reduced matrix ``m``."""
    if v.length != m.cols:
        raise DimensionMismatch(f"vector of length {v.length} vs {m.cols} columns")
    piv = [(r & -r).bit_length() - 1 for r in m.rows]
    return reduce_by(v.bits, m.rows, piv) == 0


def product(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2): each output row XORs the rows of ``b`` selected by ``a``."""
    if a.cols != b.nrows:
        raise DimensionMismatch(f"{a.shape} times {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.rows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(b.cols, tuple(out))


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def permute_bits(v: int, perm: Sequence[int]) -> int:
    """Move bit ``i`` of ``v`` to bit ``perm[i]`` (0-based)."""
    out = 0
    while v:
        low = v & -v
        out |= 1 << perm[low.bit_length() - 1]
        v ^= low
    return out
