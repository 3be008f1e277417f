"""Binary linear codes: duals, self-duality, exact weight enumeration, bounds."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numba
import numpy as np

from . import _kernels
from .errors import BudgetExceeded, DimensionMismatch, PreconditionError
from .gf2core import (
    BitMatrix,
    BitVector,
    dot,
    kernel_rows,
    pack_ints,
    reduce_by,
    rref_rows,
    unpack_words,
)

# Largest dimension enumerated exhaustively unless a caller overrides it.
ENUM_MAX_DIM = 32


class ParityClass(Enum):
    DOUBLY_EVEN = "doubly even"
    SINGLY_EVEN = "singly even"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AtLeast:
    """Result of an early-aborted scan that found no weight below ``threshold``."""

    threshold: int

    def __str__(self) -> str:
        return f">={self.threshold}"


@dataclass(frozen=True)
class WeightEnumerator:
    """Exact codeword counts by weight; ``counts[w]`` for ``w = 0..n``."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    def __iter__(self):
        return iter(self.counts)

    def min_nonzero_weight(self) -> int | None:
        return next((w for w in range(1, len(self.counts)) if self.counts[w]), None)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def __str__(self) -> str:
        terms = []
        for w, c in self.nonzero().items():
            if w == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}y^{w}" if c != 1 else f"y^{w}")
        return " + ".join(terms) if terms else "0"


def _chunk_bits(k: int) -> int:
    threads = numba.get_num_threads()
    if threads <= 1 or k < 16:
        return 0
    return min(k - 10, (threads - 1).bit_length() + 2)


def _check_budget(k: int, max_dim: int | None) -> None:
    limit = ENUM_MAX_DIM if max_dim is None else max_dim
    if k > limit:
        raise BudgetExceeded(f"dimension {k} exceeds the enumeration budget of {limit}")


def affine_histogram(rows: Sequence[int], start: int, n: int) -> list[int]:
    """Weight histogram of ``start + span(rows)`` (rows must be independent)."""
    k = len(rows)
    p = _chunk_bits(k)
    if n <= 64:
        arr = np.array([np.uint64(r) for r in rows], dtype=np.uint64)
        h = _kernels.histogram_1(arr, np.uint64(start), n, p)
    else:
        h = _kernels.histogram_m(pack_ints(rows, n), pack_ints([start], n)[0], n, p)
    return [int(x) for x in h]


def affine_first_below(rows: Sequence[int], start: int, n: int, threshold: int) -> int | None:
    if n <= 64:
        arr = np.array([np.uint64(r) for r in rows], dtype=np.uint64)
        w = _kernels.first_below_1(arr, np.uint64(start), np.uint64(threshold))
    else:
        w = _kernels.first_below_m(
            pack_ints(rows, n), pack_ints([start], n)[0], np.uint64(threshold)
        )
    return None if w < 0 else int(w)


def affine_collect(
    rows: Sequence[int], start: int, n: int, lo: int, hi: int, count: int
) -> list[int]:
    """All elements of ``start + span(rows)`` with weight in ``[lo, hi]``; ``count`` exact."""
    if count == 0:
        return []
    if n <= 64:
        arr = np.array([np.uint64(r) for r in rows], dtype=np.uint64)
        got = _kernels.collect_1(arr, np.uint64(start), np.uint64(lo), np.uint64(hi), count)
        return [int(x) for x in got]
    got = _kernels.collect_m(
        pack_ints(rows, n), pack_ints([start], n)[0], np.uint64(lo), np.uint64(hi), count
    )
    return unpack_words(got)


class LinearCode:
    """An ``[n, k]`` binary code held by its RREF generator matrix.

    Instances are immutable; derived data (dual basis, weight enumerator) is
    computed lazily once under a lock and then shared.
    """

    __slots__ = ("n", "k", "gen", "pivots", "_lock", "_cache")

    def __init__(self, gen: BitMatrix):
        rows, piv = rref_rows(gen.rows, gen.cols)
        self.n = gen.cols
        self.k = len(rows)
        self.gen = BitMatrix(gen.cols, tuple(rows))
        self.pivots = tuple(piv)
        self._lock = threading.RLock()
        self._cache: dict = {}

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int]) -> LinearCode:
        return cls(BitMatrix(n, tuple(rows)))

    @property
    def rows(self) -> tuple[int, ...]:
        return self.gen.rows

    def _cached(self, key, fn):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    @property
    def dual_gen(self) -> BitMatrix:
        return self._cached(
            "dual_gen", lambda: BitMatrix(self.n, tuple(kernel_rows(self.rows, self.n)))
        )

    def reduce(self, v: int) -> int:
        """Lexicographically smallest member of the coset ``v + C`` (as packed int)."""
        return reduce_by(v, self.rows, self.pivots)

    def contains_bits(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __contains__(self, v: BitVector) -> bool:
        if v.length != self.n:
            raise DimensionMismatch(f"vector of length {v.length} vs code length {self.n}")
        return self.contains_bits(v.bits)

    def codewords(self) -> Iterator[int]:
        """All codewords as packed ints, in Gray-code order (small ``k`` only)."""
        w = 0
        yield w
        for i in range(1, 1 << self.k):
            w ^= self.rows[(i & -i).bit_length() - 1]
            yield w

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}])"


def from_generator(m: BitMatrix) -> LinearCode:
    return LinearCode(m)


def dual(c: LinearCode) -> LinearCode:
    return LinearCode(c.dual_gen)


def is_self_orthogonal(c: LinearCode) -> bool:
    rows = c.rows
    for i, a in enumerate(rows):
        for b in rows[i:]:
            if dot(a, b):
                return False
    return True


def is_self_dual(c: LinearCode) -> bool:
    return c.n % 2 == 0 and 2 * c.k == c.n and is_self_orthogonal(c)


def parity_class(c: LinearCode) -> ParityClass:
    """Doubly even iff every generator row has weight divisible by 4.

    For self-orthogonal codes pairwise intersections are even, so
    ``wt(a+b) = wt(a) + wt(b) - 2|a & b|`` keeps weights in ``4Z``.
    """
    if not is_self_orthogonal(c):
        raise PreconditionError("parity class is defined for self-orthogonal codes")
    if all(r.bit_count() % 4 == 0 for r in c.rows):
        return ParityClass.DOUBLY_EVEN
    return ParityClass.SINGLY_EVEN


def weight_enumerator(c: LinearCode, max_dim: int | None = None) -> WeightEnumerator:
    _check_budget(c.k, max_dim)
    return c._cached("wenum", lambda: WeightEnumerator(tuple(affine_histogram(c.rows, 0, c.n))))


def coset_weight_enumerator(
    c: LinearCode, rep: BitVector, max_dim: int | None = None
) -> WeightEnumerator:
    if rep.length != c.n:
        raise DimensionMismatch(f"coset representative of length {rep.length} vs {c.n}")
    _check_budget(c.k, max_dim)
    return WeightEnumerator(tuple(affine_histogram(c.rows, rep.bits, c.n)))


def min_weight(
    c: LinearCode, early_abort_at: int | None = None, max_dim: int | None = None
) -> int | AtLeast:
    """Minimum nonzero weight.

    With ``early_abort_at=t`` the scan stops at the first nonzero codeword of
    weight below ``t`` and returns that weight (a certified witness that
    ``d < t``, not necessarily ``d`` itself); a scan that finds none returns
    ``AtLeast(t)``.
    """
    if c.k == 0:
        raise PreconditionError("the zero code has no minimum weight")
    _check_budget(c.k, max_dim)
    if early_abort_at is not None:
        if "wenum" in c._cache:
            d = c._cache["wenum"].min_nonzero_weight()
            return d if d < early_abort_at else AtLeast(early_abort_at)
        w = affine_first_below(c.rows, 0, c.n, early_abort_at)
        return AtLeast(early_abort_at) if w is None else w
    return weight_enumerator(c, max_dim).min_nonzero_weight()


def coset_min_weight(c: LinearCode, rep: BitVector, max_dim: int | None = None) -> int:
    """Minimum nonzero weight over ``rep + C``."""
    d = coset_weight_enumerator(c, rep, max_dim).min_nonzero_weight()
    if d is None:
        raise PreconditionError("coset contains only the zero vector")
    return d


def codewords_of_weight(
    c: LinearCode, lo: int, hi: int | None = None, rep: int = 0, max_dim: int | None = None
) -> list[int]:
    """Packed members of ``rep + C`` with weight in ``[lo, hi]``."""
    hi = lo if hi is None else hi
    _check_budget(c.k, max_dim)
    if rep == 0:
        h = weight_enumerator(c, max_dim).counts
    else:
        h = affine_histogram(c.rows, rep, c.n)
    count = sum(h[lo : hi + 1])
    return affine_collect(c.rows, rep, c.n, lo, hi, count)


# -- bounds ------------------------------------------------------------------

_S_EXTREMAL_RANGES = {
    8: (None, 44, "n ≤ 6d−4"),
    10: (46, 70, "46 ≤ n ≤ 70"),
    12: (None, 68, "n ≤ 6d−4"),
    14: (70, 94, "70 ≤ n ≤ 94"),
}


@dataclass(frozen=True)
class BoundReport:
    n: int
    extremal_bound: int
    d: int | None = None
    shadow_bound: int | None = None
    exceptional: bool = False
    s_extremal_range: tuple[int | None, int | None] | None = None
    range_rule: str | None = None
    admissible: bool | None = None

    def __str__(self) -> str:
        parts = [f"n={self.n}", f"extremal bound d ≤ {self.extremal_bound}"]
        if self.d is not None:
            tag = " (exceptional case)" if self.exceptional else ""
            parts.append(f"shadow bound d(S) = {self.shadow_bound}{tag}" if self.exceptional
                         else f"shadow bound d(S) ≤ {self.shadow_bound}")
            if self.admissible is not None:
                verdict = "admissible" if self.admissible else "not admissible"
                parts.append(f"{verdict} ({self.range_rule})")
        return "  ".join(parts)


def extremal_bound(n: int) -> int:
    return 4 * (n // 24) + (6 if n % 24 == 22 else 4)


def is_exceptional(n: int, d: int) -> bool:
    return n % 24 == 22 and d == 4 * (n // 24) + 6


def shadow_bound(n: int, d: int) -> int:
    """Largest possible shadow weight, or its forced value in the exceptional case."""
    return n // 2 + (8 if is_exceptional(n, d) else 4) - 2 * d


def bounds(n: int, d: int | None = None) -> BoundReport:
    if n < 2 or n % 2:
        raise PreconditionError(f"self-dual codes need even n >= 2, got {n}")
    if d is None:
        return BoundReport(n=n, extremal_bound=extremal_bound(n))
    rng = _S_EXTREMAL_RANGES.get(d)
    admissible = None
    rule = None
    if rng is not None:
        lo, hi, rule = rng
        admissible = (lo is None or n >= lo) and (hi is None or n <= hi)
    return BoundReport(
        n=n,
        extremal_bound=extremal_bound(n),
        d=d,
        shadow_bound=shadow_bound(n, d),
        exceptional=is_exceptional(n, d),
        s_extremal_range=None if rng is None else (rng[0], rng[1]),
        range_rule=rule,
        admissible=admissible,
    )
