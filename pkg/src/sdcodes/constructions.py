"""Code-building procedures: double circulant generators, neighbors, subtraction, extension."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .codes import LinearCode, is_self_dual
from .errors import BudgetExceeded, DimensionMismatch, PreconditionError
from .gf2core import BitVector, dot, reduce_by, rref_rows
from .shadow import shadow_decomposition

# Largest n/2 for which every neighbor is enumerated.
NEIGHBOR_MAX_HALF = 24


class DegenerateSubtraction(PreconditionError):
    """Every codeword already agrees on the two coordinates."""


def _as_bits(v: BitVector | Sequence[int] | str) -> BitVector:
    if isinstance(v, BitVector):
        return v
    if isinstance(v, str):
        return BitVector.from_string(v)
    return BitVector.from_bits(v)


def circulant_rows(first_row: BitVector | Sequence[int], shift: str = "right") -> list[int]:
    """Rows of the circulant with the given first row.

    ``shift="right"``: row ``i`` is the first row cyclically shifted right by
    ``i`` places (0-based).  ``shift="left"`` shifts the other way.
    """
    if shift not in ("right", "left"):
        raise ValueError(f"shift must be 'right' or 'left', not {shift!r}")
    a = _as_bits(first_row)
    m = a.length
    mask = (1 << m) - 1
    rows = []
    for i in range(m):
        s = i if shift == "right" else (m - i) % m
        rows.append(((a.bits << s) | (a.bits >> (m - s))) & mask if s else a.bits)
    return rows


def transpose_rows(rows: Sequence[int], m: int) -> list[int]:
    out = []
    for j in range(m):
        v = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                v |= 1 << i
        out.append(v)
    return out


def pure_double_circulant(first_row, shift: str = "right") -> LinearCode:
    """The ``[2m, m]`` code generated by ``(I_m | R)`` with ``R`` circulant."""
    r = circulant_rows(first_row, shift)
    m = len(r)
    return LinearCode.from_rows(2 * m, [(1 << i) | (r[i] << m) for i in range(m)])


def four_block_quasi_cyclic(a, b, shift: str = "right") -> LinearCode:
    """The ``[4m, 2m]`` code generated by ``(I_2m | [[A, B], [B^T, A^T]])``."""
    av, bv = _as_bits(a), _as_bits(b)
    if av.length != bv.length:
        raise DimensionMismatch(f"first rows of length {av.length} and {bv.length}")
    m = av.length
    ar, br = circulant_rows(av, shift), circulant_rows(bv, shift)
    at, bt = transpose_rows(ar, m), transpose_rows(br, m)
    block = [ar[i] | (br[i] << m) for i in range(m)] + [bt[i] | (at[i] << m) for i in range(m)]
    return LinearCode.from_rows(4 * m, [(1 << i) | (block[i] << (2 * m)) for i in range(2 * m)])


def _orthogonal_subcode(rows: Sequence[int], x: int) -> tuple[list[int], int | None]:
    """Rows spanning ``{c : c.x = 0}`` and one dropped row with ``c.x = 1`` (or None)."""
    pivot = next((r for r in rows if dot(r, x)), None)
    if pivot is None:
        return list(rows), None
    return [r ^ pivot if dot(r, x) else r for r in rows if r != pivot], pivot


def _require_self_dual(c: LinearCode) -> None:
    if not is_self_dual(c):
        raise PreconditionError("input code is not self-dual")


def neighbor(c: LinearCode, x: BitVector) -> LinearCode:
    """``<(C ∩ <x>^perp), x>`` for an even-weight ``x`` outside ``C``."""
    _require_self_dual(c)
    if x.length != c.n:
        raise DimensionMismatch(f"vector of length {x.length} vs code length {c.n}")
    if x.weight % 2:
        raise PreconditionError("x has odd weight, so the result would not be self-orthogonal")
    if c.contains_bits(x.bits):
        raise PreconditionError("x lies in the code; the neighbor would be the code itself")
    rows, _ = _orthogonal_subcode(c.rows, x.bits)
    return LinearCode.from_rows(c.n, rows + [x.bits])


def neighbor_multi(c: LinearCode, xs: Sequence[BitVector]) -> LinearCode:
    """``<(C ∩ <x_1, ..., x_r>^perp), x_1, ..., x_r>``."""
    _require_self_dual(c)
    bits = []
    for x in xs:
        if x.length != c.n:
            raise DimensionMismatch(f"vector of length {x.length} vs code length {c.n}")
        if x.weight % 2:
            raise PreconditionError("every added vector must have even weight")
        bits.append(x.bits)
    for i, a in enumerate(bits):
        for b in bits[i + 1 :]:
            if dot(a, b):
                raise PreconditionError("added vectors are not pairwise orthogonal")
    rows = list(c.rows)
    for x in bits:
        rows, _ = _orthogonal_subcode(rows, x)
    out = LinearCode.from_rows(c.n, rows + bits)
    if out.k != c.n // 2:
        raise PreconditionError(
            f"dimension defect: result has dimension {out.k}, expected {c.n // 2}"
        )
    return out


@dataclass(frozen=True)
class NeighborPair:
    n1: LinearCode
    n3: LinearCode


def n1_n3_neighbors(c: LinearCode) -> NeighborPair:
    """``N1 = C0 ∪ C1`` and ``N3 = C0 ∪ C3`` for ``n ≡ 0 (mod 4)``."""
    if c.n % 4:
        raise PreconditionError(f"N1/N3 neighbors need n divisible by 4, got n={c.n}")
    sd = shadow_decomposition(c)
    rows = list(sd.c0.rows)
    return NeighborPair(
        n1=LinearCode.from_rows(c.n, rows + [sd.rep1.bits]),
        n3=LinearCode.from_rows(c.n, rows + [sd.rep3.bits]),
    )


def _functional_basis(c: LinearCode) -> list[int]:
    """Even-weight vectors completing a basis of C to the even-weight space."""
    red, piv = list(c.rows), list(c.pivots)
    out = []
    for i in range(1, c.n):
        v = 1 | (1 << i)
        r = reduce_by(v, red, piv)
        if r:
            out.append(v)
            red, piv = rref_rows(red + [r], c.n)
    return out


def _neighbors_of_functional(c: LinearCode, y: int) -> tuple[LinearCode, LinearCode]:
    rows, dropped = _orthogonal_subcode(c.rows, y)
    return (
        LinearCode.from_rows(c.n, rows + [y]),
        LinearCode.from_rows(c.n, rows + [y ^ dropped]),
    )


def enumerate_self_dual_neighbors(
    c: LinearCode,
    filter: Callable[[LinearCode], bool] | None = None,
    visitor: Callable[[LinearCode], None] | None = None,
    max_half: int = NEIGHBOR_MAX_HALF,
) -> int:
    """Visit every self-dual neighbor of ``c``; return how many were generated.

    Subcodes of codimension 1 containing the all-one vector are the kernels
    of ``x -> x.y`` for even-weight ``y`` taken modulo ``C``; each such
    subcode ``B`` lies in exactly two self-dual codes other than ``C``,
    namely ``<B, y>`` and ``<B, y + c>`` for ``c`` in ``C \\ B``.  The
    total is ``2 (2^(n/2-1) - 1)``.
    """
    _require_self_dual(c)
    if c.n // 2 > max_half:
        raise BudgetExceeded(
            f"n/2 = {c.n // 2} exceeds the exhaustive neighbor budget of {max_half}"
        )
    basis = _functional_basis(c)
    emitted = 0
    y = 0
    for i in range(1, 1 << len(basis)):
        y ^= basis[(i & -i).bit_length() - 1]
        for nb in _neighbors_of_functional(c, y):
            emitted += 1
            if filter is None or filter(nb):
                if visitor is not None:
                    visitor(nb)
    return emitted


def sample_self_dual_neighbors(
    c: LinearCode,
    count: int,
    seed: int | None = None,
    filter: Callable[[LinearCode], bool] | None = None,
    visitor: Callable[[LinearCode], None] | None = None,
) -> int:
    """Non-exhaustive variant: ``count`` random functionals, two neighbors each."""
    _require_self_dual(c)
    basis = _functional_basis(c)
    if not basis:
        return 0
    rng = random.Random(seed)
    emitted = 0
    for _ in range(count):
        coeffs = 0
        while not coeffs:
            coeffs = rng.getrandbits(len(basis))
        y = 0
        for j, b in enumerate(basis):
            if (coeffs >> j) & 1:
                y ^= b
        for nb in _neighbors_of_functional(c, y):
            emitted += 1
            if filter is None or filter(nb):
                if visitor is not None:
                    visitor(nb)
    return emitted


def delete_coordinates(v: int, drop: Iterable[int]) -> int:
    """Remove 0-based bit positions ``drop`` and close the gaps."""
    for p in sorted(drop, reverse=True):
        low = v & ((1 << p) - 1)
        v = low | ((v >> (p + 1)) << p)
    return v


def subtract(c: LinearCode, i: int, j: int) -> LinearCode:
    """Keep codewords with equal entries at coordinates ``i, j`` (1-indexed), delete both."""
    _require_self_dual(c)
    if i == j:
        raise PreconditionError("subtraction needs two distinct coordinates")
    for p in (i, j):
        if not 1 <= p <= c.n:
            raise PreconditionError(f"coordinate {p} outside 1..{c.n}")
    f = (1 << (i - 1)) | (1 << (j - 1))
    rows, dropped = _orthogonal_subcode(c.rows, f)
    if dropped is None:
        raise DegenerateSubtraction(
            f"all codewords agree on coordinates {i} and {j}; the result would not be self-dual"
        )
    out = LinearCode.from_rows(c.n - 2, [delete_coordinates(r, (i - 1, j - 1)) for r in rows])
    if out.k != c.n // 2 - 1:
        raise PreconditionError(
            f"the weight-2 vector on {{{i},{j}}} is a codeword; "
            "the subtracted code loses a dimension"
        )
    return out


def extend_odd(c: LinearCode, t: BitVector) -> LinearCode:
    """``C^+(t) = (0,0,C^0) ∪ (1,1,C^2) ∪ (0,1,C^1) ∪ (1,0,C^3)``.

    ``C^0 = C ∩ t^perp``, ``C^2 = C \\ C^0``, ``C^1 = t + C^0`` and
    ``C^3 = t + C^2``.  The two new coordinates become coordinates 1 and 2.
    """
    _require_self_dual(c)
    if t.length != c.n:
        raise DimensionMismatch(f"vector of length {t.length} vs code length {c.n}")
    if t.weight % 2 == 0:
        raise PreconditionError("t must have odd weight")
    if c.contains_bits(t.bits):
        raise PreconditionError("t lies in the code")
    rows, c2 = _orthogonal_subcode(c.rows, t.bits)
    gen = [r << 2 for r in rows]
    gen.append(0b11 | (c2 << 2))
    gen.append(0b10 | (t.bits << 2))
    gen.append(0b01 | ((t.bits ^ c2) << 2))
    return LinearCode.from_rows(c.n + 2, gen)
