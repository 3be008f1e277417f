"""Doubly even subcode, shadow cosets and s-extremality of singly even self-dual codes.

For a singly even self-dual ``C`` with doubly even subcode ``C0``,
``C0^perp = C0 ∪ C1 ∪ C2 ∪ C3`` with ``C = C0 ∪ C2`` and shadow
``S = C1 ∪ C3``.  The shadow cosets are labeled canonically: ``C1`` is the
coset whose lexicographically smallest member (as a 0/1 string, coordinate
1 first) sorts first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import (
    LinearCode,
    ParityClass,
    WeightEnumerator,
    coset_weight_enumerator,
    is_exceptional,
    is_self_dual,
    min_weight,
    parity_class,
)
from .errors import PreconditionError
from .gf2core import BitVector, kernel_rows


def _require_singly_even(c: LinearCode) -> None:
    if not is_self_dual(c):
        raise PreconditionError("input code is not self-dual")
    if parity_class(c) is ParityClass.DOUBLY_EVEN:
        raise PreconditionError("input code is doubly even; it has no shadow decomposition")


def _split(c: LinearCode) -> tuple[list[int], int]:
    """Generator rows of C0 plus one dropped row of weight 2 mod 4."""
    odd = [r for r in c.rows if r.bit_count() % 4 == 2]
    r = odd[0]
    rows = [s ^ r if s.bit_count() % 4 == 2 else s for s in c.rows if s != r]
    return rows, r


def doubly_even_subcode(c: LinearCode) -> LinearCode:
    _require_singly_even(c)
    rows, _ = _split(c)
    return LinearCode.from_rows(c.n, rows)


def _lex_order(a: int, b: int, n: int) -> tuple[int, int]:
    if str(BitVector(n, a)) <= str(BitVector(n, b)):
        return a, b
    return b, a


@dataclass(frozen=True)
class ShadowDecomposition:
    code: LinearCode
    c0: LinearCode
    rep1: BitVector
    rep2: BitVector
    rep3: BitVector
    labeling_canonical: bool = True

    @property
    def n(self) -> int:
        return self.code.n

    def coset(self, i: int) -> tuple[LinearCode, BitVector]:
        """``(C0, representative)`` of coset ``C_i``."""
        rep = {0: BitVector.zeros(self.n), 1: self.rep1, 2: self.rep2, 3: self.rep3}[i]
        return self.c0, rep

    def coset_weight_enumerator(self, i: int) -> WeightEnumerator:
        return coset_weight_enumerator(*self.coset(i))

    def shadow_weight_enumerator(self) -> WeightEnumerator:
        w1 = self.coset_weight_enumerator(1).counts
        w3 = self.coset_weight_enumerator(3).counts
        return WeightEnumerator(tuple(a + b for a, b in zip(w1, w3)))

    def contains_shadow(self, v: BitVector) -> bool:
        x = self.c0.reduce(v.bits)
        return x in (self.rep1.bits, self.rep3.bits)


def shadow_decomposition(c: LinearCode) -> ShadowDecomposition:
    _require_singly_even(c)
    rows, r = _split(c)
    c0 = LinearCode.from_rows(c.n, rows)
    # any vector of C0^perp outside C sits in one shadow coset
    u = next(v for v in kernel_rows(c0.rows, c.n) if not c.contains_bits(v))
    rep2 = c0.reduce(r)
    s1, s3 = _lex_order(c0.reduce(u), c0.reduce(u ^ rep2), c.n)
    return ShadowDecomposition(
        code=c,
        c0=c0,
        rep1=BitVector(c.n, s1),
        rep2=BitVector(c.n, rep2),
        rep3=BitVector(c.n, s3),
    )


def shadow_min_weight(c: LinearCode) -> int:
    sd = shadow_decomposition(c)
    return sd.shadow_weight_enumerator().min_nonzero_weight()


@dataclass(frozen=True)
class SExtremality:
    n: int
    d: int
    d_shadow: int
    bound: int
    exceptional: bool

    @property
    def s_extremal(self) -> bool:
        return self.d_shadow == self.bound

    def __str__(self) -> str:
        verdict = "yes" if self.s_extremal else "no"
        tag = " (exceptional case)" if self.exceptional else ""
        return f"s-extremal: {verdict}  [{self.n},{self.n // 2},{self.d}]  d(S)={self.d_shadow}{tag}"


def s_extremality(c: LinearCode) -> SExtremality:
    """Shadow minimum weight compared to ``n/2 + 4 - 2d``.

    When ``n ≡ 22 (mod 24)`` and ``d = 4 floor(n/24) + 6`` the shadow weight
    is forced to ``n/2 + 8 - 2d`` instead, and that value is the target.
    """
    _require_singly_even(c)
    d = min_weight(c)
    ds = shadow_min_weight(c)
    exc = is_exceptional(c.n, d)
    bound = c.n // 2 + (8 if exc else 4) - 2 * d
    return SExtremality(n=c.n, d=d, d_shadow=ds, bound=bound, exceptional=exc)


def is_s_extremal(c: LinearCode) -> bool:
    return s_extremality(c).s_extremal
