"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

from sdcodes.codes import LinearCode, ParityClass, is_self_dual, parity_class
from sdcodes.constructions import neighbor
from sdcodes.gf2core import BitVector, rref_rows


def popcount(v: int) -> int:
    return bin(v).count("1")


def span(rows) -> set[int]:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def weight_counts(words, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for w in words:
        counts[popcount(w)] += 1
    return counts


def macwilliams(counts: list[int]) -> list[int]:
    """Dual weight distribution via Krawtchouk polynomials, exact integers."""
    n = len(counts) - 1
    size = sum(counts)
    out = []
    for j in range(n + 1):
        s = 0
        for i, a in enumerate(counts):
            if a:
                s += a * sum((-1) ** t * comb(i, t) * comb(n - i, j - t) for t in range(j + 1))
        assert s % size == 0
        out.append(s // size)
    return out


def all_self_dual_codes(n: int) -> list[tuple[int, ...]]:
    """Every self-dual code of length ``n`` as its sorted RREF row tuple.

    Backtracks over pivot sets; each code has exactly one RREF so no
    deduplication is needed.
    """
    k = n // 2
    out = []
    for piv in combinations(range(n), k):
        nonpiv = [q for q in range(n) if q not in piv]
        options = []
        for p in piv:
            free = [q for q in nonpiv if q > p]
            row_opts = []
            for m in range(1 << len(free)):
                r = 1 << p
                for b, q in enumerate(free):
                    if m >> b & 1:
                        r |= 1 << q
                if popcount(r) % 2 == 0:
                    row_opts.append(r)
            options.append(row_opts)

        def rec(i, chosen):
            if i < 0:
                out.append(tuple(sorted(chosen)))
                return
            for r in options[i]:
                if all(popcount(r & s) % 2 == 0 for s in chosen):
                    chosen.append(r)
                    rec(i - 1, chosen)
                    chosen.pop()

        rec(k - 1, [])
    return out


def self_dual_mass(n: int) -> int:
    m = 1
    for i in range(1, n // 2):
        m *= 2**i + 1
    return m


def canonical_rows(rows, n: int) -> tuple[int, ...]:
    """Sorted RREF rows: equal exactly when the spans are equal."""
    return tuple(sorted(rref_rows(rows, n)[0]))


def swap_bits(v: int, a: int, b: int) -> int:
    if ((v >> a) ^ (v >> b)) & 1:
        v ^= (1 << a) | (1 << b)
    return v


def orbit(rows: tuple[int, ...], n: int) -> set[tuple[int, ...]]:
    """All codes permutation-equivalent to ``rows``, closed under adjacent swaps."""
    start = canonical_rows(rows, n)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for a in range(n - 1):
            nxt = canonical_rows([swap_bits(r, a, a + 1) for r in cur], n)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def random_even_outside(c: LinearCode, rng: random.Random) -> BitVector:
    while True:
        v = rng.getrandbits(c.n)
        if popcount(v) % 2 == 0 and not c.contains_bits(v):
            return BitVector(c.n, v)


def random_self_dual(n: int, rng: random.Random, steps: int = 6) -> LinearCode:
    """A neighbor walk started from the direct sum of ``n/2`` copies of {00, 11}."""
    c = LinearCode.from_rows(n, [0b11 << (2 * i) for i in range(n // 2)])
    if n < 4:
        return c
    for _ in range(steps):
        c = neighbor(c, random_even_outside(c, rng))
    assert is_self_dual(c)
    return c


def random_singly_even(n: int, rng: random.Random) -> LinearCode:
    while True:
        c = random_self_dual(n, rng)
        if parity_class(c) is ParityClass.SINGLY_EVEN:
            return c


def random_code(n: int, k: int, rng: random.Random) -> LinearCode:
    while True:
        c = LinearCode.from_rows(n, [rng.getrandbits(n) for _ in range(k)])
        if c.k == k:
            return c


def random_odd_outside(c: LinearCode, rng: random.Random) -> BitVector:
    while True:
        v = rng.getrandbits(c.n)
        if popcount(v) % 2 == 1 and not c.contains_bits(v):
            return BitVector(c.n, v)
