from __future__ import annotations

import random

import pytest

from oracles import (
    all_self_dual_codes,
    popcount,
    random_even_outside,
    random_odd_outside,
    random_self_dual,
    random_singly_even,
    span,
)
from sdcodes.catalog import C46_FIRST_ROW, materialize
from sdcodes.codes import LinearCode, ParityClass, is_self_dual, min_weight, parity_class
from sdcodes.constructions import (
    DegenerateSubtraction,
    circulant_rows,
    enumerate_self_dual_neighbors,
    extend_odd,
    four_block_quasi_cyclic,
    n1_n3_neighbors,
    neighbor,
    neighbor_multi,
    pure_double_circulant,
    sample_self_dual_neighbors,
    subtract,
)
from sdcodes.errors import BudgetExceeded, DimensionMismatch, PreconditionError
from sdcodes.gf2core import BitMatrix, BitVector, rref_rows
from sdcodes.shadow import s_extremality, shadow_decomposition

REP2 = LinearCode(BitMatrix.from_strings(["11"]))
I2X2 = LinearCode(BitMatrix.from_strings(["1100", "0011"]))
HAMMING8 = LinearCode(BitMatrix.from_strings(["11110000", "00111100", "00001111", "10101010"]))


def words_as_strings(c: LinearCode) -> set[str]:
    return {str(BitVector(c.n, w)) for w in c.codewords()}


def intersection_dim(a: LinearCode, b: LinearCode) -> int:
    return a.k + b.k - len(rref_rows(list(a.rows) + list(b.rows), a.n)[0])


class TestCirculants:
    def test_right_shift_convention(self):
        rows = circulant_rows((1, 1, 0, 0))
        assert [str(BitVector(4, r)) for r in rows] == ["1100", "0110", "0011", "1001"]

    def test_left_shift_convention(self):
        rows = circulant_rows((1, 1, 0, 0), shift="left")
        assert [str(BitVector(4, r)) for r in rows] == ["1100", "1001", "0011", "0110"]

    def test_bad_shift(self):
        with pytest.raises(ValueError):
            circulant_rows((1, 0), shift="up")

    def test_single_bit(self):
        assert words_as_strings(pure_double_circulant((1,))) == {"00", "11"}

    def test_two_bits(self):
        c = pure_double_circulant((1, 0))
        assert words_as_strings(c) == {"0000", "1010", "0101", "1111"}
        assert is_self_dual(c)

    def test_c46(self):
        c = pure_double_circulant(C46_FIRST_ROW)
        assert (c.n, c.k) == (46, 23)
        assert is_self_dual(c)
        assert parity_class(c) is ParityClass.SINGLY_EVEN
        assert min_weight(c) == 10

    def test_c46_left_convention_equivalent_parameters(self):
        c = pure_double_circulant(C46_FIRST_ROW, shift="left")
        assert is_self_dual(c) and min_weight(c) == 10

    def test_four_block_trivial(self):
        for a, b in [((1,), (0,)), ((0,), (1,))]:
            c = four_block_quasi_cyclic(a, b)
            assert (c.n, c.k) == (4, 2) and is_self_dual(c)

    def test_four_block_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            four_block_quasi_cyclic((1, 0), (1,))

    def test_c56(self):
        c = materialize("C56")
        assert (c.n, c.k) == (56, 28) and is_self_dual(c)


class TestNeighbor:
    def test_small(self):
        nb = neighbor(I2X2, BitVector.from_string("1010"))
        assert words_as_strings(nb) == {"0000", "1111", "1010", "0101"}

    def test_n56_1(self):
        c = materialize("C56")
        x = BitVector.from_support(56, [2, 3, 10, 31, 34, 39, 44, 53, 55, 56])
        nb = neighbor(c, x)
        r = s_extremality(nb)
        assert r.s_extremal and r.d == 10

    def test_hamming_neighbor(self):
        x = BitVector.from_string("11000000")
        nb = neighbor(HAMMING8, x)
        assert is_self_dual(nb) and intersection_dim(nb, HAMMING8) == 3

    def test_errors(self):
        with pytest.raises(PreconditionError):
            neighbor(I2X2, BitVector.from_string("1100"))
        with pytest.raises(PreconditionError):
            neighbor(I2X2, BitVector.from_string("1000"))
        with pytest.raises(DimensionMismatch):
            neighbor(I2X2, BitVector.from_string("10"))
        with pytest.raises(PreconditionError):
            neighbor(LinearCode(BitMatrix.from_strings(["1111"])), BitVector.from_string("1100"))

    def test_symmetry(self):
        rng = random.Random(0)
        for _ in range(30):
            n = rng.choice(range(4, 33, 2))
            c = random_self_dual(n, rng)
            x = random_even_outside(c, rng)
            nb = neighbor(c, x)
            assert is_self_dual(nb) and intersection_dim(c, nb) == n // 2 - 1
            assert nb.contains_bits((1 << n) - 1)
            y = next(r for r in c.rows if not nb.contains_bits(r))
            assert neighbor(nb, BitVector(n, y)) == c


class TestNeighborMulti:
    def test_single_vector_matches_neighbor(self):
        rng = random.Random(1)
        for _ in range(10):
            c = random_self_dual(20, rng)
            x = random_even_outside(c, rng)
            assert neighbor_multi(c, [x]) == neighbor(c, x)

    def test_two_crossing_vectors(self):
        c = LinearCode.from_rows(8, [0b11 << (2 * i) for i in range(4)])
        xs = [BitVector.from_support(8, [2, 3]), BitVector.from_support(8, [6, 7])]
        out = neighbor_multi(c, xs)
        words = span(out.rows)
        assert len(words) == 16
        assert all(popcount(a & b) % 2 == 0 for a in words for b in words)

    def test_odd_vector(self):
        c = LinearCode.from_rows(8, [0b11 << (2 * i) for i in range(4)])
        with pytest.raises(PreconditionError):
            neighbor_multi(c, [BitVector.from_support(8, [1, 3, 5])])

    def test_not_orthogonal(self):
        c = LinearCode.from_rows(8, [0b11 << (2 * i) for i in range(4)])
        xs = [BitVector.from_support(8, [2, 3]), BitVector.from_support(8, [3, 5])]
        with pytest.raises(PreconditionError):
            neighbor_multi(c, xs)

    def test_dependent_vectors_still_self_dual(self):
        # x2 = x1 + codeword: the extra constraint and generator are both redundant
        c = LinearCode.from_rows(8, [0b11 << (2 * i) for i in range(4)])
        xs = [BitVector.from_support(8, [2, 3]), BitVector.from_support(8, [2, 3, 5, 6])]
        out = neighbor_multi(c, xs)
        assert out == neighbor(c, xs[0]) and is_self_dual(out)

    def test_random_isotropic_sets(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.choice(range(8, 25, 2))
            c = random_self_dual(n, rng)
            xs = [random_even_outside(c, rng)]
            while len(xs) < 3:
                v = random_even_outside(c, rng)
                if all(popcount(v.bits & x.bits) % 2 == 0 for x in xs):
                    xs.append(v)
            out = neighbor_multi(c, xs)
            assert is_self_dual(out)
            assert all(out.contains_bits(x.bits) for x in xs)


class TestN1N3:
    def test_smallest_case(self):
        pair = n1_n3_neighbors(I2X2)
        others = {frozenset(words_as_strings(pair.n1)), frozenset(words_as_strings(pair.n3))}
        assert others == {
            frozenset({"0000", "1111", "1010", "0101"}),
            frozenset({"0000", "1111", "1001", "0110"}),
        }
        assert min_weight(pair.n1) == min_weight(pair.n3) == 2

    def test_length_two_rejected(self):
        with pytest.raises(PreconditionError):
            n1_n3_neighbors(REP2)

    def test_doubly_even_rejected(self):
        with pytest.raises(PreconditionError):
            n1_n3_neighbors(HAMMING8)

    def test_shadows_swap(self):
        rng = random.Random(2)
        for n in (12, 20):
            for _ in range(6):
                c = random_singly_even(n, rng)
                sd = shadow_decomposition(c)
                pair = n1_n3_neighbors(c)
                coset = lambda rep: {w ^ rep for w in span(sd.c0.rows)}  # noqa: E731
                for nb, other in ((pair.n1, sd.rep3), (pair.n3, sd.rep1)):
                    assert is_self_dual(nb) and intersection_dim(nb, c) == n // 2 - 1
                    assert span(sd.c0.rows) <= span(nb.rows)
                    if parity_class(nb) is ParityClass.SINGLY_EVEN:
                        nsd = shadow_decomposition(nb)
                        shadow = {w ^ nsd.rep1.bits for w in span(nsd.c0.rows)}
                        shadow |= {w ^ nsd.rep3.bits for w in span(nsd.c0.rows)}
                        assert shadow == coset(sd.rep2.bits) | coset(other.bits)


class TestEnumeration:
    def test_counts_small(self):
        assert enumerate_self_dual_neighbors(REP2) == 0
        seen = []
        assert enumerate_self_dual_neighbors(I2X2, visitor=seen.append) == 2
        assert enumerate_self_dual_neighbors(HAMMING8) == 14

    def test_against_all_self_dual_codes(self):
        rng = random.Random(3)
        for n in (4, 6, 8, 10):
            everything = all_self_dual_codes(n)
            c = random_self_dual(n, rng)
            expected = set()
            for rows in everything:
                d = LinearCode.from_rows(n, rows)
                if intersection_dim(c, d) == n // 2 - 1:
                    expected.add(d.rows)
            got = []
            total = enumerate_self_dual_neighbors(c, visitor=lambda d: got.append(d.rows))
            assert total == len(got) == 2 * (2 ** (n // 2 - 1) - 1)
            assert set(got) == expected and len(set(got)) == len(got)

    def test_filter(self):
        kept = []
        total = enumerate_self_dual_neighbors(
            HAMMING8, filter=lambda d: min_weight(d) >= 4, visitor=kept.append
        )
        assert total == 14
        assert all(min_weight(d) >= 4 for d in kept)
        assert all(parity_class(d) is ParityClass.DOUBLY_EVEN for d in kept)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceeded):
            enumerate_self_dual_neighbors(HAMMING8, max_half=3)

    def test_non_self_dual(self):
        with pytest.raises(PreconditionError):
            enumerate_self_dual_neighbors(LinearCode(BitMatrix.from_strings(["1111"])))

    def test_sampled_mode_reproducible(self):
        c = materialize("C56")
        a, b = [], []
        assert sample_self_dual_neighbors(c, 3, seed=7, visitor=lambda d: a.append(d.rows)) == 6
        sample_self_dual_neighbors(c, 3, seed=7, visitor=lambda d: b.append(d.rows))
        assert a == b
        for rows in a:
            d = LinearCode.from_rows(56, rows)
            assert is_self_dual(d) and intersection_dim(c, d) == 27


class TestSubtract:
    def test_c46_pair(self):
        s = subtract(materialize("C46"), 1, 2)
        r = s_extremality(s)
        assert (s.n, s.k, r.d) == (44, 22, 8) and r.s_extremal

    def test_hamming(self):
        s = subtract(HAMMING8, 1, 2)
        assert (s.n, s.k) == (6, 3) and is_self_dual(s)

    def test_errors(self):
        with pytest.raises(PreconditionError):
            subtract(HAMMING8, 3, 3)
        with pytest.raises(PreconditionError):
            subtract(HAMMING8, 0, 3)
        with pytest.raises(PreconditionError):
            subtract(HAMMING8, 1, 9)

    def test_degenerate_pair(self):
        with pytest.raises(DegenerateSubtraction):
            subtract(I2X2, 1, 2)

    def test_matches_definition(self):
        rng = random.Random(4)
        for _ in range(20):
            n = rng.choice(range(6, 17, 2))
            c = random_self_dual(n, rng)
            i, j = sorted(rng.sample(range(1, n + 1), 2))
            try:
                s = subtract(c, i, j)
            except DegenerateSubtraction:
                continue
            expected = set()
            for w in c.codewords():
                if (w >> (i - 1) & 1) == (w >> (j - 1) & 1):
                    bits = [w >> p & 1 for p in range(n) if p not in (i - 1, j - 1)]
                    expected.add(sum(b << p for p, b in enumerate(bits)))
            assert set(s.codewords()) == expected
            assert is_self_dual(s)


class TestExtend:
    def test_small(self):
        e = extend_odd(REP2, BitVector.from_string("10"))
        assert words_as_strings(e) == {"0000", "1111", "0110", "1001"}

    def test_errors(self):
        with pytest.raises(PreconditionError):
            extend_odd(I2X2, BitVector.from_string("1100"))
        with pytest.raises(PreconditionError):
            extend_odd(I2X2, BitVector.from_string("1010"))

    def test_random_10(self):
        rng = random.Random(5)
        for _ in range(10):
            c = random_self_dual(10, rng)
            t = random_odd_outside(c, rng)
            e = extend_odd(c, t)
            assert (e.n, e.k) == (12, 6) and is_self_dual(e)

    def test_structure(self):
        rng = random.Random(6)
        c = random_singly_even(12, rng)
        t = random_odd_outside(c, rng)
        e = extend_odd(c, t)
        c0 = {w for w in c.codewords() if popcount(w & t.bits) % 2 == 0}
        c2 = set(c.codewords()) - c0
        expected = {w << 2 for w in c0} | {0b11 | w << 2 for w in c2}
        expected |= {0b10 | (w ^ t.bits) << 2 for w in c0} | {0b01 | (w ^ t.bits) << 2 for w in c2}
        assert set(e.codewords()) == expected

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.choice(range(2, 17, 2))
            c = random_self_dual(n, rng)
            t = random_odd_outside(c, rng)
            assert subtract(extend_odd(c, t), 1, 2) == c
