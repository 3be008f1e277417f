"""Permutation equivalence of binary codes.

``are_equivalent`` filters by permutation-invariant signatures, then runs an
individualization/refinement search on the incidence structure between
coordinates and low-weight codewords.  Every code equivalence maps
codewords of each weight onto codewords of the same weight, so pruning on
that structure never loses a solution: an exhausted search is a proof of
inequivalence, and every ``Equivalent`` verdict carries a permutation that
has been checked against the generator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import (
    LinearCode,
    ParityClass,
    codewords_of_weight,
    is_self_dual,
    parity_class,
    weight_enumerator,
)
from .errors import DimensionMismatch
from .gf2core import permute_bits, rref_rows

DEFAULT_BUDGET = 10**7
# Soft cap on how many codewords go into the incidence structure.
MAX_WORDS = 6000


@dataclass(frozen=True)
class InvariantSignature:
    n: int
    k: int
    wenum: tuple[int, ...]
    shadow_wenum: tuple[int, ...] | None
    minw_support_profile: tuple[int, ...]
    minw_pair_profile: tuple[int, ...] | None = None

    def differences(self, other: InvariantSignature) -> list[str]:
        names = ["n", "k", "wenum", "shadow_wenum", "minw_support_profile", "minw_pair_profile"]
        return [f for f in names if getattr(self, f) != getattr(other, f)]


@dataclass(frozen=True)
class Equivalent:
    """``permutation[i - 1]`` is the image of coordinate ``i`` (1-indexed)."""

    permutation: tuple[int, ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Inequivalent:
    witness: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Unknown:
    nodes: int

    def __bool__(self) -> bool:
        return False


EquivalenceVerdict = Equivalent | Inequivalent | Unknown


def _incidence(words: Sequence[int], n: int) -> np.ndarray:
    if not words:
        return np.zeros((0, n), dtype=np.int32)
    raw = np.array(
        [[(w >> (64 * j)) & 0xFFFFFFFFFFFFFFFF for j in range((n + 63) // 64)] for w in words],
        dtype=np.uint64,
    )
    bits = np.unpackbits(raw.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n].astype(np.int32)


def _min_weight_words(c: LinearCode) -> tuple[int, list[int]]:
    we = weight_enumerator(c)
    d = we.min_nonzero_weight()
    if d is None:
        return 0, []
    return d, codewords_of_weight(c, d)


def signature(c: LinearCode, pair_profile: bool = True) -> InvariantSignature:
    """Permutation-invariant fingerprint of ``c`` (deterministic)."""
    return c._cached(("signature", pair_profile), lambda: _signature(c, pair_profile))


def _signature(c: LinearCode, pair_profile: bool) -> InvariantSignature:
    from .shadow import shadow_decomposition

    we = weight_enumerator(c)
    shadow = None
    if is_self_dual(c) and parity_class(c) is ParityClass.SINGLY_EVEN:
        shadow = shadow_decomposition(c).shadow_weight_enumerator().counts
    _, words = _min_weight_words(c)
    m = _incidence(words, c.n)
    support = tuple(sorted(int(x) for x in m.sum(axis=0)))
    pairs = None
    if pair_profile:
        g = m.T @ m
        iu = np.triu_indices(c.n, 1)
        pairs = tuple(sorted(int(x) for x in g[iu]))
    return InvariantSignature(
        n=c.n,
        k=c.k,
        wenum=we.counts,
        shadow_wenum=shadow,
        minw_support_profile=support,
        minw_pair_profile=pairs,
    )


def _structure_words(c: LinearCode) -> tuple[list[int], list[int]]:
    """Codewords by increasing weight until they span ``c`` (soft-capped)."""
    counts = weight_enumerator(c).counts
    words: list[int] = []
    layers: list[int] = []
    for w in range(1, c.n + 1):
        if not counts[w]:
            continue
        if words and len(words) + counts[w] > MAX_WORDS:
            break
        layer = codewords_of_weight(c, w)
        words += layer
        layers += [w] * len(layer)
        if len(rref_rows(words, c.n)[0]) == c.k:
            break
    return words, layers


def _structure(c: LinearCode):
    def build():
        words, layers = _structure_words(c)
        return _incidence(words, c.n), np.asarray(layers, dtype=np.int64)

    return c._cached("eq_structure", build)


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, elementwise on uint64 (wrapping arithmetic)."""
    x = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _relabel(keys_a: np.ndarray, keys_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Shared dense color ids for two key arrays (1-d hashes or 2-d rows)."""
    both = np.concatenate([keys_a, keys_b])
    _, inv = np.unique(both, axis=0 if both.ndim > 1 else None, return_inverse=True)
    inv = inv.ravel()
    return inv[: len(keys_a)], inv[len(keys_a) :]


class _Side:
    """Incidence pairs of one structure: word ``wi[t]`` contains coordinate ``ci[t]``.

    A refined color is a hash of the old color and the multiset of neighbor
    colors (a wrapping sum of mixed color ids).  The same function is used
    on both sides, so the coloring stays permutation-equivariant; a hash
    collision can only make the refinement coarser.
    """

    def __init__(self, m: np.ndarray):
        self.nw, self.n = m.shape
        self.wi, self.ci = np.nonzero(m)

    @staticmethod
    def _keys(own, own_idx, other, other_idx, size):
        acc = np.zeros(size, dtype=np.uint64)
        np.add.at(acc, own_idx, _mix(other[other_idx].astype(np.uint64)))
        return _mix(own.astype(np.uint64) * np.uint64(0x100000001B3) ^ acc)

    def word_keys(self, wc: np.ndarray, cc: np.ndarray) -> np.ndarray:
        return self._keys(wc, self.wi, cc, self.ci, self.nw)

    def coord_keys(self, cc: np.ndarray, wc: np.ndarray) -> np.ndarray:
        return self._keys(cc, self.ci, wc, self.wi, self.n)


def _balanced(a: np.ndarray, b: np.ndarray) -> tuple[bool, int]:
    k = int(max(a.max(initial=-1), b.max(initial=-1))) + 1
    return np.array_equal(np.bincount(a, minlength=k), np.bincount(b, minlength=k)), k


class _Search:
    """Joint refinement of two incidence structures with shared color names."""

    def __init__(self, c1: LinearCode, c2: LinearCode, budget: int):
        self.c1, self.c2 = c1, c2
        self.n = c1.n
        ma, la = _structure(c1)
        mb, lb = _structure(c2)
        self.a, self.b = _Side(ma), _Side(mb)
        self.wa0, self.wb0 = _relabel(la[:, None], lb[:, None])
        self.budget = budget
        self.nodes = 0
        self.exhausted_budget = False

    def refine(self, ca: np.ndarray, cb: np.ndarray):
        """Stable coloring, or None when the two sides become unbalanced."""
        self.nodes += 1
        wa, wb = self.wa0, self.wb0
        ok, kc = _balanced(ca, cb)
        if not ok:
            return None
        kw = -1
        while True:
            wa, wb = _relabel(self.a.word_keys(wa, ca), self.b.word_keys(wb, cb))
            ok, kw_new = _balanced(wa, wb)
            if not ok:
                return None
            ca, cb = _relabel(self.a.coord_keys(ca, wa), self.b.coord_keys(cb, wb))
            ok, kc_new = _balanced(ca, cb)
            if not ok:
                return None
            if kc_new == kc and kw_new == kw:
                return ca, cb
            kc, kw = kc_new, kw_new

    def verify(self, perm: Sequence[int]) -> bool:
        return all(self.c2.contains_bits(permute_bits(r, perm)) for r in self.c1.rows)

    def search(self, ca: np.ndarray, cb: np.ndarray):
        if self.nodes >= self.budget:
            self.exhausted_budget = True
            return None
        got = self.refine(ca, cb)
        if got is None:
            return None
        ca, cb = got
        sizes = np.bincount(ca)
        if sizes.max() == 1:
            perm = [0] * self.n
            where_b = {int(col): j for j, col in enumerate(cb)}
            for i, col in enumerate(ca):
                perm[i] = where_b[int(col)]
            return perm if self.verify(perm) else None
        # smallest non-singleton cell, lowest color first
        target = int(min((s, col) for col, s in enumerate(sizes) if s > 1)[1])
        v = int(np.flatnonzero(ca == target)[0])
        fresh = sizes.size
        for u in np.flatnonzero(cb == target):
            na, nb = ca.copy(), cb.copy()
            na[v] = fresh
            nb[int(u)] = fresh
            found = self.search(na, nb)
            if found is not None:
                return found
            if self.exhausted_budget:
                return None
        return None


def _run_search(c1, c2, budget, pin: tuple[int, int] | None = None):
    s = _Search(c1, c2, budget)
    ca = np.zeros(c1.n, dtype=np.int64)
    cb = np.zeros(c2.n, dtype=np.int64)
    if pin is not None:
        ca[pin[0]] = 1
        cb[pin[1]] = 1
    if s.refine(ca, cb) is None:
        return s, None, True
    s.nodes = 0
    perm = s.search(ca, cb)
    return s, perm, False


def are_equivalent(
    c1: LinearCode, c2: LinearCode, budget: int = DEFAULT_BUDGET
) -> EquivalenceVerdict:
    """Decide whether a coordinate permutation maps ``c1`` onto ``c2``."""
    if c1.n != c2.n:
        raise DimensionMismatch(f"codes of length {c1.n} and {c2.n}")
    if c1.k != c2.k:
        return Inequivalent("dimension")
    if c1 == c2:
        return Equivalent(tuple(range(1, c1.n + 1)))
    diff = signature(c1).differences(signature(c2))
    if diff:
        return Inequivalent(f"signature field {diff[0]} differs")
    s, perm, root_fail = _run_search(c1, c2, budget)
    if root_fail:
        return Inequivalent("refined codeword incidence colorings differ")
    if perm is not None:
        return Equivalent(tuple(p + 1 for p in perm))
    if s.exhausted_budget:
        return Unknown(s.nodes)
    return Inequivalent(f"exhaustive search ({s.nodes} nodes) found no permutation")


def apply_permutation(c: LinearCode, perm: Sequence[int]) -> LinearCode:
    """Image of ``c`` when coordinate ``i`` moves to ``perm[i - 1]`` (1-indexed)."""
    p0 = [p - 1 for p in perm]
    return LinearCode.from_rows(c.n, [permute_bits(r, p0) for r in c.rows])


@dataclass
class Partition:
    classes: list[list[int]]
    unresolved: list[tuple[int, int]]

    @property
    def representatives(self) -> list[int]:
        return [cls[0] for cls in self.classes]


def partition_classes(codes: Sequence[LinearCode], budget: int = DEFAULT_BUDGET) -> Partition:
    """Split ``codes`` (by index) into equivalence classes.

    Codes are grouped by signature first; inside a group each code is tested
    against the representative of every class found so far.  A code whose
    tests are inconclusive opens a new class, and each inconclusive pair is
    listed in ``unresolved``.
    """
    if len({c.n for c in codes}) > 1:
        raise DimensionMismatch("all codes must have the same length")
    classes: list[list[int]] = []
    unresolved: list[tuple[int, int]] = []
    groups: dict[InvariantSignature, list[int]] = {}
    for idx, c in enumerate(codes):
        groups.setdefault(signature(c), []).append(idx)
    for members in groups.values():
        local: list[list[int]] = []
        for idx in members:
            for cls in local:
                verdict = are_equivalent(codes[cls[0]], codes[idx], budget)
                if isinstance(verdict, Equivalent):
                    cls.append(idx)
                    break
                if isinstance(verdict, Unknown):
                    unresolved.append((cls[0], idx))
            else:
                local.append([idx])
        classes += local
    classes.sort(key=lambda cls: cls[0])
    return Partition(classes=classes, unresolved=unresolved)


def automorphism_moving(c: LinearCode, i: int, j: int, budget: int = DEFAULT_BUDGET):
    """An automorphism of ``c`` sending coordinate ``i`` to ``j`` (1-indexed).

    Returns a permutation tuple, ``False`` if none exists, or ``Unknown``.
    """
    s, perm, root_fail = _run_search(c, c, budget, pin=(i - 1, j - 1))
    if root_fail:
        return False
    if perm is not None:
        return tuple(p + 1 for p in perm)
    return Unknown(s.nodes) if s.exhausted_budget else False


def _orbit(point: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in gens:
            y = g[x - 1]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def transitivity_probe(c: LinearCode, budget: int = DEFAULT_BUDGET) -> bool | Unknown:
    """Whether automorphisms move coordinate 1 to every other coordinate.

    Automorphisms found along the way are kept; coordinates already in the
    orbit of 1 under the group they generate need no further search.
    """
    gens: list[tuple[int, ...]] = []
    orbit = {1}
    for j in range(2, c.n + 1):
        if j in orbit:
            continue
        got = automorphism_moving(c, 1, j, budget)
        if got is False or isinstance(got, Unknown):
            return got
        gens.append(got)
        orbit = _orbit(1, gens)
    return True
