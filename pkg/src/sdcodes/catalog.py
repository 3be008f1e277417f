"""Embedded construction data for the catalogued codes, plus the text file formats.

Code file format::

    # optional comment lines
    n k
    <k rows of n characters from {0, 1}>

Support-list format: one vector per line given by its 1-indexed support,
coordinates separated by commas and/or whitespace, braces optional::

    {2, 3, 10, 31, 34, 39, 44, 53, 55, 56}
    1 11 12 15 25 28 29 36 46 53
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

from .codes import LinearCode, ParityClass, extremal_bound, is_self_dual, min_weight, parity_class
from .constructions import (
    extend_odd,
    four_block_quasi_cyclic,
    neighbor,
    pure_double_circulant,
    subtract,
)
from .errors import CharacterError, CodeError, HeaderError, ParseError, RowLengthError
from .gf2core import BitMatrix, BitVector

C46_FIRST_ROW = (0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1)
C56_A_FIRST_ROW = (0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1)
C56_B_FIRST_ROW = (1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1)

# supp(x_i) for the neighbors N56.1 .. N56.20 of C56
C56_NEIGHBOR_SUPPORTS = (
    (2, 3, 10, 31, 34, 39, 44, 53, 55, 56),
    (1, 11, 12, 15, 25, 28, 29, 36, 46, 53),
    (11, 22, 26, 34, 36, 40, 43, 44, 46, 47),
    (4, 7, 13, 17, 23, 27, 30, 32, 44, 48),
    (10, 23, 33, 38, 44, 45, 46, 48, 49, 53),
    (2, 10, 21, 24, 27, 36, 41, 48, 49, 50),
    (1, 4, 8, 33, 39, 42, 46, 50, 52, 55),
    (8, 12, 13, 18, 23, 24, 28, 33, 44, 51),
    (2, 11, 12, 14, 16, 18, 23, 51, 53, 54),
    (19, 22, 27, 30, 37, 38, 41, 43, 54, 55),
    (9, 13, 15, 16, 23, 26, 29, 35, 42, 48),
    (3, 9, 11, 13, 17, 20, 23, 29, 35, 50),
    (5, 7, 13, 23, 32, 34, 36, 39, 42, 44),
    (11, 13, 14, 17, 23, 25, 26, 31, 36, 49),
    (3, 10, 13, 17, 31, 37, 41, 48, 49, 52),
    (2, 8, 12, 17, 27, 38, 40, 46, 51, 54),
    (5, 11, 30, 37, 38, 39, 40, 42, 45, 46),
    (3, 4, 5, 17, 23, 29, 31, 33, 41, 49),
    (5, 10, 14, 20, 22, 28, 33, 37, 43, 55),
    (5, 16, 17, 19, 20, 38, 43, 45, 46, 56),
)

# second coordinates i of the 29 inequivalent codes obtained from C46 by deleting {1, i}
S44_CLASS_INDICES = (
    2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 24, 25, 26, 27,
    28, 29, 31, 32, 33, 34, 36, 37, 38, 39, 40, 41, 43, 46,
)

# Vectors whose parent codes are not embedded; usable with user-supplied generators.
T60_SUPPORT = (1, 3, 7, 9, 31, 37, 38, 48, 50, 53, 58)
N64_X1_SUPPORT = (23, 31, 33, 36, 39, 42, 44, 46, 49, 50, 55, 57, 59, 60, 61, 62, 63, 64)
N64_X2_SUPPORT = (34, 35, 37, 39, 40, 41, 42, 43, 44, 47, 49, 51, 53, 54)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str  # circulant | four_block | neighbor_of | subtraction_of | extension_of
    payload: dict[str, Any]
    expected: dict[str, Any]
    citation: str
    parent: str | None = None


def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}
    out["C46"] = CatalogEntry(
        id="C46",
        kind="circulant",
        payload={"first_row": C46_FIRST_ROW},
        expected=dict(n=46, k=23, d=10, parity=ParityClass.SINGLY_EVEN, s_extremal=True,
                      extremal=True),
        citation="unique extremal singly even [46,23,10] code; pure double circulant with the stored first row",
    )
    out["C56"] = CatalogEntry(
        id="C56",
        kind="four_block",
        payload={"a": C56_A_FIRST_ROW, "b": C56_B_FIRST_ROW},
        expected=dict(n=56, k=28, d=10, parity=ParityClass.SINGLY_EVEN, s_extremal=True),
        citation="four-circulant [56,28,10] code with the stored first rows of A and B",
    )
    for i, supp in enumerate(C56_NEIGHBOR_SUPPORTS, start=1):
        out[f"N56.{i}"] = CatalogEntry(
            id=f"N56.{i}",
            kind="neighbor_of",
            payload={"support": supp},
            parent="C56",
            expected=dict(n=56, k=28, d=10, parity=ParityClass.SINGLY_EVEN, s_extremal=True),
            citation=f"neighbor N56,{i} of C56 from the stored support list",
        )
    for i in range(2, 47):
        listed = i in S44_CLASS_INDICES
        out[f"S44.1.{i}"] = CatalogEntry(
            id=f"S44.1.{i}",
            kind="subtraction_of",
            payload={"pair": (1, i), "class_representative": listed},
            parent="C46",
            expected=dict(n=44, k=22, d=8, parity=ParityClass.SINGLY_EVEN, s_extremal=True,
                          extremal=True),
            citation=f"C46 with coordinates 1 and {i} subtracted"
            + (" (listed class representative)" if listed else ""),
        )
    return out


ENTRIES: dict[str, CatalogEntry] = _entries()


def entry(id: str) -> CatalogEntry:
    try:
        return ENTRIES[id]
    except KeyError:
        raise KeyError(f"unknown catalog id {id!r}") from None


@lru_cache(maxsize=None)
def materialize(id: str) -> LinearCode:
    """Build the code for a catalog id (expectations are not checked here)."""
    e = entry(id)
    p = e.payload
    if e.kind == "circulant":
        return pure_double_circulant(p["first_row"])
    if e.kind == "four_block":
        return four_block_quasi_cyclic(p["a"], p["b"])
    parent = materialize(e.parent)
    if e.kind == "neighbor_of":
        return neighbor(parent, BitVector.from_support(parent.n, p["support"]))
    if e.kind == "subtraction_of":
        return subtract(parent, *p["pair"])
    if e.kind == "extension_of":
        return extend_odd(parent, BitVector.from_support(parent.n, p["support"]))
    raise ValueError(f"unknown entry kind {e.kind!r}")


@dataclass
class VerifyReport:
    id: str
    checks: list[tuple[str, Any, Any, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.checks)

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if ok else 'FAIL'}  {name}: expected {exp}, got {got}"
            for name, exp, got, ok in self.checks
        ]

    def __str__(self) -> str:
        return "\n".join([f"{self.id}: {'pass' if self.passed else 'FAIL'}"] + self.lines())


def verify_code(c: LinearCode, expected: dict[str, Any], id: str = "<code>") -> VerifyReport:
    """Check ``c`` against declared parameters; keys are optional."""
    from .shadow import s_extremality

    rep = VerifyReport(id)

    def check(name, exp, got):
        rep.checks.append((name, exp, got, exp == got))

    sd = is_self_dual(c)
    check("self-dual", True, sd)
    for key in ("n", "k"):
        if key in expected:
            check(key, expected[key], getattr(c, key))
    d = min_weight(c) if c.k else None
    if "d" in expected:
        check("d", expected["d"], d)
    if "extremal" in expected and sd:
        check("extremal", expected["extremal"], d == extremal_bound(c.n))
    if sd:
        pc = parity_class(c)
        if "parity" in expected:
            check("parity", expected["parity"], pc)
        if "s_extremal" in expected:
            got = s_extremality(c).s_extremal if pc is ParityClass.SINGLY_EVEN else None
            check("s-extremal", expected["s_extremal"], got)
    return rep


def verify_entry(id: str, expected: dict[str, Any] | None = None) -> VerifyReport:
    e = entry(id)
    return verify_code(materialize(id), e.expected if expected is None else expected, id)


# -- text formats ---------------------------------------------------------------


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_code(text: str) -> LinearCode:
    lines = _content_lines(text)
    if not lines:
        raise HeaderError("empty code file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise HeaderError(f"header must be 'n k', got {lines[0]!r}")
    n, k = int(head[0]), int(head[1])
    if n < 1:
        raise HeaderError("code length must be positive")
    body = lines[1:]
    if len(body) != k:
        raise HeaderError(f"header declares {k} rows but the file has {len(body)}")
    rows = []
    for lineno, row in enumerate(body, start=2):
        row = "".join(row.split())
        bad = set(row) - {"0", "1"}
        if bad:
            raise CharacterError(f"row {lineno}: characters outside {{0,1}}: {''.join(sorted(bad))!r}")
        if len(row) != n:
            raise RowLengthError(f"row {lineno}: length {len(row)}, expected {n}")
        rows.append(BitVector.from_string(row))
    return LinearCode(BitMatrix.from_vectors(rows, cols=n))


def render_code(c: LinearCode, comments: Sequence[str] = ()) -> str:
    out = [f"# {line}" for line in comments]
    out.append(f"{c.n} {c.k}")
    out += [str(v) for v in c.gen]
    return "\n".join(out) + "\n"


_SEP = re.compile(r"[\s,]+")


def parse_supports(text: str, n: int) -> list[BitVector]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        body = line.strip("{}").strip()
        tokens = [t for t in _SEP.split(body) if t]
        if not all(t.isdigit() for t in tokens):
            raise ParseError(f"line {lineno}: expected comma-separated coordinates, got {line!r}")
        try:
            out.append(BitVector.from_support(n, [int(t) for t in tokens]))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out


def render_supports(vectors: Sequence[BitVector]) -> str:
    return "".join("{" + ", ".join(map(str, v.support())) + "}\n" for v in vectors)


def load_code(ref: str) -> LinearCode:
    """A catalog id or a path to a code file."""
    if ref in ENTRIES:
        return materialize(ref)
    try:
        with open(ref) as fh:
            text = fh.read()
    except FileNotFoundError:
        raise FileNotFoundError(f"no catalog entry or file named {ref!r}") from None
    return parse_code(text)


__all__ = [
    "CatalogEntry",
    "CodeError",
    "ENTRIES",
    "VerifyReport",
    "entry",
    "load_code",
    "materialize",
    "parse_code",
    "parse_supports",
    "render_code",
    "render_supports",
    "verify_code",
    "verify_entry",
]
