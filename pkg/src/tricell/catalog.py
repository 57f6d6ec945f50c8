"""Catalog of the 244 cells of the six-dimensional cell complex.

The complex carries 122 cells of the *first type* (support away from the
distinguished circle point) and, for each of them, one *second-type* cell of
dimension one less, written with a ``b`` prefix ("barred").  Families are
tagged with the letters used in the published census; the three non-Latin
tags are spelled ``OM``, ``TH`` and ``NB`` so that every name is plain ASCII.

Canonical name grammar (also the grammar of all data files)::

    name  = ["b"] family digits* ["+" | "-"]

Examples: ``A23``, ``bJ321-``, ``E+``, ``E1``, ``bOM``, ``NB``.  The A
family is canonically indexed by pairs (``A23``), with the three-digit
alias (``A123``, leading index always 1) accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations


class UnknownCellError(ValueError):
    """A name or (family, indices, sign) combination not in the catalog."""


@dataclass(frozen=True)
class CellFamily:
    tag: str
    index_domain: tuple[tuple[int, ...], ...]
    sign_domain: tuple[str, ...]
    support_size: int
    modulus_count: int

    @property
    def dimension_first_type(self) -> int:
        return self.support_size + self.modulus_count

    @property
    def count(self) -> int:
        return len(self.index_domain) * len(self.sign_domain)


def _pairs_lt(lo: int, hi: int):
    return tuple((i, j) for i in range(lo, hi + 1) for j in range(i + 1, hi + 1))


def _g_domain():
    # Stars at positions i and k, value pairs (i, j) and (k, l); the two
    # pairs partition {1,2,3,4} and the star list is normalised to i < k.
    out = []
    for p in permutations((1, 2, 3, 4)):
        i, j, k, l = p
        if {i, j} | {k, l} == {1, 2, 3, 4} and i < k:
            out.append(p)
    return tuple(sorted(out))


_PERM3 = tuple(sorted(permutations((1, 2, 3))))

# Family tag order as listed in the census, dimension 6 down to 1.
FAMILY_ORDER = (
    "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "W",
    "L", "M", "N", "P", "S", "X", "V", "OM", "Y", "U", "Z", "TH", "NB",
)

FAMILIES: dict[str, CellFamily] = {
    f.tag: f
    for f in (
        CellFamily("A", _pairs_lt(2, 6), ("",), 6, 0),
        CellFamily("B", ((),), ("",), 5, 0),
        CellFamily(
            "C",
            tuple((i, j) for i in range(1, 6) for j in range(1, 6) if i != j),
            ("",),
            5,
            0,
        ),
        CellFamily("D", _pairs_lt(1, 4), ("+", "-"), 4, 1),
        CellFamily("E", ((),), ("+", "1", "2", "3"), 3, 2),
        CellFamily("F", ((1,), (2,), (3,), (4,)), ("",), 4, 0),
        CellFamily("G", _g_domain(), ("",), 4, 0),
        CellFamily("H", ((1,), (2,), (3,), (4,)), ("",), 4, 0),
        CellFamily("I", ((1,), (2,), (3,)), ("",), 3, 1),
        CellFamily("J", _PERM3, ("+", "-"), 3, 1),
        CellFamily("K", ((1,), (2,), (3,)), ("+", "-"), 3, 1),
        CellFamily("W", ((1,), (2,)), ("+", "-"), 2, 2),
        CellFamily("L", _PERM3, ("",), 3, 0),
        CellFamily("M", ((1,), (2,), (3,)), ("",), 3, 0),
        CellFamily("N", ((1,), (2,), (3,)), ("",), 3, 0),
        CellFamily("P", ((1,), (2,)), ("",), 2, 1),
        CellFamily("S", ((1,), (2,)), ("",), 2, 1),
        CellFamily("X", ((),), ("+", "-"), 2, 1),
        CellFamily("V", ((1,), (2,)), ("+", "-"), 2, 1),
        CellFamily("OM", ((),), ("",), 1, 2),
        CellFamily("Y", ((1,), (2,)), ("",), 2, 0),
        CellFamily("U", ((1,), (2,)), ("",), 2, 0),
        CellFamily("Z", ((),), ("",), 2, 0),
        CellFamily("TH", ((),), ("",), 1, 1),
        CellFamily("NB", ((),), ("",), 1, 0),
    )
}

_FAMILY_RANK = {tag: i for i, tag in enumerate(FAMILY_ORDER)}
_SIGN_RANK = {"": 0, "+": 1, "-": 2, "1": 3, "2": 4, "3": 5}


@dataclass(frozen=True, order=False)
class Cell:
    family: str
    indices: tuple[int, ...] = ()
    sign: str = ""
    barred: bool = False

    def __post_init__(self):
        fam = FAMILIES.get(self.family)
        if fam is None:
            raise UnknownCellError(f"unknown family {self.family!r}")
        if self.indices not in fam.index_domain:
            raise UnknownCellError(
                f"indices {self.indices} not legal for family {self.family}"
            )
        if self.sign not in fam.sign_domain:
            raise UnknownCellError(
                f"sign {self.sign!r} not legal for family {self.family}"
            )

    @property
    def dimension(self) -> int:
        d = FAMILIES[self.family].dimension_first_type
        return d - 1 if self.barred else d

    @property
    def name(self) -> str:
        return (
            ("b" if self.barred else "")
            + self.family
            + "".join(str(i) for i in self.indices)
            + self.sign
        )

    def __str__(self) -> str:
        return self.name

    def sort_key(self):
        return (
            self.barred,
            _FAMILY_RANK[self.family],
            self.indices,
            _SIGN_RANK[self.sign],
        )


def bar(cell: Cell) -> Cell:
    """The second-type cell attached to a first-type cell (dimension - 1)."""
    if cell.barred:
        raise ValueError(f"{cell.name} is already a second-type cell")
    return Cell(cell.family, cell.indices, cell.sign, barred=True)


_NAME_RE = re.compile(r"^(b?)([A-Z]+)(\d*)([+-]?)$")


def parse_cell(name: str) -> Cell:
    """Parse a canonical (or aliased) cell name; raises UnknownCellError."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise UnknownCellError(f"malformed cell name {name!r}")
    barred = m.group(1) == "b"
    fam, digits, sign = m.group(2), m.group(3), m.group(4)
    if fam not in FAMILIES:
        raise UnknownCellError(f"unknown family in {name!r}")
    indices = tuple(int(ch) for ch in digits)
    if fam == "A" and len(indices) == 3 and indices[0] == 1:
        indices = indices[1:]  # figure-style alias A1jk for Ajk
    if fam == "E" and len(indices) == 1 and not sign:
        sign, indices = str(indices[0]), ()  # E1/E2/E3 variant tag
    try:
        return Cell(fam, indices, sign, barred)
    except UnknownCellError as exc:
        raise UnknownCellError(f"{name!r}: {exc}") from None


def enumerate_cells() -> list[Cell]:
    """All 244 cells: every first-type cell followed by its barred partner."""
    out = []
    for tag in FAMILY_ORDER:
        fam = FAMILIES[tag]
        for idx in fam.index_domain:
            for sign in fam.sign_domain:
                out.append(Cell(tag, idx, sign, False))
    return out + [bar(c) for c in out]


def dimension(cell: Cell) -> int:
    return cell.dimension


MAX_DIM = 6


def ordered_basis(degree: int) -> list[Cell]:
    """The frozen basis of the chain group in one dimension.

    First-type cells precede second-type cells; within a type, cells sort by
    family tag order, then lexicographic indices, then sign (+ before -).
    """
    if not 0 <= degree <= MAX_DIM:
        raise ValueError(f"degree {degree} out of range 0..{MAX_DIM}")
    cells = [c for c in enumerate_cells() if c.dimension == degree]
    cells.sort(key=Cell.sort_key)
    return cells


def basis_index(degree: int) -> dict[Cell, int]:
    return {c: i for i, c in enumerate(ordered_basis(degree))}


def census_by_dimension() -> dict[int, int]:
    counts: dict[int, int] = {d: 0 for d in range(MAX_DIM + 1)}
    for c in enumerate_cells():
        counts[c.dimension] += 1
    return counts


def first_type_census() -> dict[int, int]:
    counts: dict[int, int] = {}
    for c in enumerate_cells():
        if not c.barred:
            counts[c.dimension] = counts.get(c.dimension, 0) + 1
    return counts
