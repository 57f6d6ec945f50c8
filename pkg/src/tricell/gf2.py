"""Dense linear algebra over the two-element field.

Vectors and matrices are bit-packed into Python integers (bit i of a row
word is column i), which makes row operations single XORs.  Everything is
immutable; all functions are pure.

Convention used throughout the package: chains are *row* vectors and act on
a matrix from the left, so ``v x M`` is the XOR of the rows of M selected by
the set bits of v.  With boundary matrices stored one generator per row,
each published formula "boundary(cell) = sum of cells" is literally one row.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector of bits, packed into one integer."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits out of range for length {self.length}")

    @classmethod
    def from_indices(cls, length: int, indices) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"index {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.length

    def support(self) -> tuple[int, ...]:
        """Indices of the nonzero coordinates, ascending."""
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """Row-major bit matrix; row_words[i] packs row i."""

    rows: int
    cols: int
    row_words: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_words) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_words)}")
        for w in self.row_words:
            if w < 0 or w >> self.cols:
                raise ValueError(f"row word out of range for {self.cols} columns")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "BitMatrix":
        """Build from an iterable of BitVector (or raw ints, with cols given)."""
        vecs = list(rows)
        if vecs and isinstance(vecs[0], BitVector):
            lengths = {v.length for v in vecs}
            if len(lengths) > 1:
                raise ValueError(f"mixed row lengths {sorted(lengths)}")
            cols = lengths.pop() if cols is None else cols
            return cls(len(vecs), cols, tuple(v.bits for v in vecs))
        if cols is None:
            raise ValueError("cols required when rows are raw integers")
        return cls(len(vecs), cols, tuple(vecs))

    def row(self, i: int) -> BitVector:
        if not 0 <= i < self.rows:
            raise IndexError(f"row {i} out of range for {self.rows} rows")
        return BitVector(self.cols, self.row_words[i])

    def entry(self, i: int, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range for {self.cols} columns")
        return (self.row_words[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        words = []
        for j in range(self.cols):
            w = 0
            for i in range(self.rows):
                w |= ((self.row_words[i] >> j) & 1) << i
            words.append(w)
        return BitMatrix(self.cols, self.rows, tuple(words))

    @property
    def is_zero(self) -> bool:
        return all(w == 0 for w in self.row_words)


def vec_times_matrix(v: BitVector, m: BitMatrix) -> BitVector:
    """Row vector times matrix: XOR of the rows of m selected by v."""
    if v.length != m.rows:
        raise ValueError(f"vector length {v.length} does not match {m.rows} rows")
    acc = 0
    bits = v.bits
    i = 0
    while bits:
        if bits & 1:
            acc ^= m.row_words[i]
        bits >>= 1
        i += 1
    return BitVector(m.cols, acc)


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over the two-element field."""
    if a.cols != b.rows:
        raise ValueError(
            f"dimension mismatch: {a.rows}x{a.cols} cannot multiply {b.rows}x{b.cols}"
        )
    words = []
    for w in a.row_words:
        acc = 0
        i = 0
        bits = w
        while bits:
            if bits & 1:
                acc ^= b.row_words[i]
            bits >>= 1
            i += 1
        words.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(words))


def _echelon(m: BitMatrix):
    """Row echelon form with row tracking.

    Returns (reduced_words, combo_words, pivot_cols): combo_words[i] records,
    as a bit mask over the original rows, the combination that produced
    reduced row i.  Pivoting takes the first row with a nonzero leading bit
    (deterministic for a fixed row order).
    """
    work = list(m.row_words)
    combo = [1 << i for i in range(m.rows)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = None
        for i in range(r, m.rows):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        combo[r], combo[pivot] = combo[pivot], combo[r]
        for i in range(m.rows):
            if i != r and (work[i] >> c) & 1:
                work[i] ^= work[r]
                combo[i] ^= combo[r]
        pivot_cols.append(c)
        r += 1
        if r == m.rows:
            break
    return work, combo, pivot_cols


def rank(m: BitMatrix) -> int:
    """Rank over the two-element field."""
    _, _, pivots = _echelon(m)
    return len(pivots)


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the left kernel {v : v x m = 0}; size = rows - rank."""
    work, combo, pivots = _echelon(m)
    r = len(pivots)
    return [BitVector(m.rows, combo[i]) for i in range(r, m.rows) if work[i] == 0]


def image_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the row space {v x m}; size = rank."""
    work, _, pivots = _echelon(m)
    return [BitVector(m.cols, work[i]) for i in range(len(pivots))]


def image_basis_with_preimages(m: BitMatrix) -> list[tuple[BitVector, BitVector]]:
    """Row-space basis paired with explicit preimages (v, w) with w x m = v."""
    work, combo, pivots = _echelon(m)
    return [
        (BitVector(m.cols, work[i]), BitVector(m.rows, combo[i]))
        for i in range(len(pivots))
    ]


def solve_in_span(vectors: list[BitVector], target: BitVector) -> BitVector | None:
    """Coefficients c with sum(c_i * vectors[i]) = target, or None.

    If the vectors are linearly independent the coefficients are unique.
    """
    lengths = {v.length for v in vectors} | {target.length}
    if len(lengths) > 1:
        raise ValueError(f"mixed vector lengths {sorted(lengths)}")
    n = len(vectors)
    width = target.length
    work, combo, _ = _echelon(BitMatrix(n, width, tuple(v.bits for v in vectors)))
    residue = target.bits
    coeffs = 0
    for i in range(n):
        if work[i] == 0:
            continue
        lead = work[i] & -work[i]
        if residue & lead:
            residue ^= work[i]
            coeffs ^= combo[i]
    if residue:
        return None
    return BitVector(n, coeffs)
