"""Mod-2 chain complex of the 244-cell structure and its homology.

Boundary matrices follow the row-vector convention of :mod:`tricell.gf2`:
the matrix for degree d has one row per d-cell and one column per
(d-1)-cell, and the boundary of a chain is ``chain x matrix``.  The
degree-1 boundary map is identically zero: with a single 0-cell to which
every 1-cell is attached at both ends, each mod-2 incidence count vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2
from .catalog import Cell, ordered_basis
from .ingest import BoundaryFile


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    degree: int
    vector: gf2.BitVector

    def cells(self, complex_: "ChainComplex") -> tuple[Cell, ...]:
        basis = complex_.bases[self.degree]
        return tuple(basis[i] for i in self.vector.support())

    def names(self, complex_: "ChainComplex") -> tuple[str, ...]:
        return tuple(c.name for c in self.cells(complex_))

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add chains of degree {self.degree} and {other.degree}"
            )
        return Chain(self.degree, self.vector + other.vector)

    @property
    def is_zero(self) -> bool:
        return self.vector.is_zero


@dataclass
class ChainComplex:
    bases: dict[int, list[Cell]]
    boundaries: dict[int, gf2.BitMatrix]  # d -> matrix of the degree-d map
    index: dict[int, dict[Cell, int]] = field(init=False)
    _validated: bool = field(default=False, init=False)

    def __post_init__(self):
        self.index = {
            d: {c: i for i, c in enumerate(cells)} for d, cells in self.bases.items()
        }
        for d, m in self.boundaries.items():
            want = (len(self.bases[d]), len(self.bases[d - 1]))
            if (m.rows, m.cols) != want:
                raise ComplexError(
                    f"degree-{d} boundary is {m.rows}x{m.cols}, expected {want}"
                )

    # -- chain constructors -------------------------------------------------

    def chain(self, degree: int, cells) -> Chain:
        idx = self.index[degree]
        vec = gf2.BitVector(len(self.bases[degree]))
        for c in cells:
            if c not in idx:
                raise ComplexError(f"{c.name} is not a degree-{degree} basis cell")
            vec = vec + gf2.BitVector.from_indices(vec.length, [idx[c]])
        return Chain(degree, vec)

    def zero_chain(self, degree: int) -> Chain:
        return Chain(degree, gf2.BitVector(len(self.bases[degree])))

    # -- boundary and validation --------------------------------------------

    def boundary(self, chain: Chain) -> Chain:
        if chain.degree < 1:
            raise ComplexError("degree-0 chains have no boundary")
        m = self.boundaries[chain.degree]
        return Chain(chain.degree - 1, gf2.vec_times_matrix(chain.vector, m))

    def validate(self) -> "ValidationReport":
        failures = []
        for d in range(2, 7):
            prod = gf2.multiply(self.boundaries[d], self.boundaries[d - 1])
            if prod.is_zero:
                continue
            for i, word in enumerate(prod.row_words):
                if word:
                    gen = self.bases[d][i]
                    offending = tuple(
                        self.bases[d - 2][j].name
                        for j in gf2.BitVector(prod.cols, word).support()
                    )
                    failures.append((gen.name, offending))
        report = ValidationReport(tuple(failures))
        self._validated = report.ok
        return report

    def _require_validated(self):
        if not self._validated:
            raise ComplexError("complex not validated; run validate() first")

    # -- homology ------------------------------------------------------------

    def rank(self, degree: int) -> int:
        if degree == 0 or degree == 7:
            return 0
        return gf2.rank(self.boundaries[degree])

    def kernel_dim(self, degree: int) -> int:
        if degree == 0:
            return len(self.bases[0])
        return len(self.bases[degree]) - self.rank(degree)

    def betti(self, degree: int) -> int:
        self._require_validated()
        return self.kernel_dim(degree) - self.rank(degree + 1)

    def homology_generators(self, degree: int) -> list[Chain]:
        """Cycles whose classes form a basis of the degree-d homology.

        Preference is given to the published representatives when they are
        cycles and remain independent modulo boundaries, so reports read the
        way the source does.
        """
        self._require_validated()
        n = len(self.bases[degree])
        if degree == 0:
            cycle_basis = [gf2.BitVector.from_indices(n, [i]) for i in range(n)]
        else:
            cycle_basis = gf2.kernel_basis(self.boundaries[degree])
        boundary_rows = (
            gf2.image_basis(self.boundaries[degree + 1]) if degree < 6 else []
        )

        preferred = [
            c.vector for c in self._preferred_representatives(degree)
            if self._is_cycle(c)
        ]
        chosen: list[gf2.BitVector] = []
        span = list(boundary_rows)
        target = self.betti(degree)
        for v in preferred + cycle_basis:
            if len(chosen) == target:
                break
            if gf2.solve_in_span(span, v) is None:
                chosen.append(v)
                span.append(v)
        return [Chain(degree, v) for v in chosen]

    def _preferred_representatives(self, degree: int) -> list[Chain]:
        def by_names(names):
            return self.chain(degree, [c for c in self.bases[degree] if c.name in names])

        if degree == 1:
            return [by_names({"bTH"})]
        if degree == 2:
            return [by_names({"bX+", "bX-"}), by_names({"bOM"})]
        return []

    def _is_cycle(self, chain: Chain) -> bool:
        return chain.degree == 0 or self.boundary(chain).is_zero

    def class_equal(self, a: Chain, b: Chain) -> bool:
        """True iff the cycles a and b differ by a boundary."""
        self._require_validated()
        if a.degree != b.degree:
            raise ComplexError(
                f"degree mismatch: {a.degree} vs {b.degree}"
            )
        for label, chain in (("first", a), ("second", b)):
            if not self._is_cycle(chain):
                raise ComplexError(f"{label} argument is not a cycle")
        return self.is_boundary(a + b)

    def is_boundary(self, chain: Chain) -> bool:
        self._require_validated()
        if chain.is_zero:
            return True
        if chain.degree == 6:
            return False
        rows = gf2.image_basis(self.boundaries[chain.degree + 1])
        return gf2.solve_in_span(rows, chain.vector) is not None

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(cells) for d, cells in self.bases.items())


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[tuple[str, tuple[str, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def build_complex(boundaries: dict[int, BoundaryFile]) -> ChainComplex:
    """Assemble the complex from (errata-corrected) boundary files."""
    bases = {d: ordered_basis(d) for d in range(7)}
    index = {d: {c: i for i, c in enumerate(cells)} for d, cells in bases.items()}
    mats: dict[int, gf2.BitMatrix] = {
        1: gf2.BitMatrix.zero(len(bases[1]), len(bases[0]))
    }
    for d, bf in boundaries.items():
        if bf.degree != d:
            raise ComplexError(f"boundary file for degree {bf.degree} filed under {d}")
        rows = [0] * len(bases[d])
        seen = set()
        for line in bf.lines:
            gen = line.generator
            if gen.dimension != d:
                raise ComplexError(
                    f"{gen.name} has dimension {gen.dimension}, not {d}"
                )
            word = 0
            for t in line.terms:
                if t.dimension != d - 1:
                    raise ComplexError(
                        f"boundary of {gen.name} contains {t.name} of dimension"
                        f" {t.dimension}; run lint/errata first"
                    )
                word ^= 1 << index[d - 1][t]
            rows[index[d][gen]] = word
            seen.add(gen)
        missing = [c.name for c in bases[d] if c not in seen]
        if missing:
            raise ComplexError(f"degree {d}: no boundary row for {missing}")
        mats[d] = gf2.BitMatrix(len(bases[d]), len(bases[d - 1]), tuple(rows))
    return ChainComplex(bases, mats)


# ---------------------------------------------------------------------------
# corollary verification


@dataclass(frozen=True)
class KernelReport:
    all_cycles: bool
    independent: bool
    spanning: bool
    kernel_dim: int
    cycle_failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.all_cycles and self.independent and self.spanning


def verify_kernel_generators(
    complex_: ChainComplex, kernel_cycles: dict[int, tuple[Cell, ...]]
) -> KernelReport:
    """Check the published degree-2 cycle list: cycles, independent, spanning."""
    chains = {
        num: complex_.chain(2, cells) for num, cells in sorted(kernel_cycles.items())
    }
    failures = tuple(
        f"ker{num:02d}" for num, ch in chains.items() if not complex_.boundary(ch).is_zero
    )
    m = gf2.BitMatrix.from_rows([ch.vector for ch in chains.values()])
    r = gf2.rank(m)
    kdim = complex_.kernel_dim(2)
    return KernelReport(
        all_cycles=not failures,
        independent=r == len(chains),
        spanning=r == kdim,
        kernel_dim=kdim,
        cycle_failures=failures,
    )


@dataclass(frozen=True)
class ExpansionReport:
    total: int
    matches: int
    mismatches: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return self.matches == self.total


def verify_expansions(
    complex_: ChainComplex,
    kernel_cycles: dict[int, tuple[Cell, ...]],
    expansions: dict[str, frozenset[int]],
) -> ExpansionReport:
    """Recompute every stated kernel-cycle expansion of a degree-3 boundary.

    The published cycle list is a basis (see verify_kernel_generators), so
    the coefficients of a boundary in it are unique and comparison as index
    sets is exact.
    """
    nums = sorted(kernel_cycles)
    gens = [complex_.chain(2, kernel_cycles[n]).vector for n in nums]
    mismatches = []
    total = 0
    from .catalog import parse_cell

    for name, want in sorted(expansions.items()):
        total += 1
        cell = parse_cell(name)
        bnd = complex_.boundary(complex_.chain(3, [cell]))
        coeffs = gf2.solve_in_span(gens, bnd.vector)
        if coeffs is None:
            mismatches.append((name, tuple(sorted(want)), ()))
            continue
        got = tuple(nums[i] for i in coeffs.support())
        if frozenset(got) != want:
            mismatches.append((name, tuple(sorted(want)), got))
    return ExpansionReport(total, total - len(mismatches), tuple(mismatches))
