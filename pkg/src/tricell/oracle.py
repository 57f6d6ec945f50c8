"""Exact-rational certification of jet-condition systems.

A four-functional system cuts codimension four out of function space iff
its evaluation matrix on a sufficiently jet-surjective finite-dimensional
subspace has rank four.  Monomials 1, t, ..., t^N do the job: with at most
six support points carrying 5-jets, Hermite interpolation makes every jet
prescription attainable once N >= 35, so the default bound 40 leaves slack.
All arithmetic is exact; rank comes from fraction-free (Bareiss) elimination
on the integer matrix obtained by clearing denominators row by row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .conditions import ConditionSystem, JetFunctional

CERTIFICATION_DEGREE = 35


@dataclass(frozen=True)
class FunctionBasis:
    """Monomial basis 1, t, t^2, ..., t^degree_bound."""

    degree_bound: int
    kind: str = "monomial"

    def __post_init__(self):
        if self.kind != "monomial":
            raise ValueError(f"unsupported basis kind {self.kind!r}")
        if self.degree_bound < 5:
            raise ValueError("degree_bound must be at least 5")

    @property
    def dimension(self) -> int:
        return self.degree_bound + 1


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ValueError("entry grid does not match declared shape")

    def rank(self) -> int:
        return _bareiss_rank(self.entries)


def _bareiss_rank(entries) -> int:
    """Rank by fraction-free elimination (exact integer divisions)."""
    if not entries or not entries[0]:
        return 0
    # clear denominators row by row; row scaling preserves rank
    m = []
    for row in entries:
        lcm = 1
        for q in row:
            lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
        m.append([int(q * lcm) for q in row])
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(cols):
        pivot = next((i for i in range(rank, rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


# --- applying functionals to polynomials --------------------------------------


def monomial_derivative(j: int, order: int, point: Fraction) -> Fraction:
    """Value of d^order/dt^order [t^j] at the point."""
    if order > j:
        return Fraction(0)
    c = 1
    for r in range(order):
        c *= j - r
    return c * point ** (j - order)


def poly_derivative_value(coeffs: list[Fraction], order: int, point: Fraction) -> Fraction:
    return sum(
        (c * monomial_derivative(j, order, point) for j, c in enumerate(coeffs) if c),
        Fraction(0),
    )


def apply_functional_to_poly(
    fn: JetFunctional, coeffs: list[Fraction], points: dict[int, Fraction]
) -> Fraction:
    return sum(
        (
            t.coefficient * poly_derivative_value(coeffs, t.order, points[t.point])
            for t in fn.terms
        ),
        Fraction(0),
    )


def poly_multiply(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


# --- the oracle operations -----------------------------------------------------


def evaluation_matrix(system: ConditionSystem, basis: FunctionBasis) -> RationalMatrix:
    """Entry (i, j) = functional i applied to the monomial t^j."""
    rows = []
    for fn in system.functionals:
        rows.append(
            tuple(
                sum(
                    (
                        t.coefficient
                        * monomial_derivative(j, t.order, system.points[t.point])
                        for t in fn.terms
                    ),
                    Fraction(0),
                )
                for j in range(basis.dimension)
            )
        )
    return RationalMatrix(len(rows), basis.dimension, tuple(rows))


def codimension(system: ConditionSystem, basis: FunctionBasis) -> int:
    """Exact codimension cut out inside the polynomial model."""
    if not system.functionals:
        return 0
    return evaluation_matrix(system, basis).rank()


@dataclass(frozen=True)
class ContainmentReport:
    constants_ok: bool
    ideal_ok: bool
    constant_defects: tuple[int, ...]  # indices of functionals not killing 1
    ideal_defects: tuple[tuple[int, int], ...]  # (functional index, shift power)

    @property
    def ok(self) -> bool:
        return self.constants_ok and self.ideal_ok


IDEAL_SHIFT_POWERS = 11  # t^j * Q for j = 0..10


def verify_containments(system: ConditionSystem) -> ContainmentReport:
    """Check the two required containments of the cut-out subalgebra.

    (a) every functional vanishes on the constant function 1;
    (b) every functional vanishes on a spanning family of the ideal of
        functions vanishing to the template multiplicity at each support
        point, concretely on t^j * prod_i (t - A_i)^{m_i}, j = 0..10.
    """
    constant_defects = tuple(
        i for i, fn in enumerate(system.functionals) if fn.constant_part() != 0
    )

    q = [Fraction(1)]
    for point, mult in sorted(system.multiplicities().items()):
        a = system.points[point]
        for _ in range(mult):
            q = poly_multiply(q, [-a, Fraction(1)])
    ideal_defects = []
    poly = q
    for shift in range(IDEAL_SHIFT_POWERS):
        for i, fn in enumerate(system.functionals):
            if apply_functional_to_poly(fn, poly, system.points) != 0:
                ideal_defects.append((i, shift))
        poly = [Fraction(0)] + poly  # multiply by t
    return ContainmentReport(
        not constant_defects, not ideal_defects, constant_defects, tuple(ideal_defects)
    )
