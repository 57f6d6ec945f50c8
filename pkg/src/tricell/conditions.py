"""Jet-condition systems attached to the cell families.

Every cell family is cut out, inside the space of smooth functions on the
circle, by exactly four linear conditions on derivatives of order <= 5 at
the support points.  This module holds the symbolic templates (one per
family and sign variant) and instantiates them at rational support points
and rational moduli, producing plain linear functionals with exact
coefficients.

Point ids are 1-based positions in circle order.  Support coordinates are
rationals in [0, 63/10] standing in for [0, 2*pi); for second-type cells the
last position is the distinguished point and sits at coordinate 0 exactly.
Periodicity never enters: only finitely many jets at distinct points do.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .catalog import FAMILIES, Cell

CIRCLE_BOUND = Fraction(63, 10)

MAX_ORDER = 5


class ConstraintError(ValueError):
    """An instantiation parameter violates the family's open conditions."""


# --- symbolic layer ---------------------------------------------------------


@dataclass(frozen=True)
class SymbolicTerm:
    point: int
    order: int
    scale: Fraction  # constant factor
    modulus: str | None = None  # multiply by this modulus if set

    def resolve(self, moduli: dict[str, Fraction]) -> Fraction:
        if self.modulus is None:
            return self.scale
        return self.scale * moduli[self.modulus]


@dataclass(frozen=True)
class SymbolicSystem:
    family: str
    sign: str
    support_size: int
    modulus_names: tuple[str, ...]
    functionals: tuple[tuple[SymbolicTerm, ...], ...]


def _c(point: int, order: int, q: int | Fraction = 1) -> SymbolicTerm:
    return SymbolicTerm(point, order, Fraction(q))


def _m(point: int, order: int, modulus: str, q: int | Fraction = 1) -> SymbolicTerm:
    return SymbolicTerm(point, order, Fraction(q), modulus)


def _value_chain(points) -> list[tuple[SymbolicTerm, ...]]:
    """f(p_a) = f(p_b) = ... as consecutive differences."""
    pts = list(points)
    return [
        (_c(a, 0), _c(b, 0, -1)) for a, b in zip(pts, pts[1:])
    ]


def _others(n: int, *used: int) -> list[int]:
    return [p for p in range(1, n + 1) if p not in used]


def template_for(family: str, sign: str = "", indices: tuple[int, ...] = ()) -> SymbolicSystem:
    """The symbolic four-functional system of one cell family.

    ``indices`` selects the marked points for indexed families; sign selects
    the variant where one exists.
    """
    fam = FAMILIES.get(family)
    if fam is None:
        raise ConstraintError(f"unknown family {family!r}")
    if sign not in fam.sign_domain:
        raise ConstraintError(f"sign {sign!r} not legal for family {family}")
    if indices not in fam.index_domain:
        raise ConstraintError(f"indices {indices} not legal for family {family}")
    n = fam.support_size
    fns: list[tuple[SymbolicTerm, ...]] = []
    moduli: tuple[str, ...] = ()

    if family == "A":
        j, k = indices
        first = sorted({1, j, k})
        second = _others(6, *first)
        fns = _value_chain(first) + _value_chain(second)
    elif family == "B":
        fns = _value_chain(range(1, 6))
    elif family == "C":
        i, j = indices
        fns = [(_c(i, 1),), (_c(i, 0), _c(j, 0, -1))] + _value_chain(_others(5, i, j))
    elif family == "D":
        i, j = indices
        fns = _value_chain(range(1, 5)) + [(_c(i, 1), _m(j, 1, "alpha", -1))]
        moduli = ("alpha",)
    elif family == "E":
        fns = _value_chain((1, 2, 3)) + [
            (_m(1, 1, "beta"), _m(2, 1, "alpha", -1)),
            (_m(2, 1, "gamma"), _m(3, 1, "beta", -1)),
        ]
        moduli = ("alpha", "beta", "gamma")
    elif family == "F":
        (i,) = indices
        fns = [(_c(i, 1),), (_c(i, 2),)] + _value_chain(_others(4, i))
    elif family == "G":
        i, j, k, l = indices
        fns = [
            (_c(i, 1),),
            (_c(i, 0), _c(j, 0, -1)),
            (_c(k, 1),),
            (_c(k, 0), _c(l, 0, -1)),
        ]
    elif family == "H":
        (i,) = indices
        fns = _value_chain(range(1, 5)) + [(_c(i, 1),)]
    elif family == "I":
        (i,) = indices
        fns = _value_chain((1, 2, 3)) + [
            (_c(i, 1),),
            (_c(i, 3), _m(i, 2, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "J":
        i, j, l = indices
        fns = _value_chain((1, 2, 3)) + [
            (_c(i, 1),),
            (_c(i, 2), _m(j, 1, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "K":
        (i,) = indices
        j, l = _others(3, i)
        fns = _value_chain((1, 2, 3)) + [
            (_c(i, 1),),
            (_c(j, 1), _m(l, 1, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "W":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [
            (_c(a, 0), _c(b, 0, -1)),
            (_c(a, 1),),
            (_m(a, 3, "gamma"), _m(b, 1, "alpha", -1)),
            (_m(a, 2, "gamma"), _m(b, 1, "beta", -1)),
        ]
        moduli = ("alpha", "beta", "gamma")
    elif family == "L":
        i, j, l = indices
        fns = [
            (_c(i, 1),),
            (_c(i, 2),),
            (_c(j, 1),),
            (_c(j, 0), _c(l, 0, -1)),
        ]
    elif family == "M":
        (i,) = indices
        fns = _value_chain((1, 2, 3)) + [(_c(i, 1),), (_c(i, 2),)]
    elif family == "N":
        (i,) = indices
        j, l = _others(3, i)
        fns = _value_chain((1, 2, 3)) + [(_c(j, 1),), (_c(l, 1),)]
    elif family == "P":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [
            (_c(a, 0), _c(b, 0, -1)),
            (_c(a, 1),),
            (_c(a, 3), _m(a, 2, "alpha", -1)),
            (_c(b, 1),),
        ]
        moduli = ("alpha",)
    elif family == "S":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [
            (_c(a, 0), _c(b, 0, -1)),
            (_c(a, 1),),
            (_c(a, 2),),
            (_c(a, 4), _m(a, 3, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "X":
        fns = [
            (_c(1, 0), _c(2, 0, -1)),
            (_c(1, 1),),
            (_c(2, 1),),
            (_c(1, 2), _m(2, 2, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "V":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [
            (_c(a, 0), _c(b, 0, -1)),
            (_c(a, 1),),
            (_c(a, 2),),
            (_c(a, 3), _m(b, 1, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "OM":
        fns = [
            (_c(1, 1),),
            (_c(1, 2),),
            (_c(1, 4), _m(1, 3, "alpha", -1)),
            (_c(1, 5), _m(1, 3, "beta", -1)),
        ]
        moduli = ("alpha", "beta")
    elif family == "Y":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [(_c(a, 0), _c(b, 0, -1)), (_c(a, 1),), (_c(a, 2),), (_c(b, 1),)]
    elif family == "U":
        (i,) = indices
        a, b = (1, 2) if i == 1 else (2, 1)
        fns = [(_c(a, 0), _c(b, 0, -1)), (_c(a, 1),), (_c(a, 2),), (_c(a, 3),)]
    elif family == "Z":
        fns = [(_c(1, 1),), (_c(1, 2),), (_c(2, 1),), (_c(2, 2),)]
    elif family == "TH":
        fns = [
            (_c(1, 1),),
            (_c(1, 2),),
            (_c(1, 3),),
            (_c(1, 5), _m(1, 4, "alpha", -1)),
        ]
        moduli = ("alpha",)
    elif family == "NB":
        fns = [(_c(1, 1),), (_c(1, 2),), (_c(1, 3),), (_c(1, 4),)]
    else:  # pragma: no cover
        raise ConstraintError(f"no template for family {family}")

    assert len(fns) == 4, (family, len(fns))
    return SymbolicSystem(family, sign, n, moduli, tuple(tuple(f) for f in fns))


# --- sign/openness constraints ----------------------------------------------


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def check_moduli(family: str, sign: str, moduli: dict[str, Fraction]) -> None:
    """Raise ConstraintError naming the violated open/sign condition."""
    def nonzero(*names):
        for nm in names:
            if moduli[nm] == 0:
                product = "*".join(names)
                raise ConstraintError(f"{product} != 0 violated ({nm} = 0)")

    if family == "E":
        nonzero("alpha", "beta", "gamma")
        s = [_sign(moduli[nm]) for nm in ("alpha", "beta", "gamma")]
        patterns = {
            "+": s[0] == s[1] == s[2],
            "1": s[0] != s[1] and s[1] == s[2],
            "2": s[1] != s[0] and s[0] == s[2],
            "3": s[2] != s[0] and s[0] == s[1],
        }
        if not patterns[sign]:
            raise ConstraintError(
                f"E{sign} sign pattern violated: signs of (alpha, beta, gamma)"
                f" are {tuple(s)}"
            )
    elif family == "W":
        nonzero("beta", "gamma")
        want = 1 if sign == "+" else -1
        if _sign(moduli["beta"]) * _sign(moduli["gamma"]) != want:
            raise ConstraintError(f"sign of beta/gamma must be {sign}")
    elif family in ("D", "J", "K", "X", "V"):
        nonzero("alpha")
        want = 1 if sign == "+" else -1
        if _sign(moduli["alpha"]) != want:
            rel = ">" if want == 1 else "<"
            raise ConstraintError(
                f"sign {sign} requires alpha {rel} 0, got {moduli['alpha']}"
            )
    # I, P, S, OM, TH moduli are unconstrained.


# --- instantiated layer ------------------------------------------------------


@dataclass(frozen=True)
class JetTerm:
    point: int
    order: int
    coefficient: Fraction


@dataclass(frozen=True)
class JetFunctional:
    terms: tuple[JetTerm, ...]

    def __post_init__(self):
        if not any(t.coefficient for t in self.terms):
            raise ValueError("functional with no nonzero coefficient")
        if any(t.order > MAX_ORDER for t in self.terms):
            raise ValueError(f"derivative order above {MAX_ORDER}")

    def constant_part(self) -> Fraction:
        """Value on the constant function 1 (sum of order-0 coefficients)."""
        return sum((t.coefficient for t in self.terms if t.order == 0), Fraction(0))


@dataclass(frozen=True)
class ConditionSystem:
    cell: Cell
    points: dict[int, Fraction]  # point id -> support coordinate
    moduli: dict[str, Fraction]
    functionals: tuple[JetFunctional, ...]

    def multiplicities(self) -> dict[int, int]:
        """Template multiplicity per point: 1 + highest derivative order used."""
        mult = {p: 0 for p in self.points}
        for fn in self.functionals:
            for t in fn.terms:
                mult[t.point] = max(mult[t.point], t.order + 1)
        return mult

    def describe(self) -> str:
        """One functional per line, `+/-c * D^k[p]` term format."""
        lines = []
        for fn in self.functionals:
            parts = []
            for t in fn.terms:
                c = t.coefficient
                op = "-" if c < 0 else "+"
                parts.append(f"{op} {abs(c)} * D^{t.order}[p{t.point}]")
            lines.append(" ".join(parts).lstrip("+ "))
        return "\n".join(lines)


def instantiate(
    cell: Cell, support: list[Fraction], moduli: dict[str, Fraction]
) -> ConditionSystem:
    """Fully numeric system for one cell at rational parameters.

    Support is given in position order; for a second-type cell the final
    entry must be the distinguished-point coordinate 0.
    """
    tpl = template_for(cell.family, cell.sign, cell.indices)
    support = [Fraction(p) for p in support]
    if len(support) != tpl.support_size:
        raise ConstraintError(
            f"{cell.name} needs {tpl.support_size} support points, got {len(support)}"
        )
    free = support[:-1] if cell.barred else support
    if cell.barred and support[-1] != 0:
        raise ConstraintError(
            f"{cell.name} is second-type: last support point must be 0"
        )
    for p, q in zip(free, free[1:]):
        if not p < q:
            raise ConstraintError(f"support points not strictly increasing: {p} !< {q}")
    for p in free:
        if not 0 < p < CIRCLE_BOUND:
            raise ConstraintError(f"support point {p} outside (0, {CIRCLE_BOUND})")
    missing = [nm for nm in tpl.modulus_names if nm not in moduli]
    if missing:
        raise ConstraintError(f"{cell.name} needs moduli {missing}")
    moduli = {nm: Fraction(moduli[nm]) for nm in tpl.modulus_names}
    check_moduli(cell.family, cell.sign, moduli)

    fns = []
    for sym in tpl.functionals:
        terms = tuple(
            JetTerm(t.point, t.order, t.resolve(moduli))
            for t in sym
            if t.resolve(moduli) != 0
        )
        fns.append(JetFunctional(terms))
    points = {i + 1: p for i, p in enumerate(support)}
    return ConditionSystem(cell, points, moduli, tuple(fns))


# --- seeded random parameter draws -------------------------------------------

MAX_NUMERATOR = 97
MIN_GAP = Fraction(1, 50)


def _draw_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, MAX_NUMERATOR), rng.randint(1, MAX_NUMERATOR))


def _draw_support(rng: random.Random, count: int, barred: bool) -> list[Fraction]:
    free = count - 1 if barred else count
    while True:
        pts = []
        while len(pts) < free:
            p = _draw_fraction(rng)
            if 0 < p < CIRCLE_BOUND:
                pts.append(p)
        pts.sort()
        if all(b - a >= MIN_GAP for a, b in zip(pts, pts[1:])):
            return pts + [Fraction(0)] if barred else pts


def _draw_modulus(rng: random.Random, sign: int) -> Fraction:
    q = _draw_fraction(rng)
    return q if sign >= 0 else -q


def random_parameters(cell: Cell, rng: random.Random) -> tuple[list[Fraction], dict[str, Fraction]]:
    """A legal seeded draw of support points and moduli for one cell."""
    tpl = template_for(cell.family, cell.sign, cell.indices)
    support = _draw_support(rng, tpl.support_size, cell.barred)
    fam, sign = cell.family, cell.sign
    moduli: dict[str, Fraction] = {}
    for nm in tpl.modulus_names:
        moduli[nm] = _draw_modulus(rng, 1 if rng.random() < 0.5 else -1)
    if fam in ("D", "J", "K", "X", "V"):
        moduli["alpha"] = _draw_modulus(rng, 1 if sign == "+" else -1)
    elif fam == "E":
        s0 = 1 if rng.random() < 0.5 else -1
        signs = {"alpha": s0, "beta": s0, "gamma": s0}
        if sign in ("1", "2", "3"):
            flip = {"1": "alpha", "2": "beta", "3": "gamma"}[sign]
            signs[flip] = -s0
        moduli = {nm: _draw_modulus(rng, s) for nm, s in signs.items()}
    elif fam == "W":
        sg = 1 if rng.random() < 0.5 else -1
        sb = sg if sign == "+" else -sg
        moduli["beta"] = _draw_modulus(rng, sb)
        moduli["gamma"] = _draw_modulus(rng, sg)
    return support, moduli


def seeded_rng(seed: int, label: str) -> random.Random:
    """Deterministic child generator for one labelled draw."""
    return random.Random(f"{seed}/{label}")
