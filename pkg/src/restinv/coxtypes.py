"""Finite Coxeter types: parsing, Bourbaki diagram data, degree tables.

A type is a product of irreducible components ``(family, rank, bond)`` where
``bond`` is only meaningful for the dihedral family ``I2``.  Node numbering
inside each component follows Bourbaki.  Degenerate component names that
arise in classification bookkeeping (A0, B0, B1, D1, D2, D3, C2, I2(3),
I2(4), I2(6)) are normalized here so that every buildable component is one
of: A_n (n>=1), B_n (n>=2), C_n (n>=3), D_n (n>=4), E6/E7/E8, F4, G2,
H3/H4, I2(m) (m>=5, m!=6).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import prod


@dataclass(frozen=True, order=True)
class Component:
    family: str
    rank: int
    bond: int = 0  # only for I2

    def label(self) -> str:
        if self.family == "I2":
            return f"I2({self.bond})"
        return f"{self.family}{self.rank}"

    def __repr__(self):
        return self.label()


@dataclass(frozen=True)
class CoxeterType:
    components: tuple[Component, ...]

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def is_crystallographic(self) -> bool:
        return all(c.family in "ABCDEFG" for c in self.components)

    def label(self) -> str:
        if not self.components:
            return "empty"
        return "x".join(c.label() for c in self.components)

    def __repr__(self):
        return f"CoxeterType({self.label()})"


_RANK_BOUNDS = {"A": 1, "B": 2, "C": 3, "D": 4, "F": 4, "G": 2}


def component(family: str, rank: int, bond: int = 0) -> Component:
    """Validated, normalized irreducible component."""
    if family == "I2":
        if bond < 3:
            raise ValueError("I2 bond must be >= 3")
        if bond == 3:
            return Component("A", 2)
        if bond == 4:
            return Component("B", 2)
        if bond == 6:
            return Component("G", 2)
        return Component("I2", 2, bond)
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E rank must be 6, 7 or 8")
    elif family == "H":
        if rank not in (3, 4):
            raise ValueError("H rank must be 3 or 4")
    elif family == "F":
        if rank != 4:
            raise ValueError("F rank must be 4")
    elif family == "G":
        if rank != 2:
            raise ValueError("G rank must be 2")
    elif family in "ABCD":
        if family == "C" and rank == 2:
            return Component("B", 2)
        if family == "D" and rank == 3:
            return Component("A", 3)
        if rank < _RANK_BOUNDS[family]:
            raise ValueError(f"{family}{rank} is below the canonical rank bound")
    else:
        raise ValueError(f"unknown family {family!r}")
    return Component(family, rank, 0)


def coxeter_type(*comps: Component) -> CoxeterType:
    return CoxeterType(tuple(comps))


_TOKEN = re.compile(r"\s*(?:([ABCDEFGH])\s*(\d+)|I2\s*\(\s*(\d+)\s*\))\s*")


def parse_type(s: str) -> CoxeterType:
    """Parse strings like ``"E7"``, ``"I2(7)"``, ``"A3xB2"``, ``"A1 x A2"``."""
    comps = []
    for part in re.split(r"[x*]", s):
        part = part.strip()
        if not part:
            raise ValueError(f"empty component in type string {s!r}")
        m = _TOKEN.fullmatch(part)
        if not m:
            raise ValueError(f"cannot parse component {part!r}")
        if m.group(3) is not None:
            comps.append(component("I2", 2, int(m.group(3))))
        else:
            comps.append(component(m.group(1), int(m.group(2))))
    return CoxeterType(tuple(comps))


# ---------------------------------------------------------------------------
# Bourbaki diagram data per component
# ---------------------------------------------------------------------------


def coxeter_matrix(c: Component) -> list[list[int]]:
    """Bond orders m(i,j); 1 on the diagonal, 2 = no edge."""
    n = c.rank
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1

    def bond(i, j, val=3):
        m[i][j] = m[j][i] = val

    f = c.family
    if f in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if f in ("B", "C") and n >= 2:
            bond(n - 2, n - 1, 4)
    elif f == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif f == "E":
        # Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif f == "F":
        bond(0, 1)
        bond(1, 2, 4)
        bond(2, 3)
    elif f == "G":
        bond(0, 1, 6)
    elif f == "H":
        bond(0, 1, 5)
        for i in range(1, n - 1):
            bond(i, i + 1)
    elif f == "I2":
        bond(0, 1, c.bond)
    else:
        raise ValueError(f)
    return m


def simple_root_norms(c: Component) -> list:
    """Squared lengths (alpha_i, alpha_i) in the standard normalization.

    Crystallographic components use the usual lattice normalization (long
    roots have squared length 2, except C where they have 4 and G2 where 6).
    H and I2 components use unit-norm simple roots.
    """
    n, f = c.rank, c.family
    if f in ("A", "D", "E"):
        return [2] * n
    if f == "B":
        return [2] * (n - 1) + [1]
    if f == "C":
        return [2] * (n - 1) + [4]
    if f == "F":
        return [2, 2, 1, 1]
    if f == "G":
        return [2, 6]  # alpha1 short, alpha2 long (Bourbaki)
    return [1] * n  # H, I2


# degrees of the fundamental invariants per irreducible type
def component_degrees(c: Component) -> tuple[int, ...]:
    n, f = c.rank, c.family
    if f == "A":
        return tuple(range(2, n + 2))
    if f in ("B", "C"):
        return tuple(range(2, 2 * n + 1, 2))
    if f == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    if f == "E":
        return {6: (2, 5, 6, 8, 9, 12),
                7: (2, 6, 8, 10, 12, 14, 18),
                8: (2, 8, 12, 14, 18, 20, 24, 30)}[n]
    if f == "F":
        return (2, 6, 8, 12)
    if f == "G":
        return (2, 6)
    if f == "H":
        return (2, 6, 10) if n == 3 else (2, 12, 20, 30)
    if f == "I2":
        return (2, c.bond)
    raise ValueError(f)


def type_degrees(t: CoxeterType) -> tuple[int, ...]:
    out: list[int] = []
    for c in t.components:
        out.extend(component_degrees(c))
    return tuple(sorted(out))


def type_exponents(t: CoxeterType) -> tuple[int, ...]:
    return tuple(d - 1 for d in type_degrees(t))


def group_order(t: CoxeterType) -> int:
    return prod(type_degrees(t)) if t.components else 1


def component_order(c: Component) -> int:
    return prod(component_degrees(c))


def num_positive_roots(t: CoxeterType) -> int:
    return sum(type_exponents(t))


def coxeter_number(c: Component) -> int:
    return max(component_degrees(c))


def max_bond(t: CoxeterType) -> int:
    """Largest bond order appearing in the diagram."""
    out = 2
    for c in t.components:
        mat = coxeter_matrix(c)
        for i in range(c.rank):
            for j in range(i + 1, c.rank):
                out = max(out, mat[i][j])
    return out


def needs_cyclotomic(t: CoxeterType) -> bool:
    return any(c.family in ("H", "I2") for c in t.components)


def reduce_product(types: list[CoxeterType]) -> CoxeterType:
    return reduce(lambda a, b: CoxeterType(a.components + b.components),
                  types, CoxeterType(()))
