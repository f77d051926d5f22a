"""W-conjugacy classes of parabolic subsets I of S.

Class membership is decided by the W-orbit of the positive root set of the
parabolic subsystem: subsets are grouped by their (conjugacy-invariant)
component label first, and within a group the orbit of the representative's
root-set key is computed once; the other subsets are looked up in it.

For irreducible type A of rank > 8 the orbit route is replaced by the
classical combinatorial parametrization (classes <-> partitions of r+1,
counted by multinomials); everything downstream of it then runs on closed
forms, which is exact by the classical theory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial, prod

from .coxtypes import CoxeterType, group_order
from .groupcalc import OrbitResult, orbit_stabilizer, quotient_action
from .rootsystems import RootSystem, subsystem_label, subsystem_type


@dataclass
class ParabolicClass:
    index: int
    rep: frozenset[int]
    members: tuple[frozenset[int], ...]
    orbit_size: int
    ctype: CoxeterType              # type of W_I
    base_label: str
    paper_label: str
    phi_pos: tuple[int, ...]        # positive roots of the representative
    orbit: OrbitResult | None = field(default=None, repr=False)

    @property
    def codim(self) -> int:
        return len(self.rep)

    def wi_order(self) -> int:
        return group_order(self.ctype)

    def fingerprint(self, exp_ax=None):
        return (self.base_label, self.orbit_size) + ((tuple(exp_ax),) if exp_ax else ())


def _subset_sort_key(s):
    return (len(s), tuple(sorted(s)))


def parabolic_classes(rs: RootSystem, orbit_cap: int = 20_000_000,
                      keep_orbits: bool = False) -> list[ParabolicClass]:
    """One class per W-orbit of parabolic subsets, including empty and full."""
    t = rs.ctype
    if (t.is_irreducible() and t.components[0].family == "A" and rs.rank > 8):
        return _type_a_classes(rs)

    by_label: dict[str, list[frozenset]] = {}
    for k in range(rs.rank + 1):
        for comb in combinations(range(rs.rank), k):
            I = frozenset(comb)
            by_label.setdefault(subsystem_label(rs, I), []).append(I)

    classes: list[ParabolicClass] = []
    for label, subsets in by_label.items():
        subsets = sorted(subsets, key=_subset_sort_key)
        remaining = list(subsets)
        while remaining:
            rep = remaining[0]
            orb = orbit_stabilizer(rs, rs.phi_I_positive(rep), cap=orbit_cap)
            members, rest = [], []
            for J in remaining:
                if orb.contains(rs.phi_I_positive(J)):
                    members.append(J)
                else:
                    rest.append(J)
            classes.append(ParabolicClass(
                index=-1, rep=rep, members=tuple(members), orbit_size=orb.size,
                ctype=subsystem_type(rs, rep), base_label=label,
                paper_label=label, phi_pos=rs.phi_I_positive(rep),
                orbit=orb if keep_orbits else None))
            remaining = rest

    classes.sort(key=lambda c: _subset_sort_key(c.rep))
    for i, c in enumerate(classes):
        c.index = i
    _attach_paper_labels(rs, classes)
    return classes


def _type_a_classes(rs: RootSystem) -> list[ParabolicClass]:
    """Classes of A_r via partitions of r+1; orbit sizes by multinomials."""
    n = rs.rank + 1
    classes = []
    for I in _leftmost_reps(rs.rank):
        lam = _partition_of_subset(rs.rank, I)
        size = factorial(n) // (prod(factorial(p) for p in lam)
                                * prod(factorial(m) for m in _mults(lam)))
        classes.append(ParabolicClass(
            index=-1, rep=I, members=(I,), orbit_size=size,
            ctype=subsystem_type(rs, I), base_label=subsystem_label(rs, I),
            paper_label=subsystem_label(rs, I), phi_pos=rs.phi_I_positive(I)))
    classes.sort(key=lambda c: _subset_sort_key(c.rep))
    for i, c in enumerate(classes):
        c.index = i
    return classes


def _partitions(n):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _leftmost_reps(rank):
    """Leftmost-packed node subsets realizing each partition of rank+1."""
    reps = []
    for lam in _partitions(rank + 1):
        nodes = []
        pos = 0
        for p in lam:
            nodes.extend(range(pos, pos + p - 1))
            pos += p
        reps.append(frozenset(nodes))
    return reps


def _partition_of_subset(rank, I):
    """Block sizes of the set partition of {1..rank+1} cut out by I."""
    lam = []
    run = 1
    for i in range(rank):
        if i in I:
            run += 1
        else:
            lam.append(run)
            run = 1
    lam.append(run)
    return sorted(lam, reverse=True)


def _mults(lam):
    from collections import Counter
    return Counter(lam).values()


def partition_of_class(rs: RootSystem, pc: ParabolicClass):
    assert rs.ctype.is_irreducible() and rs.ctype.components[0].family == "A"
    return tuple(_partition_of_subset(rs.rank, pc.rep))


# ---------------------------------------------------------------------------
# curated paper labels (primed types)
# ---------------------------------------------------------------------------


def _attach_paper_labels(rs: RootSystem, classes: list[ParabolicClass]):
    """Disambiguate same-type classes with the shipped anchor map."""
    from .tables import label_anchors
    anchors = label_anchors().get(rs.ctype.label(), {})
    by_label: dict[str, list[ParabolicClass]] = {}
    for c in classes:
        by_label.setdefault(c.base_label, []).append(c)
    for label, group in by_label.items():
        if len(group) == 1:
            continue
        rules = anchors.get(label)
        if rules is None:
            # no paper-sanctioned names: number the classes deterministically
            for k, c in enumerate(group):
                c.paper_label = f"{label}#{k+1}" if len(group) > 1 else label
            continue
        assigned = set()
        for rule in rules.get("anchored", []):
            anchor = frozenset(rule["subset"])
            hit = [c for c in group if anchor in c.members]
            assert len(hit) == 1, f"label anchor {sorted(anchor)} is ambiguous"
            hit[0].paper_label = rule["label"]
            assigned.add(hit[0].index)
        rest = [c for c in group if c.index not in assigned]
        others = rules.get("others", [])
        assert len(rest) == len(others), f"anchor map incomplete for {label}"
        for c, lab in zip(rest, others):
            c.paper_label = lab


def class_quotient(rs: RootSystem, pc: ParabolicClass, group_cap: int = 1_000_000):
    """QuotientAction for a class; reuses the stored orbit when available."""
    orb = pc.orbit
    if orb is None:
        orb = orbit_stabilizer(rs, pc.phi_pos)
        assert orb.size == pc.orbit_size
    return quotient_action(rs, pc.rep, orb, group_cap=group_cap)
