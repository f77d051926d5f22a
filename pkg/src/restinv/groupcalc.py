"""Orbit-stabilizer machinery, normalizer quotients, Molien series, degrees.

Orbits of parabolic root subsets are computed by breadth-first closure under
the simple reflections, acting on canonical keys (bitmask over positive root
indices; images are folded back to the positive representative).  Schreier
generators of the setwise stabilizer N_W(W_I) are produced lazily from the
BFS tree and immediately restricted to X_I; the restriction kernel is W_I
(Steinberg), so the generated matrix group is the Howlett complement image
C_I and its target order |W| / (orbit * |W_I|) is known in advance, which
makes the lazy consumption provably complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from . import linalg, scalars
from .coxtypes import group_order, type_exponents
from .rootsystems import RootSystem, subsystem_type


class CapExceeded(RuntimeError):
    """A configured enumeration cap was hit; carries what and where."""

    def __init__(self, what, detail):
        super().__init__(f"{what} cap exceeded: {detail}")
        self.what = what
        self.detail = detail


class ExponentMultiset(tuple):
    """Sorted multiset of nonnegative integers with containment semantics."""

    def __new__(cls, values):
        return super().__new__(cls, tuple(sorted(values)))

    def submultiset_of(self, other) -> bool:
        from collections import Counter
        a, b = Counter(self), Counter(other)
        return all(b[k] >= v for k, v in a.items())

    def __repr__(self):
        return "{" + ", ".join(map(str, self)) + "}"


# ---------------------------------------------------------------------------
# orbits of root subsets
# ---------------------------------------------------------------------------


@dataclass
class OrbitResult:
    rs: RootSystem
    base: frozenset[int]
    size: int
    keys: dict  # bitmask -> index
    parent: list[int]
    genof: list[int]

    def contains(self, posset) -> bool:
        return _mask(posset) in self.keys

    def schreier_perms(self):
        """Yield stabilizer elements as full root permutations (numpy arrays).

        Every element of the setwise stabilizer of the base key is a product
        of the yielded permutations (Schreier's lemma); tree edges yield the
        identity and are skipped.
        """
        rs = self.rs
        perms = [np.array(p, dtype=np.int32) for p in rs.simple_perms]
        nroots = len(rs.roots)
        ident = np.arange(nroots, dtype=np.int32)
        maskmaps = _mask_maps(rs)
        order = list(self.keys)

        cache: dict[int, np.ndarray] = {0: ident}

        def transversal(idx):
            path = []
            while idx != 0:
                if idx in cache:
                    break
                path.append(idx)
                idx = self.parent[idx]
            u = cache.get(idx, ident)
            if len(cache) > 50_000:  # keep memory bounded on huge orbits
                cache.clear()
                cache[0] = ident
            for j in reversed(path):
                u = perms[self.genof[j]][u]
                cache[j] = u
            return u

        for idx, key in enumerate(order):
            for g, mm in enumerate(maskmaps):
                img = _apply_mask(mm, key)
                j = self.keys[img]
                if self.parent[j] == idx and self.genof[j] == g:
                    continue  # tree edge
                up = transversal(idx)
                uq = transversal(j)
                uq_inv = np.empty_like(uq)
                uq_inv[uq] = ident
                yield uq_inv[perms[g][up]]


def _mask(posset) -> int:
    m = 0
    for p in posset:
        m |= 1 << p
    return m


def _mask_maps(rs: RootSystem):
    """Per-generator map: positive index -> positive index of the image."""
    maps = []
    for perm in rs.simple_perms:
        maps.append([rs.pos_index(perm[p]) for p in range(rs.n_pos)])
    return maps


def _apply_mask(mm, mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << mm[low.bit_length() - 1]
        mask ^= low
    return out


def orbit_stabilizer(rs: RootSystem, posset, cap: int = 20_000_000) -> OrbitResult:
    """Orbit of a positive-root index set under W, with BFS tree for Schreier."""
    base = frozenset(posset)
    maskmaps = _mask_maps(rs)
    k0 = _mask(base)
    keys = {k0: 0}
    parent = [0]
    genof = [-1]
    frontier = [k0]
    while frontier:
        new = []
        for key in frontier:
            idx = keys[key]
            for g, mm in enumerate(maskmaps):
                img = _apply_mask(mm, key)
                if img not in keys:
                    keys[img] = len(parent)
                    parent.append(idx)
                    genof.append(g)
                    new.append(img)
                    if len(parent) > cap:
                        raise CapExceeded("orbit", f"subset {sorted(base)} in {rs.ctype.label()}")
        frontier = new
    return OrbitResult(rs, base, len(keys), keys, parent, genof)


# ---------------------------------------------------------------------------
# finite matrix groups on X_I
# ---------------------------------------------------------------------------


def _is_int_matrix(m):
    return all(isinstance(c, int) for row in m for c in row)


def _identity(dim):
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def generate_matrix_group(gens, dim, target=None, cap=1_000_000):
    """Closure of generator matrices; returns list of tuple-matrices.

    Integer generators take a numpy-batched path; exact field entries
    (Fraction/CycElt) use a plain dict BFS.  Raises CapExceeded beyond cap.
    """
    ident = _identity(dim)
    if not gens:
        return [ident]
    if all(_is_int_matrix(g) for g in gens):
        return _generate_int(gens, dim, target, cap)
    elems = {linalg.mat_key(ident): ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = linalg.mat_key(linalg.mat_mul(a, g))
                if p not in elems:
                    elems[p] = p
                    new.append(p)
                    if len(elems) > cap:
                        raise CapExceeded("group order", f"dim {dim}")
        frontier = new
        if target is not None and len(elems) == target:
            break
    return list(elems.values())


def _generate_int(gens, dim, target, cap):
    if dim == 0:
        return [()]
    gstack = np.array(gens, dtype=np.int64)
    ident = np.eye(dim, dtype=np.int64)
    elems = {ident.tobytes(): 0}
    mats = [ident]
    frontier = ident[None, :, :]
    while len(frontier):
        prod_ = np.einsum("fij,gjk->fgik", frontier, gstack).reshape(-1, dim, dim)
        assert np.abs(prod_).max() < 2**31, "unexpected entry growth in group closure"
        new = []
        for m in prod_:
            b = m.tobytes()
            if b not in elems:
                elems[b] = len(mats)
                mats.append(m)
                new.append(m)
                if len(mats) > cap:
                    raise CapExceeded("group order", f"dim {dim}")
        if target is not None and len(mats) >= target:
            break
        frontier = np.array(new) if new else np.empty((0, dim, dim), dtype=np.int64)
    return [tuple(tuple(int(x) for x in row) for row in m) for m in mats]


def _matrix_rank_is_one(m):
    """Exact rank-one test (some entry nonzero, all 2x2 minors zero)."""
    n = len(m)
    nz = [(i, j) for i in range(n) for j in range(n) if not scalars.is_zero(m[i][j])]
    if not nz:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    d = m[i][k] * m[j][l] - m[i][l] * m[j][k]
                    if not scalars.is_zero(d):
                        return False
    return True


@dataclass
class QuotientAction:
    """The image C_I of N_W(W_I) acting on X_I, enumerated when small."""

    nodes: frozenset[int]
    x_nodes: tuple[int, ...]
    dim: int
    order: int
    enumerated: bool
    elements: list | None = None
    _reflections: list | None = None

    def reflections(self):
        if self._reflections is None:
            assert self.enumerated
            self._reflections = [m for m in self.elements
                                 if _matrix_rank_is_one(linalg.mat_sub_identity(m))]
        return self._reflections

    def reflection_covectors(self):
        """Canonical projective normals of the reflection hyperplanes in X_I."""
        covs = []
        seen = set()
        for m in self.reflections():
            d = linalg.mat_sub_identity(m)
            row = next(r for r in d if any(not scalars.is_zero(c) for c in r))
            c = linalg.canonical_covector(row)
            if c not in seen:
                seen.add(c)
                covs.append(c)
        return covs

    def reflection_subgroup_order(self) -> int:
        refl = self.reflections()
        if not refl:
            return 1
        return len(generate_matrix_group(refl, self.dim, cap=self.order + 1))

    def is_reflection_group(self) -> bool:
        return self.enumerated and self.reflection_subgroup_order() == self.order

    def reflection_rank(self) -> int:
        covs = [list(c) for c in self.reflection_covectors()]
        return linalg.rank(covs) if covs else 0

    def acts_with_full_rank(self) -> bool:
        """C_I = C_I^r and the reflection rank equals dim X_I."""
        return self.is_reflection_group() and self.reflection_rank() == self.dim


def quotient_action(rs: RootSystem, nodes: frozenset[int], orbit: OrbitResult,
                    group_cap: int = 1_000_000) -> QuotientAction:
    """Enumerate the image of the stabilizer on X_I up to its known order."""
    x_nodes = tuple(j for j in range(rs.rank) if j not in nodes)
    dim = len(x_nodes)
    w_order = group_order(rs.ctype)
    wi_order = group_order(subsystem_type(rs, nodes))
    assert w_order % (orbit.size * wi_order) == 0, "orbit-stabilizer mismatch"
    target = w_order // (orbit.size * wi_order)

    if target > group_cap:
        return QuotientAction(nodes, x_nodes, dim, target, enumerated=False)

    ident = _identity(dim)
    elems = {linalg.mat_key(ident)}
    gens = []
    if target > 1:
        for perm in orbit.schreier_perms():
            mat = restrict_to_x(rs, perm, x_nodes)
            key = linalg.mat_key(mat)
            if key in elems:
                continue
            gens.append(mat)
            elems = set(map(linalg.mat_key,
                            generate_matrix_group(gens, dim, target=target,
                                                  cap=group_cap)))
            if len(elems) == target:
                break
        assert len(elems) == target, "Schreier stream ended before reaching |C_I|"
    return QuotientAction(nodes, x_nodes, dim, target, enumerated=True,
                          elements=sorted(elems, key=linalg.mat_sort_key))


def restrict_to_x(rs: RootSystem, perm, x_nodes):
    """Matrix of a stabilizer element on X_I in the coweight basis."""
    mv = rs.matrix_on_V(list(perm))
    sub = [[mv[i][j] for j in x_nodes] for i in x_nodes]
    # rows outside X_I must vanish on the X_I columns (w preserves X_I)
    for i in range(rs.rank):
        if i not in x_nodes:
            for j in x_nodes:
                assert scalars.is_zero(mv[i][j]), "element does not stabilize X_I"
    return tuple(tuple(r) for r in sub)


# ---------------------------------------------------------------------------
# Molien series and reflection degrees
# ---------------------------------------------------------------------------


def _h_from_powersums(ps, max_degree):
    """Complete homogeneous sums h_0..h_D from power sums p_1..p_D."""
    h = [Fraction(1)]
    for d in range(1, max_degree + 1):
        acc = sum((ps[k - 1] * h[d - k] for k in range(2, d + 1)), ps[0] * h[d - 1])
        h.append(scalars.div(acc, d) if isinstance(acc, scalars.CycElt) else Fraction(acc, d))
    return h


def molien_series(qa: QuotientAction, max_degree: int) -> list[int]:
    """dim of the degree-d invariants of C_I on X_I for d = 0..max_degree.

    Uses the power-sum form of Molien's formula: the coefficient of t^d in
    1/det(1-t g) is the complete homogeneous symmetric function h_d of the
    eigenvalues, recovered exactly from traces of powers of g.
    """
    if not qa.enumerated:
        raise CapExceeded("group order", "Molien needs an enumerated group")
    if qa.dim == 0:
        return [1] + [0] * max_degree
    if max_degree == 0:
        return [1]
    ints = all(_is_int_matrix(m) for m in qa.elements)
    total = [Fraction(0)] * (max_degree + 1)
    if ints:
        arr = np.array(qa.elements, dtype=np.int64)
        traces = np.empty((len(arr), max_degree), dtype=np.int64)
        p = arr
        traces[:, 0] = np.trace(p, axis1=1, axis2=2)
        for k in range(1, max_degree):
            p = np.einsum("gij,gjk->gik", p, arr)
            assert np.abs(p).max() < 2**31
            traces[:, k] = np.trace(p, axis1=1, axis2=2)
        vecs, counts = np.unique(traces, axis=0, return_counts=True)
        for vec, cnt in zip(vecs, counts):
            h = _h_from_powersums([int(x) for x in vec], max_degree)
            for d in range(max_degree + 1):
                total[d] += int(cnt) * h[d]
    else:
        for m in qa.elements:
            ps = []
            p = m
            for _ in range(max_degree):
                ps.append(sum((p[i][i] for i in range(1, qa.dim)), p[0][0]))
                p = linalg.mat_mul(p, m)
            h = _h_from_powersums(ps, max_degree)
            for d in range(max_degree + 1):
                total[d] += h[d]
    out = []
    for d, v in enumerate(total):
        val = scalars.div(v, qa.order)
        if isinstance(val, scalars.CycElt):
            val = val.to_rational()
        assert val.denominator == 1 and val >= 0, f"non-integral Molien coefficient at degree {d}"
        out.append(int(val))
    return out


class NotReflectionGroup(RuntimeError):
    """C_I does not act on X_I as a reflection group with polynomial invariants."""


def reflection_degrees(qa: QuotientAction) -> ExponentMultiset:
    """Fundamental degrees of C_I via Molien product matching.

    Fails loudly (NotReflectionGroup) when the invariant ring is not free,
    i.e. when C_I is not generated by its reflections on X_I.  Rank-deficient
    reflection groups succeed and report degree-1 generators.
    """
    if qa.dim == 0:
        return ExponentMultiset([])
    if not qa.is_reflection_group():
        raise NotReflectionGroup(
            f"|C^r| = {qa.reflection_subgroup_order()} < |C| = {qa.order}")
    n_refl = len(qa.reflections())
    bound = n_refl + qa.dim
    series = molien_series(qa, bound)
    degrees = []
    residual = list(series)
    for _ in range(qa.dim):
        d = next((k for k in range(1, bound + 1) if residual[k] != 0), None)
        if d is None or residual[d] < 0:
            raise NotReflectionGroup("Molien series does not factor")
        degrees.append(d)
        # multiply by (1 - t^d)
        for k in range(bound, d - 1, -1):
            residual[k] -= residual[k - d]
    if any(residual[1:]) or residual[0] != 1:
        raise NotReflectionGroup("Molien series does not factor")
    if prod(degrees) != qa.order or sum(d - 1 for d in degrees) != n_refl:
        raise NotReflectionGroup("degree certificate failed")
    return ExponentMultiset(degrees)


def ambient_exponents(rs: RootSystem, poset_cap: int | None = None) -> ExponentMultiset:
    """Exponents of W from the static table, cross-checked against the
    characteristic polynomial of the reflection arrangement when feasible."""
    table = ExponentMultiset(type_exponents(rs.ctype))
    if poset_cap:
        from . import arrangements
        arr = arrangements.reflection_arrangement(rs)
        try:
            cp = arrangements.characteristic_polynomial(arr, cap=poset_cap)
            computed = arrangements.exponents_if_free(cp)
        except CapExceeded:
            return table
        assert computed == table, "exponent table disagrees with Moebius computation"
    return table


def fix_space(rs: RootSystem, perm):
    """Basis of the fixed space of a group element (given as root perm)."""
    mv = rs.matrix_on_V(list(perm))
    return linalg.kernel_basis(linalg.mat_sub_identity(mv), rs.rank)
