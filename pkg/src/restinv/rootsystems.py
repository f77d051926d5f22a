"""Root systems for finite Coxeter types.

Coordinates and conventions, fixed once for the whole package:

* Covectors (roots, weights) are coordinate tuples in the simple-root basis
  of V*.  ``cartan[i][j]`` is the pairing of alpha_j against the coroot of
  alpha_i, so the reflection s_i sends a covector b to b' with only the
  i-th coordinate changed: ``b'_i = b_i - sum_j cartan[i][j] b_j``.
* Vectors in V are coordinate tuples in the basis {e_j} dual to the simple
  roots (the fundamental coweights): ``alpha_i(e_j) = delta_ij``.  A covector
  xi evaluates on v as the plain dot product.  Consequently the fixed
  subspace X_I of a parabolic is the coordinate subspace
  ``span{e_j : j not in I}``, and restricting a covector to X_I just drops
  its I-coordinates.
* The matrix of w on V (in the e-basis) is the transpose of the matrix of
  w^{-1} on V* (in the alpha-basis).

Crystallographic components have integer root coordinates; H3, H4 and
I2(m) components have coordinates in Z[2cos(pi/m)] realized as CycElt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars
from .coxtypes import (Component, CoxeterType, component, coxeter_matrix,
                       coxeter_number, num_positive_roots, simple_root_norms)


def _sort_key(root):
    key = []
    for c in root:
        if isinstance(c, scalars.CycElt):
            key.append(tuple(c.coeffs))
        else:
            key.append((Fraction(c),))
    return tuple(key)


class RootSystem:
    """Roots, Cartan data, weights and reflection permutations for a type."""

    def __init__(self, ctype: CoxeterType):
        self.ctype = ctype
        self.rank = ctype.rank
        comps = ctype.components
        self.node_component = []
        self.node_offset = []
        off = 0
        for ci, c in enumerate(comps):
            for _ in range(c.rank):
                self.node_component.append(ci)
                self.node_offset.append(off)
            off += c.rank

        # global bond matrix, norms, per-node scalar context
        n = self.rank
        self.coxmat = [[2] * n for _ in range(n)]
        for i in range(n):
            self.coxmat[i][i] = 1
        self.norms = []
        self.contexts = []
        off = 0
        for c in comps:
            cm = coxeter_matrix(c)
            ctx = None
            if c.family in ("H", "I2"):
                m = 5 if c.family == "H" else c.bond
                ctx = scalars.context(m)
            for i in range(c.rank):
                for j in range(c.rank):
                    self.coxmat[off + i][off + j] = cm[i][j]
            self.norms.extend(simple_root_norms(c))
            self.contexts.extend([ctx] * c.rank)
            off += c.rank

        self.cartan = self._build_cartan()
        self._close_roots()
        self.weights = self._fundamental_weights()

    # -- construction ---------------------------------------------------------

    def _zero(self, i):
        ctx = self.contexts[i]
        return 0 if ctx is None else ctx.zero()

    def _build_cartan(self):
        """cartan[i][j] = 2(alpha_j, alpha_i) / (alpha_i, alpha_i)."""
        n = self.rank
        cart = [[0] * n for _ in range(n)]
        for i in range(n):
            ctx = self.contexts[i]
            for j in range(n):
                if self.node_component[i] != self.node_component[j]:
                    continue
                m = self.coxmat[i][j]
                if ctx is None:
                    if i == j:
                        cart[i][j] = 2
                    elif m == 3:
                        cart[i][j] = -1
                    elif m in (4, 6):
                        # mixed lengths: the entry against the longer root is -1,
                        # against the shorter it picks up the length ratio (2 or 3)
                        cart[i][j] = -1 if self.norms[i] > self.norms[j] \
                            else -(self.norms[j] // self.norms[i])
                else:
                    if i == j:
                        cart[i][j] = ctx.element([2])
                    elif m == 2:
                        cart[i][j] = ctx.zero()
                    elif m == 3:
                        cart[i][j] = ctx.element([-1])
                    else:
                        cart[i][j] = -ctx.cos2()  # -2cos(pi/m), unit norms
        return cart

    def _reflect(self, i, root):
        c = sum((self.cartan[i][j] * root[j] for j in range(self.rank)),
                self._zero(i))
        new = list(root)
        new[i] = new[i] - c
        return tuple(new)

    def _close_roots(self):
        simples = []
        for i in range(self.rank):
            coords = [self._zero(j) for j in range(self.rank)]
            coords[i] = 1 if self.contexts[i] is None else self.contexts[i].one()
            simples.append(tuple(coords))
        self.simple_roots = simples

        seen = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for r in frontier:
                for i in range(self.rank):
                    s = self._reflect(i, r)
                    if s not in seen:
                        seen.add(s)
                        new.append(s)
            frontier = new

        pos = []
        for r in seen:
            lead = next(c for c in r if not scalars.is_zero(c))
            if scalars.sign(lead) > 0:
                pos.append(r)
        assert 2 * len(pos) == len(seen)
        pos.sort(key=_sort_key)
        self.positive_roots = pos
        self.n_pos = len(pos)
        self.roots = pos + [tuple(-c for c in r) for r in pos]
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        self.simple_index = [self.root_index[s] for s in simples]

        expected = sum(num_positive_roots(CoxeterType((c,))) for c in self.ctype.components)
        assert self.n_pos == expected, "reflection closure miscounted roots"

        self.simple_perms = []
        for i in range(self.rank):
            perm = [self.root_index[self._reflect(i, r)] for r in self.roots]
            self.simple_perms.append(perm)

    def _fundamental_weights(self):
        """omega_i as covectors: columns of the inverse Cartan matrix."""
        n = self.rank
        weights = [None] * n
        off = 0
        for c in self.ctype.components:
            k = c.rank
            block = [[self.cartan[off + i][off + j] for j in range(k)] for i in range(k)]
            inv = invert_matrix(block)
            for j in range(k):
                w = [self._zero(t) for t in range(n)]
                for i in range(k):
                    w[off + i] = inv[i][j]
                weights[off + j] = tuple(w)
            off += k
        return weights

    # -- basic queries ----------------------------------------------------------

    def pos_index(self, idx: int) -> int:
        """Canonical positive index of a root index (folds negatives)."""
        return idx if idx < self.n_pos else idx - self.n_pos

    def coroot_vector(self, i: int):
        """alpha_i^vee as a vector in V (e-coordinates): row i of the Cartan."""
        return tuple(self.cartan[i])

    def apply_perm_to_posset(self, perm, posset):
        return frozenset(self.pos_index(perm[p]) for p in posset)

    def matrix_on_Vstar(self, perm):
        """Matrix A with w(alpha_j) = sum_k A[k][j] alpha_k."""
        cols = [self.roots[perm[self.simple_index[j]]] for j in range(self.rank)]
        return [[cols[j][k] for j in range(self.rank)] for k in range(self.rank)]

    def matrix_on_V(self, perm):
        """Matrix of w on V in the e-basis: transpose of w^{-1} on V*."""
        inv = [0] * len(perm)
        for a, b in enumerate(perm):
            inv[b] = a
        a = self.matrix_on_Vstar(inv)
        return [[a[j][k] for j in range(self.rank)] for k in range(self.rank)]

    # -- parabolic data -----------------------------------------------------------

    def phi_I_positive(self, nodes: frozenset[int]) -> tuple[int, ...]:
        """Indices of positive roots supported on the node subset."""
        out = []
        for k, r in enumerate(self.positive_roots):
            if all(scalars.is_zero(c) or (j in nodes) for j, c in enumerate(r)):
                out.append(k)
        return tuple(out)

    def fixed_subspace(self, nodes: frozenset[int]):
        """Basis of X_I = common fixed space of {s_i : i in I} (e-coordinates)."""
        basis = []
        for j in range(self.rank):
            if j not in nodes:
                v = [self._zero(t) for t in range(self.rank)]
                v[j] = 1 if self.contexts[j] is None else self.contexts[j].one()
                basis.append(tuple(v))
        return basis

    def restrict_covector(self, covector, nodes: frozenset[int]):
        """Restriction of a covector to X_I: drop the I-coordinates."""
        return tuple(c for j, c in enumerate(covector) if j not in nodes)


def invert_matrix(m):
    """Exact inverse by Gauss-Jordan over whatever field the entries live in."""
    n = len(m)
    a = [list(row) for row in m]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    if n and isinstance(a[0][0], scalars.CycElt):
        ctx = a[0][0].ctx
        inv = [[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not scalars.is_zero(a[r][col])), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [scalars.div(x, d) for x in a[col]]
        inv[col] = [scalars.div(x, d) for x in inv[col]]
        for r in range(n):
            if r != col and not scalars.is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


# ---------------------------------------------------------------------------
# subsystem typing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsystemComponent:
    nodes: tuple[int, ...]
    ctype: Component
    short: bool  # all roots short in a multi-length ambient component


def _graph_components(nodes, coxmat):
    nodes = sorted(nodes)
    seen, comps = set(), []
    for start in nodes:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in nodes:
                if v not in seen and coxmat[u][v] > 2:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def subsystem_components(rs: RootSystem, nodes: frozenset[int]) -> list[SubsystemComponent]:
    """Decompose the induced diagram on a node subset into typed components."""
    out = []
    for comp in _graph_components(nodes, rs.coxmat):
        size = len(comp)
        bonds = [rs.coxmat[i][j] for i in comp for j in comp if i < j and rs.coxmat[i][j] > 2]
        maxbond = max(bonds, default=2)
        norms = [rs.norms[i] for i in comp]
        ambient_comp = rs.ctype.components[rs.node_component[comp[0]]]
        ambient_norms = simple_root_norms(ambient_comp)
        multilen = len(set(ambient_norms)) > 1
        short = multilen and all(nm == min(ambient_norms) for nm in norms)

        if maxbond >= 5:
            if maxbond == 5:
                ct = component("I2", 2, 5) if size == 2 else component("H", size)
            elif maxbond == 6:
                ct = component("G", 2) if ambient_comp.family == "G" else component("I2", 2, 6)
            else:
                ct = component("I2", 2, maxbond)
        elif maxbond == 4:
            if size == 2:
                ct = component("B", 2)
            else:
                n_short = sum(1 for nm in norms if nm == min(norms))
                if n_short == 1:
                    ct = component("B", size)
                elif size - n_short == 1:
                    ct = component("C", size)
                else:
                    assert size == 4 and n_short == 2
                    ct = component("F", 4)
        else:
            degs = {u: sum(1 for v in comp if v != u and rs.coxmat[u][v] > 2) for u in comp}
            branch_nodes = [u for u in comp if degs[u] == 3]
            if not branch_nodes:
                ct = component("A", size)
            else:
                assert len(branch_nodes) == 1, "unexpected diagram shape"
                b = branch_nodes[0]
                lengths = []
                for v in comp:
                    if v != b and rs.coxmat[b][v] > 2:
                        ln, prev, cur = 1, b, v
                        while True:
                            nxt = [w for w in comp if w != prev and w != cur
                                   and rs.coxmat[cur][w] > 2]
                            if not nxt:
                                break
                            prev, cur = cur, nxt[0]
                            ln += 1
                        lengths.append(ln)
                lengths.sort()
                if lengths[0] == 1 and lengths[1] == 1:
                    ct = component("D", size)
                else:
                    ct = component("E", size)
        out.append(SubsystemComponent(tuple(comp), ct, short))
    return out


def subsystem_type(rs: RootSystem, nodes: frozenset[int]) -> CoxeterType:
    comps = subsystem_components(rs, nodes)
    return CoxeterType(tuple(sorted(c.ctype for c in comps)))


def subsystem_label(rs: RootSystem, nodes: frozenset[int]) -> str:
    """Canonical label like ``"A1+2A2~"``; ``~`` marks all-short components."""
    comps = subsystem_components(rs, nodes)
    names = []
    for c in comps:
        nm = c.ctype.label()
        if c.short:
            nm += "~"
        names.append(nm)
    names.sort()
    out, i = [], 0
    while i < len(names):
        j = i
        while j < len(names) and names[j] == names[i]:
            j += 1
        mult = j - i
        out.append(names[i] if mult == 1 else f"{mult}{names[i]}")
        i = j
    return "+".join(out) if out else "empty"


def build_root_system(ctype: CoxeterType) -> RootSystem:
    return RootSystem(ctype)
