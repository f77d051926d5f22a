"""Hyperplane arrangements: restriction, intersection posets, exponents.

Flats are enumerated level by level (codimension 0, 1, 2, ...).  A flat is
identified by the *mask* of arrangement hyperplanes containing it, which is
a complete invariant because every flat is an intersection of hyperplanes.
Children of a flat F are found from one batch of residuals: reduce all
covectors modulo the covector span of F; two hyperplanes produce the same
child iff their residuals are proportional.  This gives each child exactly
once per parent with one small elimination per flat.

The Moebius function is computed with the standard recursion
mu(F) = -sum of mu over the strict lower interval; lower intervals are
accumulated as ancestor id-sets along parent links, keeping only two levels
in memory at a time.

Integer covectors take a fraction-free numpy path (with overflow fallback
to exact Python integers); Fraction/CycElt covectors use generic exact
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import linalg, scalars
from .groupcalc import CapExceeded, ExponentMultiset


@dataclass(frozen=True)
class Arrangement:
    dim: int
    covectors: tuple[tuple, ...]  # canonical projective normals, deduplicated

    @property
    def n_hyperplanes(self) -> int:
        return len(self.covectors)

    def key(self) -> str:
        """Stable content key used for caching."""
        import hashlib
        h = hashlib.sha256()
        h.update(f"dim={self.dim}".encode())
        for c in self.covectors:
            h.update(repr(c).encode())
        return h.hexdigest()[:24]


def arrangement(dim: int, covectors) -> Arrangement:
    seen, out = set(), []
    for c in covectors:
        canon = linalg.canonical_covector(tuple(c))
        if canon is not None and canon not in seen:
            seen.add(canon)
            out.append(canon)
    return Arrangement(dim, tuple(out))


def reflection_arrangement(rs) -> Arrangement:
    """One hyperplane per positive root, in simple-root covector coordinates."""
    return arrangement(rs.rank, rs.positive_roots)


def restrict_arrangement(a: Arrangement, basis) -> Arrangement:
    """Restriction to the subspace spanned by ``basis`` (vectors in V).

    Each hyperplane not containing the subspace contributes the covector of
    its intersection, i.e. the original covector evaluated on the basis.
    """
    if not basis:
        raise ValueError("restriction needs a nonzero subspace")
    out = []
    for cov in a.covectors:
        restricted = tuple(
            sum((cov[j] * b[j] for j in range(1, len(b))), cov[0] * b[0])
            for b in basis)
        out.append(restricted)
    return arrangement(len(basis), out)


def restricted_root_arrangement(rs, nodes: frozenset[int]) -> Arrangement:
    """A(V,W)^{X_I}: drop the I-coordinates of every positive root."""
    x_nodes = [j for j in range(rs.rank) if j not in nodes]
    covs = [tuple(r[j] for j in x_nodes) for r in rs.positive_roots]
    return arrangement(len(x_nodes), covs)


def group_arrangement(qa) -> Arrangement:
    """Reflection arrangement of the enumerated quotient group on X_I."""
    if not qa.enumerated:
        raise CapExceeded("group order", "group arrangement needs enumeration")
    return arrangement(qa.dim, qa.reflection_covectors())


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]  # ascending, degree = ambient dim
    dim: int
    n_hyperplanes: int

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


class NonSplittingError(RuntimeError):
    """Characteristic polynomial does not factor over the integers."""


def exponents_if_free(cp: CharPoly) -> ExponentMultiset:
    """Roots of chi with multiplicity; exponents are bounded by #hyperplanes."""
    coeffs = list(cp.coeffs)
    roots = []
    while len(coeffs) > 1:
        for e in range(cp.n_hyperplanes + 1):
            # synthetic division by (t - e)
            acc = 0
            rem = coeffs[-1]
            quot = []
            for c in reversed(coeffs[:-1]):
                quot.append(rem)
                rem = c + e * rem
            if rem == 0:
                roots.append(e)
                coeffs = list(reversed(quot))
                break
        else:
            raise NonSplittingError(f"chi = {cp.coeffs} has a non-integer root")
    return ExponentMultiset(roots)


# ---------------------------------------------------------------------------
# intersection poset / characteristic polynomial
# ---------------------------------------------------------------------------


def characteristic_polynomial(a: Arrangement, cap: int = 5_000_000) -> CharPoly:
    if a.dim == 0 or not a.covectors:
        coeffs = [0] * a.dim + [1]
        return CharPoly(tuple(coeffs), a.dim, a.n_hyperplanes)
    if all(isinstance(c, int) for cov in a.covectors for c in cov):
        chi = _chi_int(a, cap)
    else:
        chi = _chi_generic(a, cap)
    return CharPoly(tuple(chi), a.dim, a.n_hyperplanes)


def _leading_canon_int(row):
    g = 0
    for c in row:
        g = gcd(g, abs(int(c)))
    if g == 0:
        return None
    lead = next(c for c in row if c)
    if lead < 0:
        g = -g
    return tuple(int(c) // g for c in row)


def _chi_int(a: Arrangement, cap: int):
    """Flat enumeration with fraction-free integer elimination (numpy)."""
    n = a.dim
    covs = np.array(a.covectors, dtype=np.int64)
    m = len(covs)
    chi = [0] * (n + 1)

    # level data: mask -> (rows, pivots) echelon; ancestors as sorted arrays
    level = {0: ([], [])}
    anc = {0: np.empty(0, dtype=np.int64)}
    ids = {0: 0}
    mu = {0: 1}
    chi[n] += 1
    next_id = 1
    total = 1

    while level:
        children: dict[int, tuple] = {}
        parents: dict[int, list[int]] = {}
        for mask, (rows, pivots) in level.items():
            live = [h for h in range(m) if not (mask >> h) & 1]
            if not live:
                continue
            R = covs[live].copy()
            overflow = False
            for row, p in zip(rows, pivots):
                d = int(row[p])
                R = R * d - np.outer(R[:, p], np.array(row, dtype=np.int64))
                if np.abs(R).max() > 2**60:
                    overflow = True
                    break
                g = np.gcd.reduce(np.abs(R), axis=1)
                g[g == 0] = 1
                R //= g[:, None]
            if overflow:
                R = _reduce_rows_exact(covs[live], rows, pivots)
                canon_rows = [_leading_canon_int(r) for r in R]
            else:
                # vectorized projective canonical form: gcd-normalized with
                # positive leading entry (gcd division already done above)
                lead = R[np.arange(len(R)), np.argmax(R != 0, axis=1)]
                assert not np.any(lead == 0), "hyperplane unexpectedly in flat span"
                R = np.where((lead < 0)[:, None], -R, R)
                canon_rows = [tuple(int(x) for x in r) for r in R]
            classes: dict[tuple, list[int]] = {}
            for ri, h in enumerate(live):
                classes.setdefault(canon_rows[ri], []).append(h)
            pid = ids[mask]
            for canon, hs in classes.items():
                cmask = mask
                for h in hs:
                    cmask |= 1 << h
                if cmask not in children:
                    piv = next(i for i, c in enumerate(canon) if c)
                    children[cmask] = (rows + [canon], pivots + [piv])
                    total += 1
                    if total > cap:
                        raise CapExceeded("poset", f"more than {cap} flats")
                parents.setdefault(cmask, []).append(pid)

        new_anc = {}
        newlevel = {}
        for cmask, ech in children.items():
            ps = parents[cmask]
            up = np.unique(np.concatenate(
                [anc[p] for p in ps] + [np.array(ps, dtype=np.int64)]))
            muval = -int(sum(mu[int(g)] for g in up))
            cid = next_id
            next_id += 1
            ids[cmask] = cid
            mu[cid] = muval
            chi[n - len(ech[0])] += muval
            new_anc[cid] = up
            newlevel[cmask] = ech
        anc = new_anc
        ids = {mask: ids[mask] for mask in newlevel}
        level = newlevel
    return chi


def _reduce_rows_exact(rows_np, ech_rows, pivots):
    """Exact integer fallback for the residual batch (no overflow)."""
    out = []
    for r in rows_np:
        v = [int(x) for x in r]
        for row, p in zip(ech_rows, pivots):
            d = int(row[p])
            c = v[p]
            if c:
                v = [d * x - c * int(y) for x, y in zip(v, row)]
                g = 0
                for x in v:
                    g = gcd(g, abs(x))
                if g > 1:
                    v = [x // g for x in v]
        out.append(v)
    return np.array(out, dtype=object)


def _chi_generic(a: Arrangement, cap: int):
    """Exact field version for Fraction/CycElt covectors."""
    n = a.dim
    covs = [tuple(c) for c in a.covectors]
    m = len(covs)
    chi = [0] * (n + 1)
    level = {0: ([], [])}
    anc = {0: frozenset()}
    ids = {0: 0}
    mu = {0: 1}
    chi[n] += 1
    next_id = 1
    total = 1

    while level:
        children: dict[int, tuple] = {}
        parents: dict[int, list[int]] = {}
        for mask, (rows, pivots) in level.items():
            live = [h for h in range(m) if not (mask >> h) & 1]
            classes: dict[tuple, list[int]] = {}
            for h in live:
                v = linalg.reduce_against(rows, pivots, covs[h])
                canon = linalg.canonical_covector(v)
                assert canon is not None
                classes.setdefault(canon, []).append(h)
            pid = ids[mask]
            for canon, hs in classes.items():
                cmask = mask
                for h in hs:
                    cmask |= 1 << h
                if cmask not in children:
                    piv = next(i for i, c in enumerate(canon) if not scalars.is_zero(c))
                    children[cmask] = (rows + [canon], pivots + [piv])
                    total += 1
                    if total > cap:
                        raise CapExceeded("poset", f"more than {cap} flats")
                parents.setdefault(cmask, []).append(pid)

        new_anc = {}
        newlevel = {}
        for cmask, ech in children.items():
            ps = parents[cmask]
            up = frozenset().union(*(anc[p] for p in ps)).union(ps)
            muval = -sum(mu[g] for g in up)
            cid = next_id
            next_id += 1
            ids[cmask] = cid
            mu[cid] = muval
            chi[n - len(ech[0])] += muval
            new_anc[cid] = up
            newlevel[cmask] = ech
        anc = new_anc
        ids = {mask: ids[mask] for mask in newlevel}
        level = newlevel
    return chi
