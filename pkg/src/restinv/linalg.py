"""Small exact linear algebra helpers over int / Fraction / CycElt entries.

Everything here is field arithmetic with exact zero tests; no floating
point.  Matrices are lists of row tuples (or lists).  These routines are for
small dimensions (<= rank of the ambient group); bulk work elsewhere uses
integer numpy fast paths.
"""

from __future__ import annotations

from fractions import Fraction

from . import scalars


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return out


def mat_vec(a, v):
    return tuple(sum((a[i][j] * v[j] for j in range(1, len(v))), a[i][0] * v[0])
                 for i in range(len(a)))


def mat_sub_identity(a):
    out = []
    for i, row in enumerate(a):
        out.append(tuple(c - (1 if i == j else 0) for j, c in enumerate(row)))
    return out


def mat_key(a):
    return tuple(tuple(row) for row in a)


def scalar_sort_key(v):
    """Total order usable across int/Fraction/CycElt for deterministic output."""
    if isinstance(v, scalars.CycElt):
        return tuple(v.coeffs)
    return (Fraction(v),)


def mat_sort_key(a):
    return tuple(tuple(scalar_sort_key(c) for c in row) for row in a)


def row_reduce(rows):
    """Reduced row echelon form; returns (pivot_rows, pivot_cols)."""
    work = [list(r) for r in rows]
    pivots = []
    prows = []
    col_count = len(work[0]) if work else 0
    r = 0
    for col in range(col_count):
        piv = next((i for i in range(r, len(work))
                    if not scalars.is_zero(work[i][col])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        d = work[r][col]
        work[r] = [scalars.div(x, d) for x in work[r]]
        for i in range(len(work)):
            if i != r and not scalars.is_zero(work[i][col]):
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        prows.append(tuple(work[r]))
        r += 1
        if r == len(work):
            break
    return prows, pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[0])


def kernel_basis(rows, ncols=None):
    """Basis of the right kernel {v : rows @ v = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    prows, pivots = row_reduce(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for prow, pc in zip(prows, pivots):
            v[pc] = -prow[f]
        basis.append(tuple(v))
    return basis


def in_row_span(prows, pivots, vec) -> bool:
    """Membership of vec in the span of reduced rows."""
    v = list(vec)
    for prow, pc in zip(prows, pivots):
        c = v[pc]
        if not scalars.is_zero(c):
            v = [x - c * y for x, y in zip(v, prow)]
    return all(scalars.is_zero(x) for x in v)


def reduce_against(prows, pivots, vec):
    v = list(vec)
    for prow, pc in zip(prows, pivots):
        c = v[pc]
        if not scalars.is_zero(c):
            v = [x - c * y for x, y in zip(v, prow)]
    return v


def canonical_covector(vec):
    """Projective canonical form: scale so the first nonzero entry is 1.

    For all-integer vectors, divide by the gcd and normalize the leading
    sign instead, keeping entries integral.
    """
    if all(isinstance(c, int) for c in vec):
        from math import gcd
        g = 0
        for c in vec:
            g = gcd(g, abs(c))
        if g == 0:
            return None
        lead = next(c for c in vec if c)
        s = -1 if lead < 0 else 1
        return tuple(c // (g * s) for c in vec)
    lead = next((c for c in vec if not scalars.is_zero(c)), None)
    if lead is None:
        return None
    return tuple(scalars.div(c, lead) for c in vec)


def det(rows):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in rows]
    sign = 1
    acc = None
    for col in range(n):
        piv = next((i for i in range(col, n) if not scalars.is_zero(a[i][col])), None)
        if piv is None:
            z = a[0][0] - a[0][0]
            return z  # zero of the right kind
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        d = a[col][col]
        acc = d if acc is None else acc * d
        for i in range(col + 1, n):
            if not scalars.is_zero(a[i][col]):
                f = scalars.div(a[i][col], d)
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return acc * sign
