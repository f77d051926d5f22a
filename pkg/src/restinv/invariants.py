"""Sparse exact polynomials, power-sum invariants, restriction, Jacobian test.

The procedure implemented here follows the four classification steps used
for the hard exceptional cases: take the power sums f_d = sum over positive
roots of alpha^d at the degrees of C_I, rewrite them in the basis
{omega_s : s not in I} u {alpha_s : s in I} of V*, kill the alpha_s to land
in coordinates on X_I, and test whether the Jacobian determinant of the
restricted polynomials is nonzero.

Restriction is an algebra homomorphism, so the heavy path restricts each
root's linear form first and sums d-th powers on X_I directly; the generic
``to_mixed_basis`` / ``restrict_poly`` route is kept for small inputs and
cross-checked against the per-root route in the tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, scalars
from .coxtypes import type_degrees
from .groupcalc import ExponentMultiset, molien_series
from .rootsystems import RootSystem, invert_matrix


class SparsePoly:
    """Multivariate polynomial: map from exponent tuples to nonzero scalars."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not scalars.is_zero(c):
                    self.terms[tuple(e)] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, variables, c):
        p = cls(variables)
        if not scalars.is_zero(c):
            p.terms[(0,) * len(variables)] = c
        return p

    @classmethod
    def linear_form(cls, variables, coeffs):
        p = cls(variables)
        n = len(variables)
        for j, c in enumerate(coeffs):
            if not scalars.is_zero(c):
                e = [0] * n
                e[j] = 1
                p.terms[tuple(e)] = c
        return p

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        return (isinstance(other, SparsePoly)
                and self.variables == other.variables
                and self.terms == other.terms)

    def __repr__(self):
        items = sorted(self.terms.items())[:6]
        body = " + ".join(
            f"{c}*" + "*".join(f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            for e, c in items)
        more = "" if len(self.terms) <= 6 else f" ... ({len(self.terms)} terms)"
        return f"Poly[{body or '0'}{more}]"

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("polynomial variable mismatch")

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if scalars.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        p = SparsePoly(self.variables)
        p.terms = out
        return p

    def __neg__(self):
        p = SparsePoly(self.variables)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            out = SparsePoly(self.variables)
            if scalars.is_zero(other):
                return out
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if scalars.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        p = SparsePoly(self.variables)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        assert k >= 0
        out = SparsePoly.constant(self.variables, Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self, var_index: int):
        out = SparsePoly(self.variables)
        for e, c in self.terms.items():
            k = e[var_index]
            if k:
                e2 = list(e)
                e2[var_index] = k - 1
                out.terms[tuple(e2)] = c * k
        return out

    def evaluate(self, point):
        acc = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            acc = term if acc is None else acc + term
        return acc if acc is not None else Fraction(0)

    def substitute_linear(self, new_variables, rows):
        """Replace variable j by the linear form rows[j] over new_variables."""
        forms = [SparsePoly.linear_form(new_variables, r) for r in rows]
        pow_cache = [{0: SparsePoly.constant(new_variables, Fraction(1))}
                     for _ in forms]

        def power(j, k):
            cache = pow_cache[j]
            if k not in cache:
                cache[k] = power(j, k - 1) * forms[j]
            return cache[k]

        acc = SparsePoly(new_variables)
        for e, c in self.terms.items():
            term = SparsePoly.constant(new_variables, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            acc = acc + term
        return acc

    def dump(self):
        """Audit/golden-test format: sorted terms, scalars as integer data."""
        out = []
        for e, c in sorted(self.terms.items()):
            if isinstance(c, scalars.CycElt):
                val = {"m": c.ctx.m,
                       "coeffs": [[f.numerator, f.denominator] for f in c.coeffs]}
            else:
                f = Fraction(c)
                val = [f.numerator, f.denominator]
            out.append([list(e), val])
        return {"variables": list(self.variables), "terms": out}


# ---------------------------------------------------------------------------
# invariants and the restriction map
# ---------------------------------------------------------------------------


def alpha_variables(rs: RootSystem):
    return tuple(f"a{i+1}" for i in range(rs.rank))


def power_sum_invariant(rs: RootSystem, d: int) -> SparsePoly:
    """f_d = sum over positive roots of alpha^d, in simple-root covector
    coordinates.  Callers feed d from the degree list of W."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    variables = alpha_variables(rs)
    acc = SparsePoly(variables)
    for root in rs.positive_roots:
        acc = acc + SparsePoly.linear_form(variables, root) ** d
    return acc


@dataclass
class MixedBasis:
    """The basis {omega_s : s not in I} u {alpha_s : s in I} of V*."""

    nodes: frozenset[int]
    x_nodes: tuple[int, ...]     # s not in I, Bourbaki order
    i_nodes: tuple[int, ...]     # s in I, Bourbaki order
    forward: list                # rows: basis covectors in alpha-coordinates
    inverse: list                # alpha_j = sum_k inverse[j][k] * basis_k
    variables: tuple[str, ...]
    x_variables: tuple[str, ...]


def mixed_basis(rs: RootSystem, nodes: frozenset[int]) -> MixedBasis:
    x_nodes = tuple(j for j in range(rs.rank) if j not in nodes)
    i_nodes = tuple(sorted(nodes))
    rows = [list(rs.weights[j]) for j in x_nodes]
    for i in i_nodes:
        rows.append(list(rs.simple_roots[i]))
    inv = invert_matrix(rows)
    # alpha_j = sum_k M[j][k] b_k with M = forward^{-1}
    variables = tuple([f"w{j+1}" for j in x_nodes] + [f"a{i+1}" for i in i_nodes])
    return MixedBasis(nodes, x_nodes, i_nodes, rows, inv, variables,
                      variables[: len(x_nodes)])


def to_mixed_basis(mb: MixedBasis, p: SparsePoly) -> SparsePoly:
    """Rewrite a polynomial in alpha-variables in the mixed basis."""
    if len(p.variables) != len(mb.variables):
        raise ValueError("dimension mismatch")
    return p.substitute_linear(mb.variables, mb.inverse)


def restrict_poly(mb: MixedBasis, p: SparsePoly) -> SparsePoly:
    """Set alpha_s = 0 for s in I; result lives on the omega variables."""
    l = len(mb.x_nodes)
    out = SparsePoly(mb.x_variables)
    for e, c in p.terms.items():
        if any(e[l:]):
            continue
        out.terms[tuple(e[:l])] = c
    return out


def restricted_root_form(rs: RootSystem, mb: MixedBasis, root) -> SparsePoly:
    """rho(alpha): the root covector in mixed coordinates, alpha_I killed."""
    coords = []
    for k in range(len(mb.x_nodes)):
        acc = None
        for j, b in enumerate(root):
            if not scalars.is_zero(b):
                term = b * mb.inverse[j][k]
                acc = term if acc is None else acc + term
        coords.append(acc if acc is not None else Fraction(0))
    return SparsePoly.linear_form(mb.x_variables, coords)


def restricted_power_sum(rs: RootSystem, mb: MixedBasis, d: int) -> SparsePoly:
    """rho(f_d) computed root-by-root (restriction commutes with sums/powers)."""
    acc = SparsePoly(mb.x_variables)
    for root in rs.positive_roots:
        acc = acc + restricted_root_form(rs, mb, root) ** d
    return acc


def jacobian_determinant(polys, variables) -> SparsePoly:
    """Exact determinant of the Jacobian matrix, by cofactor expansion."""
    if len(polys) != len(variables):
        raise ValueError("need as many polynomials as variables")
    n = len(polys)
    if n == 0:
        return SparsePoly.constant((), Fraction(1))
    mat = [[p.derivative(j) for j in range(n)] for p in polys]
    return _poly_det(mat, list(range(n)), polys[0].variables)


def _poly_det(mat, cols, variables):
    if len(cols) == 1:
        return mat[len(mat) - 1][cols[0]]
    row = len(mat) - len(cols)
    acc = SparsePoly(variables)
    for k, c in enumerate(cols):
        minor = _poly_det(mat, cols[:k] + cols[k + 1:], variables)
        term = mat[row][c] * minor
        acc = acc + (term if k % 2 == 0 else -term)
    return acc


@dataclass
class JacobianResult:
    degrees: tuple[int, ...]
    restricted_invariants: list
    determinant: SparsePoly | None
    nonzero: bool
    witness_point: tuple | None = None
    witness_value: object = None

    def witness_monomial(self):
        if self.determinant is None or self.determinant.is_zero():
            return None
        e, c = sorted(self.determinant.terms.items())[0]
        return e, c


def _jacobian_eval(polys, variables, point):
    n = len(variables)
    rows = [[p.derivative(j).evaluate(point) for j in range(n)] for p in polys]
    return linalg.det(rows)


def surjectivity_jacobian_test(rs: RootSystem, nodes: frozenset[int],
                               degrees, seed: int = 2025,
                               want_certificate: bool = False):
    """Nonzero Jacobian of the restricted power sums at the C_I degrees.

    Returns (verdict, JacobianResult).  True certifies surjectivity; False
    only means this particular invariant family failed and must be reported
    as inconclusive, never as "not surjective".
    """
    degrees = sorted(degrees)
    mb = mixed_basis(rs, nodes)
    l = len(mb.x_nodes)
    if len(degrees) != l:
        raise ValueError(f"need {l} degrees for dim X_I = {l}, got {len(degrees)}")
    wdeg = set(type_degrees(rs.ctype))
    if any(d not in wdeg for d in degrees):
        raise ValueError("degrees must come from the degree list of W")
    if l == 0:
        return True, JacobianResult((), [], SparsePoly.constant((), Fraction(1)), True)
    restricted = [restricted_power_sum(rs, mb, d) for d in degrees]

    # probabilistic pre-check: a nonzero value certifies a nonzero polynomial
    rng = random.Random(seed)
    point = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(l))
    val = _jacobian_eval(restricted, mb.x_variables, point)
    nonzero_at_point = not scalars.is_zero(val)
    if nonzero_at_point and not want_certificate:
        return True, JacobianResult(tuple(degrees), restricted, None, True,
                                    point, val)
    det = jacobian_determinant(restricted, mb.x_variables)
    return (not det.is_zero(),
            JacobianResult(tuple(degrees), restricted, det, not det.is_zero(),
                           point, val))


def invariant_dimension(degrees, d: int) -> int:
    """Multisets of the generator degrees summing to d: the graded dimension
    of a free polynomial algebra on generators of those degrees."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    counts = [1] + [0] * d
    for g in degrees:
        for k in range(g, d + 1):
            counts[k] += counts[k - g]
    return counts[d]


def refute_surjectivity(rs: RootSystem, qa, bound: int = 30):
    """First degree d with dim C[V]^W_d < dim C[X_I]^{C_I}_d, or None.

    Returns (witness, exhausted): witness is the degree or None; exhausted
    distinguishes "no witness below the bound" from a found verdict.
    """
    wdeg = type_degrees(rs.ctype)
    mol = molien_series(qa, bound)
    for d in range(1, bound + 1):
        if invariant_dimension(wdeg, d) < mol[d]:
            return d, False
    return None, True
