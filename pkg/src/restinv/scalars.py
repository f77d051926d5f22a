"""Exact coefficient arithmetic: rationals and real cyclotomic extensions.

Rational scalars are plain ``int`` / ``fractions.Fraction`` values.  For the
non-crystallographic Coxeter types (H3, H4, I2(m)) root coordinates live in
the ring Z[2cos(pi/m)], which we realize inside the cyclotomic field
Q[x]/(Phi_{2m}(x)) with the embedding x -> exp(i*pi/m).  Elements are dense
coefficient vectors of length phi(2m).

All zero tests and equality tests are exact.  Floating point enters only as
a debug/sanity channel (``embed``) and inside the *certified* sign test,
which uses an algebraic-integer norm bound to pick a provably sufficient
working precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

import mpmath

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "CycElt"]

# ---------------------------------------------------------------------------
# integer polynomial helpers (dense, low degree first)
# ---------------------------------------------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num, den):
    """Divide integer polynomials, requiring an exact integer quotient."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        quot[k - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    assert all(c == 0 for c in num[:dd]), "non-exact polynomial division"
    return quot


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial Phi_n as an integer coefficient tuple.

    Computed by exact division of x^n - 1 by the Phi_d for proper divisors d,
    recursing from Phi_1 = x - 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = (1,)
    for d in range(1, n):
        if n % d == 0:
            den = tuple(_poly_mul(den, cyclotomic_polynomial(d)))
    return tuple(_poly_divmod_exact(num, den))


def cyclotomic_modulus(m: int) -> tuple[int, ...]:
    """Phi_{2m}, the minimal polynomial of exp(i*pi/m); requires m >= 3."""
    if m < 3:
        raise ValueError("cyclotomic context needs bond parameter m >= 3")
    return cyclotomic_polynomial(2 * m)


def _euler_phi(n: int) -> int:
    out = 1
    p, nn = 2, n
    while p * p <= nn:
        if nn % p == 0:
            e = 0
            while nn % p == 0:
                nn //= p
                e += 1
            out *= (p - 1) * p ** (e - 1)
        p += 1
    if nn > 1:
        out *= nn - 1
    return out


# ---------------------------------------------------------------------------
# cyclotomic contexts and elements
# ---------------------------------------------------------------------------

_CONTEXTS: dict[int, "CyclotomicContext"] = {}


def context(m: int) -> "CyclotomicContext":
    """Shared context for Q(zeta_{2m}); contexts are cached per m."""
    ctx = _CONTEXTS.get(m)
    if ctx is None:
        ctx = CyclotomicContext(m)
        _CONTEXTS[m] = ctx
    return ctx


class CyclotomicContext:
    """The field Q[x]/(Phi_{2m}(x)) with x embedded as exp(i*pi/m)."""

    def __init__(self, m: int):
        if m < 3:
            raise ValueError("need m >= 3")
        self.m = m
        self.n = 2 * m
        self.modulus = cyclotomic_modulus(m)
        self.degree = len(self.modulus) - 1
        assert self.degree == _euler_phi(self.n)
        # x^n - 1 must reduce to zero mod Phi_{2m} (divisibility check).
        xn = [0] * (self.n + 1)
        xn[0], xn[self.n] = -1, 1
        rem = self._reduce_int(xn)
        assert all(c == 0 for c in rem)
        # x^(deg+k) mod Phi, extended on demand; entry k covers x^(deg+k).
        self._powtab: list[tuple[int, ...]] = [tuple(-c for c in self.modulus[:-1])]

    def _xpow(self, k: int) -> tuple[int, ...]:
        """Reduced coefficients of x^(degree + k), k >= 0."""
        while len(self._powtab) <= k:
            cur = [0] + list(self._powtab[-1])
            lead = cur.pop()
            if lead:
                for i, c in enumerate(self.modulus[:-1]):
                    cur[i] -= lead * c
            self._powtab.append(tuple(cur))
        return self._powtab[k]

    def _reduce_int(self, coeffs):
        cs = list(coeffs)
        for k in range(len(cs) - 1, self.degree - 1, -1):
            c = cs[k]
            if c:
                for j, mj in enumerate(self.modulus[:-1]):
                    cs[k - self.degree + j] -= c * mj
            cs.pop()
        return cs

    def element(self, coeffs) -> "CycElt":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            head, tail = cs[: self.degree], cs[self.degree :]
            for k, c in enumerate(tail):
                if c:
                    for j, pj in enumerate(self._xpow(k)):
                        head[j] += c * pj
            cs = head
        else:
            cs = cs + [Fraction(0)] * (self.degree - len(cs))
        return CycElt(self, tuple(cs))

    def zero(self) -> "CycElt":
        return self.element([])

    def one(self) -> "CycElt":
        return self.element([1])

    def gen(self) -> "CycElt":
        """The class of x, i.e. the root of unity exp(i*pi/m)."""
        return self.element([0, 1])

    def cos2(self) -> "CycElt":
        """x + x^{-1} = 2*cos(pi/m).  Uses x^{-1} = x^{2m-1}."""
        xinv = [0] * self.n
        xinv[self.n - 1] = 1
        return self.element(xinv) + self.gen()

    def embed_root(self, prec: int = 53):
        with mpmath.workprec(prec):
            return mpmath.exp(1j * mpmath.pi / self.m)

    def __repr__(self):
        return f"CyclotomicContext(m={self.m}, degree={self.degree})"


class CycElt:
    """Element of a CyclotomicContext: immutable dense coefficient vector."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: CyclotomicContext, coeffs: tuple[Fraction, ...]):
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = None

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycElt):
            if other.ctx is not self.ctx:
                raise ValueError("cyclotomic context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.element([other])
        return None

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.ctx, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.ctx, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElt(self.ctx, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = self.ctx.degree
        out = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        head = out[:deg]
        for k, c in enumerate(out[deg:]):
            if c:
                for j, pj in enumerate(self.ctx._xpow(k)):
                    head[j] += c * pj
        return CycElt(self.ctx, tuple(head))

    __rmul__ = __mul__

    def inverse(self) -> "CycElt":
        """Inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        # r0 = modulus, r1 = self; track t with t*self = r (mod modulus)
        r0 = [Fraction(c) for c in self.ctx.modulus]
        r1 = list(self.coeffs)
        while r1 and not r1[-1]:
            r1.pop()
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while True:
            if len(r1) == 1:
                c = r1[0]
                return self.ctx.element([ti / c for ti in t1])
            # divide r0 by r1
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for k in range(len(r) - 1, len(r1) - 2, -1):
                c = r[k] / r1[-1]
                q[k - (len(r1) - 1)] = c
                if c:
                    for j, dj in enumerate(r1):
                        r[k - (len(r1) - 1) + j] -= c * dj
            while r and not r[-1]:
                r.pop()
            if not r:
                raise ArithmeticError("element not invertible mod Phi (modulus not coprime?)")
            qt = _polyfrac_mul(q, t1)
            tnew = _polyfrac_sub(t0, qt)
            r0, r1, t0, t1 = r1, r, t1, tnew

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("cyclotomic division by zero")
            return CycElt(self.ctx, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycElt):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.ctx.m, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- numeric channel -------------------------------------------------------

    def embed(self, prec: int = 53):
        """Complex value under x -> exp(i*pi/m).  Sanity channel only."""
        with mpmath.workprec(prec):
            z = self.ctx.embed_root(prec)
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpq(c.numerator, c.denominator)
            return complex(acc)

    def sign(self) -> int:
        """Certified sign of a real element.

        Zero is decided exactly.  For nonzero values, scale to an algebraic
        integer v; every archimedean conjugate satisfies |v_sigma| <= sum of
        |coefficients|, so |v| >= 1 / M^(deg-1) with M that bound.  Evaluating
        with enough precision then determines the sign rigorously.
        """
        if self.is_zero():
            return 0
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        bound = sum(abs(c) for c in ints)
        # |v| >= bound**-(degree-1); work with margin
        digits = (self.ctx.degree - 1) * len(str(bound)) + 25
        with mpmath.workdps(digits):
            z = mpmath.exp(1j * mpmath.pi / self.ctx.m)
            acc = mpmath.mpc(0)
            for c in reversed(ints):
                acc = acc * z + c
            assert abs(acc.imag) < mpmath.mpf(10) ** (-10), "sign() needs a real element"
            sep = mpmath.mpf(bound) ** (-(self.ctx.degree - 1))
            assert abs(acc.real) > sep / 2, "precision shortfall in certified sign"
            return 1 if acc.real > 0 else -1

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc(m={self.ctx.m}; {body})"


def _polyfrac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _polyfrac_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# ---------------------------------------------------------------------------
# generic scalar helpers (work on int / Fraction / CycElt alike)
# ---------------------------------------------------------------------------


def is_zero(v: Scalar) -> bool:
    if isinstance(v, CycElt):
        return v.is_zero()
    return v == 0


def inv(v: Scalar) -> Scalar:
    if isinstance(v, CycElt):
        return v.inverse()
    if v == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(1) / Fraction(v)


def div(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, CycElt) or isinstance(b, CycElt):
        if isinstance(a, CycElt):
            return a / b
        return b.__rtruediv__(a)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(a) / Fraction(b)


def as_fraction(v: Scalar) -> Fraction:
    if isinstance(v, CycElt):
        return v.to_rational()
    return Fraction(v)


def embed(v: Scalar) -> complex:
    if isinstance(v, CycElt):
        return v.embed()
    return complex(Fraction(v))


def sign(v: Scalar) -> int:
    if isinstance(v, CycElt):
        return v.sign()
    return (v > 0) - (v < 0)
