"""Dense univariate polynomials over exact rationals.

Coefficients are stored lowest degree first; the zero polynomial is the
empty tuple.  All arithmetic is exact.  Degrees stay at desk scale
(<= ~60), so the dense representation is the simple and sufficient choice.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd, lcm as _ilcm

from .errors import DivisionByZero


def _coerce(c):
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Immutable dense polynomial with Fraction coefficients (lowest first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(cs[:n]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c):
        return Poly([c])

    @staticmethod
    def from_linear_roots(roots):
        """Product of (z - r) over the given rationals."""
        p = ONE
        for r in roots:
            p = p * Poly([-Fraction(r), 1])
        return p

    @staticmethod
    def from_scaled_roots(roots):
        """Product of (1 - z/r) over the given nonzero rationals."""
        p = ONE
        for r in roots:
            p = p * Poly([1, -1 / Fraction(r)])
        return p

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        """Leading coefficient (of the zero polynomial: 0)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c):
        c = _coerce(c)
        return Poly([c * x for x in self.coeffs])

    def __pow__(self, n):
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Exact division with remainder: self = q*other + r, deg r < deg other."""
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lc = other.lc
        q = [Fraction(0)] * max(len(r) - d, 0)
        for i in range(len(r) - 1 - d, -1, -1):
            f = r[i + d] / lc
            if f == 0:
                continue
            q[i] = f
            for j, c in enumerate(other.coeffs):
                r[i + j] -= f * c
        return Poly(q), Poly(r[:d])

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise DivisionByZero("inexact polynomial division")
        return q

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        """Horner evaluation at an exact rational point."""
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.eval(x)

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(1 / self.lc)

    def primitive_int(self):
        """Integer coefficient list with content 1, same sign and roots.

        Returns (int_coeffs, scale) with self = scale * Poly(int_coeffs).
        """
        if self.is_zero:
            return [], Fraction(0)
        den = _ilcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _igcd(g, abs(v))
        ints = [v // g for v in ints]
        return ints, Fraction(g, den)


ZERO = Poly()
ONE = Poly([1])
Z = Poly([0, 1])


def poly_gcd(p, q):
    """Monic greatest common divisor; gcd(p, 0) = monic(p)."""
    if p.is_zero and q.is_zero:
        raise DivisionByZero("gcd(0, 0) undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, divmod(a, b)[1]
    return a.monic()


def poly_extended_gcd(p, q):
    """Extended Euclid: returns (g, s, t) monic g with s*p + t*q = g."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero:
        raise DivisionByZero("gcd(0, 0) undefined")
    c = r0.lc
    return r0.monic(), s0.scale(1 / c), t0.scale(1 / c)


def squarefree_factor(p):
    """Square-free decomposition (Yun): list of (monic factor, multiplicity).

    The product of factor**multiplicity equals p up to a constant; factors
    are pairwise coprime and square-free, sorted by multiplicity.
    """
    if p.is_zero:
        raise DivisionByZero("square-free factorization of zero")
    f = p.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    g = poly_gcd(f, df)
    if g.degree == 0:
        return [(f, 1)]
    out = []
    c = f.divexact(g)
    d = df.divexact(g) - c.derivative()
    i = 1
    while c.degree > 0:
        s = poly_gcd(c, d)
        if s.degree > 0:
            out.append((s.monic(), i))
        c = c.divexact(s)
        d = d.divexact(s) - c.derivative()
        i += 1
    return out


def squarefree_part(p):
    """Product of the distinct irreducible factors of p, monic."""
    part = ONE
    for f, _ in squarefree_factor(p):
        part = part * f
    return part.monic() if not part.is_zero else part
