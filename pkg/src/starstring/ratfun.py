"""Rational functions, Stieltjes continued fractions, partial fractions.

A rational S0-function (positive simple poles and zeros, strictly
interlacing with the pole first, nonnegative limit at infinity) admits a
unique alternating continued fraction

    f(z) = a0 + 1/(-b1*z + 1/(a1 + 1/(-b2*z + ... + 1/(-bp*z + 1/ap))))

with a0 >= 0 and all other coefficients strictly positive.  ``cf_expand``
computes it by exact alternating extraction and doubles as the S0
certificate: any positivity or degree-pattern failure along the way proves
the input was not S0.  ``cf_to_ratfun`` folds it back exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadShape, DivisionByZero, InvariantViolation, IrrationalPole, NotStieltjes, RangeError
from .poly import ONE, Poly, ZERO, poly_extended_gcd, poly_gcd
from .rational import format_rational, parse_rational
from .roots import isolate_real_roots, sort_rootvals


class RationalFunction:
    """Quotient of two polynomials in canonical form.

    The denominator is monic and coprime to the numerator; the overall
    constant lives in the numerator, so equality is plain coefficient
    comparison.  The zero function is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        rf, _ = RationalFunction.make(num, den)
        object.__setattr__(self, "num", rf.num)
        object.__setattr__(self, "den", rf.den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def make(num, den):
        """Canonicalize num/den; returns (function, cancelled monic factor)."""
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        if num.is_zero:
            rf = object.__new__(RationalFunction)
            object.__setattr__(rf, "num", ZERO)
            object.__setattr__(rf, "den", ONE)
            return rf, ONE
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divexact(g)
            den = den.divexact(g)
        c = den.lc
        rf = object.__new__(RationalFunction)
        object.__setattr__(rf, "num", num.scale(1 / c))
        object.__setattr__(rf, "den", den.scale(1 / c))
        return rf, g

    @staticmethod
    def constant(c):
        return RationalFunction(Poly.constant(c), ONE)

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.is_zero:
            raise DivisionByZero("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero("inverse of the zero function")
        return RationalFunction(self.den, self.num)

    def eval(self, x):
        d = self.den.eval(x)
        if d == 0:
            raise DivisionByZero(f"pole at {x}")
        return self.num.eval(x) / d

    def __call__(self, x):
        return self.eval(x)

    def value_at_infinity(self):
        """Limit at infinity: 0 if deg num < deg den, lc ratio if equal, else None."""
        dn, dd = self.num.degree, self.den.degree
        if dn < dd:
            return Fraction(0)
        if dn == dd:
            return self.num.lc / self.den.lc
        return None


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, ONE)
    return RationalFunction.constant(Fraction(x))


def ratfun_normalize(num, den):
    """Reduce num/den to canonical form, keeping the cancelled common factor."""
    return RationalFunction.make(num, den)


# ---------------------------------------------------------------------------
# Stieltjes continued fractions


@dataclass(frozen=True)
class StieltjesCF:
    """Coefficients (a0..ap ; b1..bp) of the alternating continued fraction."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        b = tuple(Fraction(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(a) != len(b) + 1:
            raise InvariantViolation("need exactly one more constant than linear term")
        if a[0] < 0:
            raise InvariantViolation("leading constant must be >= 0")
        if len(a) == 1 and a[0] == 0:
            raise InvariantViolation("the zero function has no Stieltjes expansion")
        if any(x <= 0 for x in a[1:]) or any(x <= 0 for x in b):
            raise InvariantViolation("interior coefficients must be positive")

    @property
    def depth(self):
        return len(self.b)

    def to_json(self):
        return {"a": [format_rational(x) for x in self.a],
                "b": [format_rational(x) for x in self.b]}

    @staticmethod
    def from_json(obj):
        return StieltjesCF(
            tuple(parse_rational(x, "cf.a") for x in obj["a"]),
            tuple(parse_rational(x, "cf.b") for x in obj["b"]),
        )


def cf_expand(f):
    """Expand a rational S0-function into its Stieltjes continued fraction.

    Alternates between extracting the value at infinity (the next constant)
    and, after inversion, the exact linear term -b*z by polynomial division.
    Positivity of every extracted coefficient certifies the S0 property;
    any violation raises NotStieltjes.
    """
    if f.is_zero:
        raise NotStieltjes("the zero function is not S0")
    num, den = f.num, f.den
    a = []
    b = []
    while True:
        dn, dd = num.degree, den.degree
        if dn == dd:
            const = num.lc / den.lc
        elif dn == dd - 1:
            const = Fraction(0)
        else:
            raise NotStieltjes(f"degree pattern ({dn}, {dd}) is not S0")
        if a and const <= 0:
            raise NotStieltjes(f"nonpositive constant a_{len(a)} = {const}")
        if const < 0:
            raise NotStieltjes(f"negative limit at infinity: {const}")
        a.append(const)
        rem = num - den.scale(const)
        if rem.is_zero:
            break
        if rem.degree != den.degree - 1:
            raise NotStieltjes("unexpected cancellation while extracting a constant")
        # invert, then strip the linear part
        num, den = den, rem
        q, r = divmod(num, den)
        if q.degree != 1:
            raise NotStieltjes("pole at infinity is not simple")
        slope = q.coeffs[1]
        if slope >= 0:
            raise NotStieltjes(f"nonpositive mass coefficient b_{len(b) + 1} = {-slope}")
        b.append(-slope)
        # what is left after -b*z is the reciprocal of the next level
        num = den.scale(q.coeffs[0]) + r
        if num.is_zero:
            raise NotStieltjes("continued fraction terminated inside a linear level")
        num, den = den, num
    if a[0] == 0 and len(a) == 1:
        raise NotStieltjes("the zero function is not S0")
    return StieltjesCF(tuple(a), tuple(b))


def cf_to_ratfun(cf):
    """Fold a Stieltjes continued fraction back into a rational function."""
    p = cf.depth
    f = RationalFunction.constant(cf.a[p])
    for k in range(p - 1, -1, -1):
        # innermost first: f_k = a_k + 1 / (-b_{k+1} z + 1/f_{k+1})
        lin = RationalFunction(Poly([0, -cf.b[k]]), ONE)
        f = _as_rf(cf.a[k]) + (lin + f.inverse()).inverse()
    return f


def cf_tail(cf, i):
    """Tail (a_i..a_p ; b_{i+1}..b_p) of the continued fraction."""
    if not 0 <= i <= cf.depth:
        raise RangeError(f"tail index {i} out of range 0..{cf.depth}")
    return StieltjesCF(cf.a[i:], cf.b[i:])


# ---------------------------------------------------------------------------
# S0 validation report


@dataclass(frozen=True)
class S0Report:
    valid: bool
    issues: tuple
    a0: Fraction | None
    poles: tuple
    zeros: tuple

    def to_json(self):
        return {
            "valid": self.valid,
            "issues": list(self.issues),
            "a0": None if self.a0 is None else format_rational(self.a0),
            "poles": [_rootval_json(r) for r in self.poles],
            "zeros": [_rootval_json(r) for r in self.zeros],
        }


def _rootval_json(rv):
    if rv.is_rational:
        return {"value": format_rational(rv.rat)}
    lo, hi = rv.bounds()
    return {"interval": [format_rational(lo), format_rational(hi)]}


def validate_s0(f):
    """Diagnostic check of the rational S0 property by root isolation.

    Verifies that all poles and zeros are real, simple, positive, and
    strictly interlace starting with a pole; reports every violation.
    """
    issues = []
    if f.is_zero:
        return S0Report(False, ("function is identically zero",), None, (), ())
    a0 = f.value_at_infinity()
    if a0 is None:
        issues.append("numerator degree exceeds denominator degree")
        return S0Report(False, tuple(issues), None, (), ())
    if a0 < 0:
        issues.append(f"negative limit at infinity: {a0}")
    num, den = f.num, f.den
    for name, p in (("zero", num), ("pole", den)):
        if p.degree > 0 and poly_gcd(p, p.derivative()).degree > 0:
            issues.append(f"multiple {name} detected")
    zeros = [rv for rv, m in isolate_real_roots(num, None, None) for _ in range(m)]
    poles = [rv for rv, m in isolate_real_roots(den, None, None) for _ in range(m)]
    if len(zeros) != num.degree:
        issues.append("numerator has non-real zeros")
    if len(poles) != den.degree:
        issues.append("denominator has non-real zeros")
    zero_rv = Fraction(0)
    for name, lst in (("zero", zeros), ("pole", poles)):
        for rv in lst:
            if rv.compare(zero_rv) <= 0:
                issues.append(f"nonpositive {name}")
                break
    expected_zero_count = len(poles) if a0 > 0 else max(len(poles) - 1, 0)
    if not issues and len(zeros) != expected_zero_count:
        issues.append(
            f"expected {expected_zero_count} zeros for a0={a0}, found {len(zeros)}"
        )
    if not issues:
        # strict interlacing, pole first
        chain = []
        for p_rv, z_rv in zip(poles, zeros):
            chain.append(p_rv)
            chain.append(z_rv)
        chain.extend(poles[len(zeros):])
        for i in range(len(chain) - 1):
            if chain[i].compare(chain[i + 1]) >= 0:
                issues.append(f"interlacing fails at position {i}")
                break
    return S0Report(not issues, tuple(issues), a0, tuple(poles), tuple(zeros))


# ---------------------------------------------------------------------------
# partial fractions


@dataclass(frozen=True)
class PartialFractions:
    """f(z) = -linear_coeff*z + sum residue/(z - pole) + constant."""

    linear_coeff: Fraction
    terms: tuple  # ((pole, residue), ...) sorted by pole
    constant: Fraction

    def reassemble(self):
        f = RationalFunction(Poly([self.constant, -self.linear_coeff]), ONE)
        for pole, residue in self.terms:
            f = f + RationalFunction(Poly.constant(residue), Poly([-pole, 1]))
        return f

    def to_json(self):
        return {
            "linear_coeff": format_rational(self.linear_coeff),
            "terms": [
                {"pole": format_rational(p), "residue": format_rational(r)}
                for p, r in self.terms
            ],
            "constant": format_rational(self.constant),
        }


def _polynomial_part(f):
    """Split f into (A0, B, proper) with f = -A0*z + B + proper."""
    q, r = divmod(f.num, f.den)
    if q.degree > 1:
        raise BadShape(f"polynomial part has degree {q.degree} > 1")
    a0 = -q.coeffs[1] if q.degree == 1 else Fraction(0)
    const = q.coeffs[0] if q.degree >= 0 else Fraction(0)
    if a0 < 0:
        raise BadShape(f"linear part {-a0}*z grows upward, not a Nevanlinna shape")
    proper = RationalFunction(r, f.den)
    return a0, const, proper


def partial_fractions(f):
    """Exact partial fractions of f = -A0*z + sum A_i/(z - pole_i) + B.

    Poles must be simple and rational (exact residue extraction is refused
    otherwise), residues must come out positive.
    """
    a0, const, proper = _polynomial_part(f)
    den = proper.den
    pairs = []
    if den.degree > 0:
        dden = den.derivative()
        roots = isolate_real_roots(den, None, None)
        total = sum(m for _, m in roots)
        if total != den.degree:
            raise IrrationalPole("denominator has non-real poles")
        for rv, mult in roots:
            if mult > 1:
                raise BadShape("multiple pole")
            if not rv.is_rational:
                lo, hi = rv.bounds()
                raise IrrationalPole(f"irrational pole in ({lo}, {hi})")
            pole = rv.rat
            residue = proper.num.eval(pole) / dden.eval(pole)
            if residue <= 0:
                raise BadShape(f"nonpositive residue {residue} at pole {pole}")
            pairs.append((pole, residue))
    pairs.sort()
    pf = PartialFractions(a0, tuple(pairs), const)
    if pf.reassemble() != f:
        raise BadShape("partial fraction reassembly mismatch")
    return pf


def partial_fractions_at(f, poles):
    """Partial fractions when the simple rational poles are already known."""
    a0, const, proper = _polynomial_part(f)
    den = proper.den
    expected = Poly.from_linear_roots(poles)
    if expected != den:
        raise BadShape("declared poles do not match the reduced denominator")
    dden = den.derivative()
    pairs = []
    for pole in poles:
        residue = proper.num.eval(pole) / dden.eval(pole)
        if residue <= 0:
            raise BadShape(f"nonpositive residue {residue} at pole {pole}")
        pairs.append((Fraction(pole), residue))
    pairs.sort()
    return PartialFractions(a0, tuple(pairs), const)


def split_proper_by_factors(proper, factors):
    """Split a proper rational function over pairwise coprime denominator factors.

    Given proper = R/(D_1*...*D_k) with monic pairwise coprime D_j, returns
    the list of proper parts S_j/D_j with proper = sum_j S_j/D_j, exactly
    (Chinese remaindering via the extended Euclidean algorithm).
    """
    den = ONE
    for d in factors:
        den = den * d
    if den.monic() != proper.den:
        raise BadShape("factors do not multiply to the denominator")
    parts = []
    r = proper.num
    for d in factors:
        if d.degree == 0:
            parts.append(RationalFunction(ZERO, ONE))
            continue
        m = proper.den.divexact(d.monic())
        g, s, _ = poly_extended_gcd(m, d.monic())
        if g.degree != 0:
            raise BadShape("denominator factors are not pairwise coprime")
        # r/(m*d) = (r*s mod d)/d + ...; s is the inverse of m modulo d
        sj = divmod(r * s, d.monic())[1]
        parts.append(RationalFunction(sj, d.monic()))
    total = RationalFunction(ZERO, ONE)
    for part in parts:
        total = total + part
    if total != proper:
        raise BadShape("grouped partial fraction reassembly mismatch")
    return parts


# ---------------------------------------------------------------------------
# tail zero monotonicity helper (used by property tests and diagnostics)


def smallest_zero(f):
    """Smallest positive zero of a rational function, or None."""
    if f.is_zero or f.num.degree < 1:
        return None
    roots = isolate_real_roots(f.num, Fraction(0), None)
    if not roots:
        return None
    return sort_rootvals(roots)[0][0]
