"""Exact real-root isolation and comparison.

Roots of rational polynomials are located with Sturm sequences computed on
the square-free part (integer arithmetic with primitive pseudo-remainders,
so coefficient growth stays tame).  Rational roots are recovered exactly via
a smallest-denominator search inside each isolating interval; the remaining
roots are kept as (square-free factor, isolating interval) pairs that can be
refined and compared without ever guessing a strict inequality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd as _igcd

from .errors import DivisionByZero, NotIsolating
from .poly import Poly, squarefree_factor, squarefree_part

# ---------------------------------------------------------------------------
# integer polynomial helpers


def _int_primitive(coeffs):
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    g = 0
    for c in cs:
        g = _igcd(g, abs(c))
    return [c // g for c in cs]


def _int_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _sign_at(coeffs, x):
    """Sign of the polynomial at the rational x, by homogeneous evaluation."""
    if not coeffs:
        return 0
    p, q = x.numerator, x.denominator
    acc = coeffs[-1]
    qpow = 1
    for i in range(len(coeffs) - 2, -1, -1):
        qpow *= q
        acc = acc * p + coeffs[i] * qpow
    return (acc > 0) - (acc < 0)


def _prem_signed(a, b):
    """Pseudo-remainder r with lc(b)**d * a = q*b + r, and the sign of lc(b)**d."""
    da, db = len(a) - 1, len(b) - 1
    delta = da - db + 1
    lcb = b[-1]
    r = list(a)
    steps = 0
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if not r or dr < db:
            break
        head = r[-1]
        e = dr - db
        r = [lcb * c for c in r]
        for j, cb in enumerate(b):
            r[e + j] -= head * cb
        steps += 1
    if delta > steps:
        f = lcb ** (delta - steps)
        r = [f * c for c in r]
    sgn = 1 if (lcb > 0 or delta % 2 == 0) else -1
    return r, sgn


def _sturm_chain(coeffs):
    chain = [_int_primitive(coeffs)]
    d = _int_primitive(_int_derivative(chain[0]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r, sgn = _prem_signed(chain[-2], chain[-1])
        r = _int_primitive(r)
        if not r:
            break
        if sgn > 0:
            r = [-c for c in r]
        chain.append(r)
    return chain


def _int_poly_gcd(a, b):
    """Primitive gcd of integer polynomials via pseudo-remainders."""
    a, b = _int_primitive(a), _int_primitive(b)
    while b:
        if len(b) == 1:
            return [1]
        r, _ = _prem_signed(a, b)
        a, b = b, _int_primitive(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _variations_at(chain, x):
    return _variations([_sign_at(c, x) for c in chain])


def _count_open(chain, lo, hi):
    """Number of distinct roots in the open interval; endpoints must not be roots."""
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def _cauchy_bound(coeffs):
    lead = abs(coeffs[-1])
    m = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else 0
    return Fraction(1) + Fraction(m, lead)


# ---------------------------------------------------------------------------
# simplest rational in an open interval


def _floor(x):
    return x.numerator // x.denominator


def simplest_in_open(lo, hi):
    """The rational with the smallest denominator in the open interval (lo, hi).

    ``hi=None`` means +infinity.  Stern-Brocot descent on the continued
    fraction of the endpoints.
    """
    fl = _floor(lo)
    cand = fl + 1
    if hi is None or cand < hi:
        return Fraction(cand)
    lo2 = 1 / (hi - fl)
    hi2 = None if lo == fl else 1 / (lo - fl)
    y = simplest_in_open(lo2, hi2)
    return fl + 1 / y


def _rational_root_in(ints, lo, hi):
    """Exact rational root of the square-free integer polynomial in (lo, hi).

    The interval must isolate one root.  Returns None when that root is
    certified irrational (any rational root's denominator divides the
    leading coefficient, so the search has a hard stopping bound).
    """
    bound = abs(ints[-1])
    while True:
        cand = simplest_in_open(lo, hi)
        if _sign_at(ints, cand) == 0:
            return cand
        if cand.denominator > bound:
            return None
        mid = (lo + hi) / 2
        s = _sign_at(ints, mid)
        if s == 0:
            return mid
        if s * _sign_at(ints, lo) < 0:
            hi = mid
        else:
            lo = mid


# ---------------------------------------------------------------------------
# algebraic reals


def _cmp(a, b):
    return (a > b) - (a < b)


class RootVal:
    """One real algebraic number, exactly.

    Either a rational (``rat`` set) or the unique root of a square-free
    integer polynomial inside an isolating interval with a strict sign
    change at the endpoints.  Comparisons are exact: equality is decided
    through polynomial gcds, order through interval refinement.
    """

    __slots__ = ("rat", "ints", "factor", "lo", "hi")

    def __init__(self, rat=None, ints=None, factor=None, lo=None, hi=None):
        self.rat = rat
        self.ints = ints
        self.factor = factor
        self.lo = lo
        self.hi = hi

    @staticmethod
    def rational(value):
        return RootVal(rat=Fraction(value))

    @staticmethod
    def algebraic(factor, lo, hi):
        ints = factor.primitive_int()[0]
        rv = RootVal(ints=ints, factor=factor.monic(), lo=lo, hi=hi)
        if _sign_at(ints, lo) * _sign_at(ints, hi) >= 0:
            raise NotIsolating("endpoints do not bracket a sign change")
        return rv

    @property
    def is_rational(self):
        return self.rat is not None

    def bounds(self):
        """Current enclosing interval (degenerate for rationals)."""
        if self.rat is not None:
            return self.rat, self.rat
        return self.lo, self.hi

    def _refine_once(self):
        mid = (self.lo + self.hi) / 2
        s = _sign_at(self.ints, mid)
        if s == 0:
            # unclassified rational root: collapse to exact form
            self.rat = mid
            self.lo = mid
            self.hi = mid
        elif s * _sign_at(self.ints, self.lo) < 0:
            self.hi = mid
        else:
            self.lo = mid

    def refine_to_width(self, width):
        if self.rat is None:
            while self.hi - self.lo > width:
                self._refine_once()

    def approx(self):
        if self.rat is not None:
            return float(self.rat)
        self.refine_to_width(Fraction(1, 1 << 40))
        return float((self.lo + self.hi) / 2)

    def _compare_rational(self, r):
        if self.rat is not None:
            return _cmp(self.rat, r)
        if self.lo < r < self.hi and _sign_at(self.ints, r) == 0:
            return 0
        while self.lo < r < self.hi:
            self._refine_once()
        return 1 if r <= self.lo else -1

    def compare(self, other):
        if not isinstance(other, RootVal):
            other = RootVal.rational(other)
        if other.rat is not None:
            return self._compare_rational(other.rat)
        if self.rat is not None:
            return -other._compare_rational(self.rat)
        if self.hi <= other.lo:
            return -1
        if other.hi <= self.lo:
            return 1
        gi = _int_poly_gcd(self.ints, other.ints)
        if len(gi) > 1:
            a, b = max(self.lo, other.lo), min(self.hi, other.hi)
            if a < b:
                chain = _sturm_chain(gi)
                if _sign_at(gi, a) != 0 and _sign_at(gi, b) != 0 and _count_open(chain, a, b) >= 1:
                    return 0
        while True:
            self._refine_once()
            other._refine_once()
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1

    def __eq__(self, other):
        return self.compare(other) == 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self):
        if self.rat is not None:
            return f"RootVal({self.rat})"
        return f"RootVal({self.lo}..{self.hi})"


def sort_rootvals(pairs):
    """Sort (RootVal, payload) pairs ascending by exact comparison."""
    return sorted(pairs, key=cmp_to_key(lambda a, b: a[0].compare(b[0])))


# ---------------------------------------------------------------------------
# isolation


def _isolate_squarefree(ints, lo, hi):
    """Isolate all roots of a square-free integer polynomial in open (lo, hi).

    Endpoints must not be roots.  Yields exact rationals and isolating
    intervals, ascending.
    """
    chain = _sturm_chain(ints)
    out = []
    stack = [(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if _sign_at(ints, mid) == 0:
            eps = (b - a) / 4
            while True:
                left, right = mid - eps, mid + eps
                if (
                    left > a
                    and right < b
                    and _sign_at(ints, left) != 0
                    and _sign_at(ints, right) != 0
                ):
                    vl = _variations_at(chain, left)
                    vr = _variations_at(chain, right)
                    if vl - vr == 1:
                        break
                eps /= 2
            out.append((mid, mid))
            stack.append((a, left, va, vl))
            stack.append((right, b, vr, vb))
        else:
            vm = _variations_at(chain, mid)
            stack.append((a, mid, va, vm))
            stack.append((mid, b, vm, vb))
    out.sort(key=lambda t: t[0])
    return out


def isolate_real_roots(p, lo=Fraction(0), hi=None, classify_rational=True):
    """All real roots of p in the open interval (lo, hi), with multiplicity.

    ``lo``/``hi`` may be None for the unbounded side.  Rational roots come
    back exact; irrational ones as refinable isolating intervals.  Returns
    a list of (RootVal, multiplicity) sorted ascending.

    ``classify_rational=False`` skips the exact rational-root extraction,
    leaving every root in interval form; comparisons stay exact either way,
    so order/equality checks that never need the literal rational value can
    avoid the (potentially long) irrationality certification.
    """
    if p.is_zero:
        raise DivisionByZero("root isolation of the zero polynomial")
    found = []
    for factor, mult in squarefree_factor(p):
        ints = factor.primitive_int()[0]
        if len(ints) <= 1:
            continue
        bound = _cauchy_bound(ints) + 1
        a = -bound if lo is None else max(lo, -bound)
        b = bound if hi is None else min(hi, bound)
        if not a < b:
            continue
        f = factor
        # open interval: roots sitting exactly on an endpoint are excluded,
        # and Sturm evaluation needs non-root endpoints
        while _sign_at(ints, a) == 0:
            f = f.divexact(Poly([-a, 1]))
            ints = f.primitive_int()[0]
            if len(ints) <= 1:
                break
        if len(ints) <= 1:
            continue
        while _sign_at(ints, b) == 0:
            f = f.divexact(Poly([-b, 1]))
            ints = f.primitive_int()[0]
            if len(ints) <= 1:
                break
        if len(ints) <= 1:
            continue
        for item in _isolate_squarefree(ints, a, b):
            ilo, ihi = item
            if ilo == ihi:
                found.append((RootVal.rational(ilo), mult))
                continue
            r = _rational_root_in(ints, ilo, ihi) if classify_rational else None
            if r is not None:
                found.append((RootVal.rational(r), mult))
            else:
                found.append((RootVal.algebraic(f, ilo, ihi), mult))
    return sort_rootvals(found)


def refine_root(p, interval, width):
    """Bisect an isolating interval of p's square-free part down to ``width``.

    Collapses to a degenerate (r, r) interval when an exact rational root is
    hit.  Raises NotIsolating when the endpoint signs do not bracket a root.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    part = squarefree_part(p)
    ints = part.primitive_int()[0]
    s_lo, s_hi = _sign_at(ints, lo), _sign_at(ints, hi)
    if s_lo == 0:
        return lo, lo
    if s_hi == 0:
        return hi, hi
    if s_lo * s_hi > 0:
        raise NotIsolating(f"no sign change of the square-free part on ({lo}, {hi})")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sign_at(ints, mid)
        if s == 0:
            return mid, mid
        if s * s_lo < 0:
            hi = mid
        else:
            lo = mid
    return lo, hi

