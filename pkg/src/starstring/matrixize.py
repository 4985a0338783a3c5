"""Star-patterned stiffness/mass pencil of the centre-rooted Neumann problem.

With a positive central mass the Neumann problem is the generalized
eigenvalue problem for the pencil (L, M): M is the diagonal mass matrix
ordered centre first, then each edge's masses walking outward from the
centre; L is the symmetric star-patterned stiffness matrix whose only
off-diagonal entries couple chain neighbours and the centre row to each
edge's innermost mass.  Working with the pencil instead of the
mass-normalized matrix keeps every entry rational; the spectra agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm as _ilcm

from .errors import InvariantViolation, RequiresPositiveCentralMass, SchemaError
from .model import Root
from .poly import Poly
from .rational import format_rational, parse_rational
from .roots import isolate_real_roots


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple  # tuple of row tuples, square

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvariantViolation("matrix must be square")

    @property
    def dim(self):
        return len(self.entries)

    def is_symmetric(self):
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.dim) for j in range(i))

    def principal_submatrix(self):
        """Delete the first row and column."""
        return RationalMatrix(tuple(row[1:] for row in self.entries[1:]))

    def to_json(self):
        return [[format_rational(c) for c in row] for row in self.entries]

    @staticmethod
    def from_json(obj, context="matrix"):
        if not isinstance(obj, list):
            raise SchemaError(f"{context}: expected array of arrays")
        return RationalMatrix(
            tuple(
                tuple(parse_rational(c, f"{context}[{i}][{j}]") for j, c in enumerate(row))
                for i, row in enumerate(obj)
            )
        )


def build_pencil(graph):
    """(L, M_diag) of a centre-rooted graph with positive central mass.

    Ordering: centre first, then edge by edge, each edge's masses from the
    innermost (centre-adjacent) outward.
    """
    if graph.root is not Root.CENTER:
        raise InvariantViolation("pencil is defined for centre-rooted graphs")
    if graph.central_mass <= 0:
        raise RequiresPositiveCentralMass("pencil needs a positive central mass")
    diag = [graph.central_mass]
    for e in graph.edges:
        diag.extend(e.masses)
    n = len(diag)
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[0][0] = sum((1 / e.lengths[0] for e in graph.edges), Fraction(0))
    pos = 1
    for e in graph.edges:
        k = e.mass_count
        if k == 0:
            continue
        rows[0][pos] = rows[pos][0] = -1 / e.lengths[0]
        for i in range(k):
            rows[pos + i][pos + i] = 1 / e.lengths[i] + 1 / e.lengths[i + 1]
            if i + 1 < k:
                rows[pos + i][pos + i + 1] = rows[pos + i + 1][pos + i] = -1 / e.lengths[i + 1]
        pos += k
    return RationalMatrix(tuple(tuple(r) for r in rows)), tuple(diag)


def det_rational(rows):
    """Exact determinant via integer scaling and Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in rows:
        denlcm = _ilcm(*(c.denominator for c in row)) if row else 1
        m.append([int(c * denlcm) for c in row])
        scale /= denlcm
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return scale * sign * m[n - 1][n - 1]


def pencil_det(L, mass_diag):
    """det(L - z*M) as an exact polynomial via evaluation and interpolation."""
    n = L.dim
    points = [Fraction(i) for i in range(n + 2)]
    values = []
    for x in points:
        rows = [
            tuple(L.entries[i][j] - (x * mass_diag[i] if i == j else 0) for j in range(n))
            for i in range(n)
        ]
        values.append(det_rational(rows))
    return _lagrange(points, values)


def _lagrange(points, values):
    total = Poly()
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        term = Poly.constant(yi)
        for j, xj in enumerate(points):
            if j == i:
                continue
            term = term * Poly([-xj, 1]).scale(1 / (xi - xj))
        total = total + term
    return total


@dataclass(frozen=True)
class InterlacingCertificate:
    ok: bool
    full_count: int
    sub_count: int
    failures: tuple

    def to_json(self):
        return {
            "ok": self.ok,
            "full_count": self.full_count,
            "sub_count": self.sub_count,
            "failures": list(self.failures),
        }


def interlacing_certificate(L, mass_diag):
    """Certify lam_1 <= mu_1 <= lam_2 <= ... for the pencil and its
    first principal submatrix pencil, by exact root comparison."""
    full = pencil_det(L, mass_diag)
    sub = pencil_det(L.principal_submatrix(), mass_diag[1:])
    full_roots = [
        rv for rv, m in isolate_real_roots(full, None, None, classify_rational=False)
        for _ in range(m)
    ]
    sub_roots = [
        rv for rv, m in isolate_real_roots(sub, None, None, classify_rational=False)
        for _ in range(m)
    ]
    failures = []
    if len(full_roots) != full.degree:
        failures.append("full pencil determinant has non-real roots")
    if len(sub_roots) != sub.degree:
        failures.append("submatrix pencil determinant has non-real roots")
    if not failures:
        for k, mu in enumerate(sub_roots):
            if k < len(full_roots) and mu.compare(full_roots[k]) < 0:
                failures.append(f"mu_{k + 1} < lambda_{k + 1}")
            if k + 1 < len(full_roots) and mu.compare(full_roots[k + 1]) > 0:
                failures.append(f"mu_{k + 1} > lambda_{k + 2}")
    return InterlacingCertificate(not failures, len(full_roots), len(sub_roots), tuple(failures))


def pencil_to_json(L, mass_diag):
    return {
        "dim": L.dim,
        "L": L.to_json(),
        "M_diag": [format_rational(c) for c in mass_diag],
    }
