"""Inverse problem with the root at a pendant vertex.

The quotient Phi(z) = gamma * prod(1 - z/lambda_k^2) / prod(1 - z/mu_k^2)
with gamma = main_length + (sum_j 1/l_j)^-1 expands into a Stieltjes
continued fraction whose leading coefficients are the main edge: the
unique cut index is the first partial sum of the constants reaching the
main length.  The continued-fraction tail (with the common spectral values
re-inserted) is the reciprocal spectral quotient of the q-1 edge subgraph,
which the centre-root algorithm then realizes.  The main edge is uniquely
determined; the subgraph inherits the usual residue-split freedom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, IrrationalPole, MainTooLong, NotStieltjes
from .inverse_center import (
    ConcretePlan,
    Issue,
    ValidationReport,
    _edge_from_summand,
    plan_partition_distinct,
    validate_center,
)
from .model import Edge, Root, SpectrumPair, StarGraph
from .poly import ONE, Poly
from .ratfun import (
    RationalFunction,
    StieltjesCF,
    cf_expand,
    cf_to_ratfun,
    ratfun_normalize,
    _polynomial_part,
)
from .roots import isolate_real_roots


def _sum_reciprocal(lengths):
    return sum((Fraction(1) / Fraction(l) for l in lengths), Fraction(0))


def build_phi(spectra, main_length, lengths):
    """Spectral quotient of the pendant problem.

    Returns (phi, gamma, cancelled) where cancelled is the monic product of
    the factors shared by numerator and denominator (the common spectral
    values, squared).
    """
    gamma = Fraction(main_length) + 1 / _sum_reciprocal(lengths)
    num = Poly.from_scaled_roots(spectra.dirichlet_values()).scale(gamma)
    den = Poly.from_scaled_roots(spectra.neumann_values())
    phi, cancelled = ratfun_normalize(num, den)
    return phi, gamma, cancelled


@dataclass(frozen=True)
class MainEdgeDecomposition:
    main: Edge
    main_mass_count: int
    tail_constant: Fraction  # the nonnegative constant opening the tail
    tail: RationalFunction
    cf: StieltjesCF
    gamma: Fraction
    common_zeros: tuple  # ((value, mult), ...) shared by the two spectra

    @property
    def central_mass_is_zero(self):
        return self.tail_constant > 0


def _common_values(spectra):
    mu = dict(spectra.neumann_sq)
    out = []
    for v, m in spectra.dirichlet_sq:
        if v in mu:
            out.append((v, min(m, mu[v])))
    return tuple(out)


def decompose_main_from_quotient(phi, main_length, gamma=None, common_zeros=()):
    """Cut the continued fraction of phi at the main-string length."""
    cf = cf_expand(phi)
    total = sum(cf.a, Fraction(0))
    main_length = Fraction(main_length)
    if gamma is None:
        gamma = total
    if main_length >= total:
        raise MainTooLong(
            f"main length {main_length} >= quotient value {total} at zero"
        )
    prefix = Fraction(0)
    cut = 0
    for k, a in enumerate(cf.a):
        prefix += a
        if prefix >= main_length:
            cut = k
            break
    tail_constant = prefix - main_length
    lengths = list(cf.a[:cut]) + [cf.a[cut] - tail_constant]
    main = Edge(tuple(lengths), cf.b[:cut])
    if cut == cf.depth:
        assert tail_constant > 0, "tail of the full expansion must keep a constant"
        tail = RationalFunction.constant(tail_constant)
    else:
        tail = cf_to_ratfun(StieltjesCF((tail_constant,) + cf.a[cut + 1:], cf.b[cut:]))
    return MainEdgeDecomposition(
        main, cut, tail_constant, tail, cf, Fraction(gamma), tuple(common_zeros)
    )


def decompose_main(spectra, main_length, lengths):
    """Main-edge decomposition from raw spectral data."""
    phi, gamma, _ = build_phi(spectra, main_length, lengths)
    return decompose_main_from_quotient(
        phi, main_length, gamma=gamma, common_zeros=_common_values(spectra)
    )


def validate_pendant(spectra, main_length, lengths, check_tail=True):
    """Check the pendant-root solvability conditions.

    The interlacing chain must open strictly (mu_1 < lambda_1), both
    multiplicities stay below the edge count, and at every value shared by
    the two spectra the continued-fraction tail must vanish; the last
    condition is checked constructively by computing the tail.
    """
    q = len(lengths) + 1
    issues = []
    mu = spectra.neumann_values()
    lam = spectra.dirichlet_values()
    n = len(lam)
    if len(mu) != n:
        issues.append(Issue("count", f"need equal counts, got {len(mu)} vs {n}"))
    elif n == 0:
        issues.append(Issue("count", "need at least one eigenvalue pair"))
    else:
        if not mu[0] < lam[0]:
            issues.append(Issue("chain", f"need mu_1 < lambda_1, got {mu[0]} >= {lam[0]}"))
        for k in range(1, n):
            if not lam[k - 1] <= mu[k] <= lam[k]:
                issues.append(Issue(
                    "chain",
                    f"need lambda_{k} <= mu_{k + 1} <= lambda_{k + 1} "
                    f"({lam[k - 1]}, {mu[k]}, {lam[k]})",
                ))
    cap = q - 1
    for label, entries in (("neumann", spectra.neumann_sq), ("dirichlet", spectra.dirichlet_sq)):
        for v, mult in entries:
            if mult > cap:
                issues.append(Issue(
                    "multiplicity", f"{label} value {v} has multiplicity {mult} > {cap}"
                ))
    # a value shared by both spectra is a common zero of the two
    # characteristic polynomials, whose multiplicities sum to at most 2q-3
    mu_mult = dict(spectra.neumann_sq)
    for v, mult in spectra.dirichlet_sq:
        shared = mu_mult.get(v, 0)
        if shared and shared + mult > 2 * q - 3:
            issues.append(Issue(
                "multiplicity",
                f"shared value {v}: multiplicity sum {shared + mult} exceeds {2 * q - 3}",
            ))
    if not issues and check_tail:
        try:
            dec = decompose_main(spectra, main_length, lengths)
        except (NotStieltjes, MainTooLong) as exc:
            issues.append(Issue(exc.code, exc.message))
        else:
            for v, _ in dec.common_zeros:
                if dec.tail.den.eval(v) == 0 or dec.tail.num.eval(v) != 0:
                    issues.append(Issue(
                        "tail",
                        f"tail does not vanish at the shared value {v}: "
                        f"tail({v}) = {_tail_value(dec.tail, v)}",
                    ))
    return ValidationReport(not issues, tuple(issues), None)


def _tail_value(tail, v):
    try:
        return format(tail.eval(v))
    except Exception:
        return "pole"


# ---------------------------------------------------------------------------
# full reconstruction


@dataclass(frozen=True)
class PendantReconstruction:
    graph: StarGraph
    decomposition: MainEdgeDecomposition
    subgraph_plan: ConcretePlan | None
    subgraph_central_mass: Fraction


def _subgraph_edges(psi_sub, lengths, common_zeros, plan):
    """Realize the q-1 edge subgraph from its spectral quotient.

    Rational poles are distributed per the plan (default: round-robin by
    load, equal residue shares).  A residual denominator factor without
    rational roots is kept whole and assigned to a single edge, which stays
    exact; fine-grained user plans over such poles are refused.
    """
    q = len(lengths)
    a0, _, proper = _polynomial_part(psi_sub)
    den = proper.den
    if q == 1:
        # single string: no split at all; shared spectral values are
        # impossible here (their multiplicities would have to sum to <= 1)
        if common_zeros:
            raise NotStieltjes("a two-string graph admits no shared eigenvalues")
        return a0, [_edge_from_summand(proper, lengths[0])], None
    rational_poles = []
    leftover = ONE
    if den.degree > 0:
        roots = isolate_real_roots(den, Fraction(0), None)
        if sum(m for _, m in roots) != den.degree:
            raise NotStieltjes("subgraph quotient has non-real poles")
        if any(mult != 1 for _, mult in roots):
            raise NotStieltjes("subgraph quotient has a multiple pole")
        rational_poles = sorted(rv.rat for rv, _ in roots if rv.is_rational)
        leftover = den.divexact(Poly.from_linear_roots(rational_poles)).monic()
    if leftover.degree > 0 and plan is not None and (
        plan.partition is not None or plan.residue_split is not None
    ):
        raise IrrationalPole(
            "user plans require rational subgraph spectra; "
            f"a degree-{leftover.degree} pole cluster is irrational"
        )
    common = dict(common_zeros)
    occurrences = tuple((v, 1 + common.get(v, 0)) for v in rational_poles)
    dden = den.derivative()
    residue_of = {v: proper.num.eval(v) / dden.eval(v) for v in rational_poles}
    cplan = plan_partition_distinct(occurrences, q, plan)
    load = [0] * q
    per_edge = [[] for _ in range(q)]
    for assignment in cplan.assignments:
        total = residue_of[assignment.value]
        for edge_idx, share in zip(assignment.edges, assignment.shares):
            per_edge[edge_idx].append((assignment.value, total * share))
            load[edge_idx] += 1
    cluster_part = None
    target = None
    if leftover.degree > 0:
        cluster_part = proper
        for v in rational_poles:
            cluster_part = cluster_part - RationalFunction(
                Poly.constant(residue_of[v]), Poly([-v, 1])
            )
        assert cluster_part.den == leftover, "pole cluster extraction mismatch"
        target = min(range(q), key=lambda j: (load[j], j))
        load[target] += leftover.degree
    edges = []
    for j in range(q):
        proper_j = RationalFunction(Poly(), ONE)
        for value, amount in sorted(per_edge[j]):
            proper_j = proper_j + RationalFunction(Poly.constant(amount), Poly([-value, 1]))
        if target is not None and j == target:
            proper_j = proper_j + cluster_part
        edges.append(_edge_from_summand(proper_j, lengths[j]))
    return a0, edges, cplan


def reconstruct_pendant(spectra, main_length, lengths, plan=None, validate=True):
    """Recover a pendant-rooted star graph realizing the given spectra."""
    if validate:
        report = validate_pendant(spectra, main_length, lengths)
        if not report.valid:
            raise InvariantViolation(
                "; ".join(i.message for i in report.issues) or "invalid spectral data"
            )
    dec = decompose_main(spectra, main_length, lengths)
    psi_sub = dec.tail.inverse()
    assert psi_sub.eval(Fraction(0)) == _sum_reciprocal(lengths), \
        "subgraph quotient value at zero must match the given lengths"
    sub_mass, edges, plan_used = _subgraph_edges(
        psi_sub, list(lengths), dec.common_zeros, plan
    )
    if dec.tail_constant > 0:
        assert sub_mass == 0, "positive tail constant forces a massless centre"
    else:
        assert sub_mass > 0, "vanishing tail constant forces a central mass"
    graph = StarGraph(Root.PENDANT, sub_mass, tuple(edges), dec.main)
    return PendantReconstruction(graph, dec, plan_used, sub_mass)


def validate_subgraph_data(dec, lengths):
    """Internal alarm: when the subgraph spectra are rational, re-check them
    against the centre-root conditions (they hold by construction)."""
    num_roots = isolate_real_roots(dec.tail.num, Fraction(0), None)
    den_roots = isolate_real_roots(dec.tail.den, Fraction(0), None)
    if not all(rv.is_rational for rv, _ in num_roots + den_roots):
        return None
    common = dict(dec.common_zeros)
    dirichlet = {}
    for rv, m in num_roots:
        dirichlet[rv.rat] = dirichlet.get(rv.rat, 0) + m
    neumann = {}
    for rv, m in den_roots:
        neumann[rv.rat] = neumann.get(rv.rat, 0) + m
    for v, m in common.items():
        dirichlet[v] = dirichlet.get(v, 0) + m
        neumann[v] = neumann.get(v, 0) + m
    pair = SpectrumPair(tuple(sorted(neumann.items())), tuple(sorted(dirichlet.items())))
    return validate_center(pair, len(lengths))
