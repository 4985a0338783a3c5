"""Inverse problem with the root at the central vertex.

Given the Neumann and Dirichlet spectra (squared, with multiplicities) and
the string lengths, build the spectral quotient

    Psi(z) = (sum_j 1/l_j) * prod(1 - z/lam_k^2) / prod(1 - z/zeta_k^2),

split it into partial fractions -A0*z + sum A_i/(z - zeta_i^2) + B, divide
each pole's residue among the edges that hold an occurrence of that value,
and expand each per-edge summand's reciprocal into its Stieltjes continued
fraction: the coefficients are that edge's intervals and masses, and the
central mass is A0.  Repeated Dirichlet values make the residue division a
genuine free parameter; the plan object pins it down, the default spreads
occurrences round-robin by edge load with equal residue shares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvariantViolation, PlanInfeasible
from .model import Edge, ReconstructionPlan, Root, StarGraph
from .poly import ONE, Poly
from .rational import format_rational
from .ratfun import (
    RationalFunction,
    cf_expand,
    partial_fractions_at,
    split_proper_by_factors,
    _polynomial_part,
)


@dataclass(frozen=True)
class Issue:
    code: str
    message: str

    def to_json(self):
        return {"code": self.code, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    issues: tuple
    central_mass_positive: bool | None

    def to_json(self):
        return {
            "valid": self.valid,
            "issues": [i.to_json() for i in self.issues],
            "central_mass_positive": self.central_mass_positive,
        }


def validate_center(spectra, q):
    """Check the centre-root solvability conditions, reporting every violation.

    Conditions: counts differ by one (positive central mass) or agree
    (massless centre); the interlacing chain with strict outer
    inequalities; the two-sided equality condition at interior ties;
    Neumann multiplicities at most q-1 (Dirichlet at most q).  For q = 1
    (internal single-string use) interlacing must be strict throughout.
    """
    issues = []
    lam = spectra.neumann_values()
    zet = spectra.dirichlet_values()
    n = len(zet)
    m_positive = None
    if len(lam) == n + 1:
        m_positive = True
    elif len(lam) == n:
        m_positive = False
    else:
        issues.append(Issue(
            "count",
            f"need #neumann = #dirichlet or #dirichlet + 1, got {len(lam)} vs {n}",
        ))
    if m_positive is not None and n > 0:
        if not lam[0] < zet[0]:
            issues.append(Issue("chain", f"need lambda_1 < zeta_1, got {lam[0]} >= {zet[0]}"))
        for k in range(1, n):
            if not zet[k - 1] <= lam[k] <= zet[k]:
                issues.append(Issue(
                    "chain",
                    f"need zeta_{k} <= lambda_{k + 1} <= zeta_{k + 1} "
                    f"({zet[k - 1]}, {lam[k]}, {zet[k]})",
                ))
        if m_positive and not zet[n - 1] < lam[n]:
            issues.append(Issue("chain", f"need zeta_n < lambda_n+1, got {zet[n - 1]} >= {lam[n]}"))
        for k in range(1, n):
            left = zet[k - 1] == lam[k]
            right = lam[k] == zet[k]
            if left != right:
                issues.append(Issue(
                    "tie",
                    f"tie condition fails at k={k + 1}: "
                    f"zeta_{k}={zet[k - 1]}, lambda_{k + 1}={lam[k]}, zeta_{k + 1}={zet[k]}",
                ))
    if m_positive is not None and n == 0 and len(lam) > 1:
        issues.append(Issue("count", "empty Dirichlet spectrum admits at most one Neumann value"))
    lam_cap = q - 1 if q >= 2 else 1
    for v, mult in spectra.neumann_sq:
        if mult > lam_cap:
            issues.append(Issue(
                "multiplicity", f"neumann value {v} has multiplicity {mult} > {lam_cap}"
            ))
    for v, mult in spectra.dirichlet_sq:
        if mult > q:
            issues.append(Issue(
                "multiplicity", f"dirichlet value {v} has multiplicity {mult} > {q}"
            ))
    if q == 1:
        common = {v for v, _ in spectra.neumann_sq} & {v for v, _ in spectra.dirichlet_sq}
        if common:
            issues.append(Issue(
                "multiplicity", f"single-string data must interlace strictly, shared {sorted(common)}"
            ))
    return ValidationReport(not issues, tuple(issues), m_positive)


def build_psi(spectra, lengths):
    """The spectral quotient in canonical form; its value at 0 is sum(1/l_j)."""
    scale = sum((Fraction(1) / Fraction(l) for l in lengths), Fraction(0))
    num = Poly.from_scaled_roots(spectra.neumann_values()).scale(scale)
    den = Poly.from_scaled_roots(spectra.dirichlet_values())
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class PoleAssignment:
    value: Fraction
    edges: tuple  # one edge index per occurrence, pairwise distinct
    shares: tuple  # positive fractions of the total residue, sum 1

    def to_json(self):
        return {
            "value": format_rational(self.value),
            "edges": list(self.edges),
            "shares": [format_rational(s) for s in self.shares],
        }


@dataclass(frozen=True)
class ConcretePlan:
    assignments: tuple  # per distinct dirichlet value, ascending

    def to_json(self):
        return {"assignments": [a.to_json() for a in self.assignments]}

    def as_plan(self):
        return ReconstructionPlan(
            partition=tuple(a.edges for a in self.assignments),
            residue_split=tuple((a.value, a.shares) for a in self.assignments),
        )


def plan_partition(spectra, q, plan=None):
    """Resolve the (possibly partial) user plan into a concrete assignment.

    Default: occurrences of each value go to the least-loaded edges (ties
    by index), residues are split equally.  A user partition and/or residue
    split overrides; infeasible requests raise PlanInfeasible.
    """
    return plan_partition_distinct(spectra.dirichlet_sq, q, plan)


def plan_partition_distinct(distinct, q, plan=None):
    """Plan resolution over an explicit ((value, multiplicity), ...) tuple."""
    user_partition = plan.partition if plan is not None else None
    if user_partition is not None and len(user_partition) != len(distinct):
        raise PlanInfeasible(
            f"partition must list edges for each of the {len(distinct)} distinct values"
        )
    if plan is not None and plan.residue_split is not None:
        known = {v for v, _ in distinct}
        for v, _ in plan.residue_split:
            if v not in known:
                raise PlanInfeasible(f"residue split names an absent pole {v}")
    load = [0] * q
    assignments = []
    for idx, (value, mult) in enumerate(distinct):
        if mult > q:
            raise PlanInfeasible(f"cannot place {mult} occurrences of {value} on {q} edges")
        if user_partition is not None:
            edges = tuple(user_partition[idx])
            if len(edges) != mult:
                raise PlanInfeasible(
                    f"value {value} needs {mult} edges, partition gives {len(edges)}"
                )
            if len(set(edges)) != mult or any(not 0 <= e < q for e in edges):
                raise PlanInfeasible(f"partition for value {value} must use distinct valid edges")
        else:
            order = sorted(range(q), key=lambda j: (load[j], j))
            edges = tuple(order[:mult])
        shares = plan.split_for(value) if plan is not None else None
        if shares is None:
            shares = tuple(Fraction(1, mult) for _ in range(mult))
        else:
            shares = tuple(Fraction(s) for s in shares)
            if len(shares) != mult:
                raise PlanInfeasible(f"value {value} needs {mult} residue shares")
            if any(s <= 0 for s in shares) or sum(shares) != 1:
                raise PlanInfeasible(f"residue shares for {value} must be positive and sum to 1")
        for e in edges:
            load[e] += 1
        assignments.append(PoleAssignment(value, edges, shares))
    return ConcretePlan(tuple(assignments))


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class CenterReconstruction:
    graph: StarGraph | None  # None for the internal single-string case
    central_mass: Fraction
    edges: tuple
    plan_used: ConcretePlan
    psi: RationalFunction
    residues: tuple  # ((pole, total residue), ...)


def _edge_from_summand(proper_j, length):
    """Expand the reciprocal per-edge summand into intervals and masses."""
    b_j = Fraction(1) / Fraction(length) - proper_j.eval(Fraction(0))
    psi_j = proper_j + RationalFunction.constant(b_j)
    cf = cf_expand(psi_j.inverse())
    edge = Edge(cf.a, cf.b)
    assert edge.total_length == Fraction(length), "reconstructed lengths do not sum"
    return edge


def reconstruct_center(spectra, lengths, plan=None, validate=True, allow_single=False):
    """Recover a centre-rooted star graph realizing the given spectra."""
    q = len(lengths)
    if q < (1 if allow_single else 2):
        raise InvariantViolation("need at least two string lengths")
    if validate:
        report = validate_center(spectra, q)
        if not report.valid:
            raise InvariantViolation(
                "; ".join(i.message for i in report.issues) or "invalid spectral data"
            )
    psi = build_psi(spectra, lengths)
    poles = [v for v, _ in spectra.dirichlet_sq]
    pf = partial_fractions_at(psi, poles)
    cplan = plan_partition(spectra, q, plan)
    residue_of = dict(pf.terms)
    per_edge = [[] for _ in range(q)]
    for assignment in cplan.assignments:
        total = residue_of[assignment.value]
        for edge_idx, share in zip(assignment.edges, assignment.shares):
            per_edge[edge_idx].append((assignment.value, total * share))
    edges = []
    for j, terms in enumerate(per_edge):
        proper_j = RationalFunction(Poly(), ONE)
        for value, amount in sorted(terms):
            proper_j = proper_j + RationalFunction(Poly.constant(amount), Poly([-value, 1]))
        edges.append(_edge_from_summand(proper_j, lengths[j]))
    graph = StarGraph(Root.CENTER, pf.linear_coeff, tuple(edges)) if q >= 2 else None
    return CenterReconstruction(graph, pf.linear_coeff, tuple(edges), cplan, psi, pf.terms)


def reconstruct_center_grouped(psi, factors, lengths):
    """Reconstruct from a spectral quotient with a per-edge pole grouping.

    ``factors`` gives each edge's monic Dirichlet polynomial; they must be
    pairwise coprime and multiply to psi's denominator.  This is the
    forward-induced partition: residues stay grouped per edge, so no root
    isolation is needed and irrational spectra round-trip exactly.
    """
    q = len(lengths)
    if len(factors) != q:
        raise PlanInfeasible("need one denominator factor per edge")
    total_inv = sum((Fraction(1) / Fraction(l) for l in lengths), Fraction(0))
    if psi.eval(Fraction(0)) != total_inv:
        raise InvariantViolation("quotient value at 0 does not match the given lengths")
    a0, _, proper = _polynomial_part(psi)
    parts = split_proper_by_factors(proper, [f.monic() for f in factors])
    edges = []
    for j in range(q):
        edges.append(_edge_from_summand(parts[j], lengths[j]))
    return StarGraph(Root.CENTER, a0, tuple(edges))


def enumerate_constraints(spectra, lengths, plan=None):
    """Describe the solution family: per-pole residue simplices and the
    combinatorial count of feasible occurrence partitions."""
    q = len(lengths)
    psi = build_psi(spectra, lengths)
    pf = partial_fractions_at(psi, [v for v, _ in spectra.dirichlet_sq])
    cplan = plan_partition(spectra, q, plan)
    residue_of = dict(pf.terms)
    partition_count = 1
    poles = []
    for value, mult in spectra.dirichlet_sq:
        partition_count *= comb(q, mult)
        poles.append({
            "value": format_rational(value),
            "mult": mult,
            "total_residue": format_rational(residue_of[value]),
            "free_parameters": mult - 1,
            "constraint": "shares positive, summing to the total residue",
        })
    return {
        "central_mass": format_rational(pf.linear_coeff),
        "poles": poles,
        "feasible_partitions": partition_count,
        "partition_used": [list(a.edges) for a in cplan.assignments],
        "shares_used": {
            format_rational(a.value): [format_rational(s) for s in a.shares]
            for a in cplan.assignments
        },
    }
