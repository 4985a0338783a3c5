"""Centre-root inverse: validation, quotient, plans, reconstruction."""

from fractions import Fraction as F

import pytest

from starstring.errors import InvariantViolation, PlanInfeasible
from starstring.forward import center_quotient, char_polys_center, edge_cauer_polys, spectrum_of
from starstring.inverse_center import (
    build_psi,
    enumerate_constraints,
    plan_partition,
    reconstruct_center,
    reconstruct_center_grouped,
    validate_center,
)
from starstring.model import ReconstructionPlan, SpectrumPair
from starstring.poly import Poly, poly_gcd
from tests.conftest import random_center_graph, random_center_spectral_data

EX_SPECTRA = SpectrumPair(((F(1), 1), (F(2), 1)), ((F(2), 2),))
EX_LENGTHS = [F(2), F(1)]


class TestValidate:
    def test_worked_example_valid(self):
        report = validate_center(EX_SPECTRA, 3)
        assert report.valid
        assert report.central_mass_positive is False

    def test_strictness_violation(self):
        bad = SpectrumPair(((F(1), 1),), ((F(1), 1),))
        report = validate_center(bad, 2)
        assert not report.valid
        assert any(i.code == "chain" for i in report.issues)

    def test_multiplicity_cap(self):
        bad = SpectrumPair(
            ((F(1), 1), (F(2), 2), (F(4), 1)),
            ((F(2), 3), (F(5), 1)),
        )
        report = validate_center(bad, 2)  # dirichlet multiplicity 3 > q = 2
        assert not report.valid
        assert any(i.code == "multiplicity" for i in report.issues)

    def test_random_generated_data_valid(self, rng):
        for _ in range(30):
            spectra, lengths, q, m_positive = random_center_spectral_data(rng)
            report = validate_center(spectra, q)
            assert report.valid, [i.message for i in report.issues]
            assert report.central_mass_positive == m_positive


class TestBuildPsi:
    def test_worked_example(self):
        psi = build_psi(EX_SPECTRA, EX_LENGTHS)
        # 3(1-z)/(2-z), canonically (3z-3)/(z-2)
        assert psi.num == Poly([F(-3), F(3)])
        assert psi.den == Poly([F(-2), F(1)])
        assert psi.eval(F(0)) == F(3, 2)

    def test_no_dirichlet(self):
        spectra = SpectrumPair(((F(2), 1),), ())
        psi = build_psi(spectra, [F(1), F(1)])
        assert psi.num == Poly([F(2), F(-1)])
        assert psi.den == Poly([F(1)])


class TestPlans:
    def test_explicit_split(self):
        plan = ReconstructionPlan(residue_split=((F(2), (F(2, 3), F(1, 3))),))
        cplan = plan_partition(EX_SPECTRA, 2, plan)
        (assignment,) = cplan.assignments
        assert assignment.edges == (0, 1)
        assert assignment.shares == (F(2, 3), F(1, 3))

    def test_default_equal_split(self):
        cplan = plan_partition(EX_SPECTRA, 2)
        (assignment,) = cplan.assignments
        assert assignment.shares == (F(1, 2), F(1, 2))

    def test_too_many_occurrences(self):
        spectra = SpectrumPair(
            ((F(1), 1), (F(2), 2), (F(4), 1)),
            ((F(2), 3), (F(5), 1)),
        )
        with pytest.raises(PlanInfeasible):
            plan_partition(spectra, 2)

    def test_bad_share_sum(self):
        plan = ReconstructionPlan(residue_split=((F(2), (F(1, 2), F(1, 3))),))
        with pytest.raises(PlanInfeasible):
            plan_partition(EX_SPECTRA, 2, plan)

    def test_partition_override(self):
        plan = ReconstructionPlan(partition=((1, 0),))
        cplan = plan_partition(EX_SPECTRA, 2, plan)
        assert cplan.assignments[0].edges == (1, 0)

    def test_round_robin_by_load(self):
        spectra = SpectrumPair(
            ((F(1, 2), 1), (F(3), 1), (F(5), 1)),
            ((F(1), 1), (F(4), 1)),
        )
        cplan = plan_partition(spectra, 3)
        assert cplan.assignments[0].edges == (0,)
        assert cplan.assignments[1].edges == (1,)


class TestReconstruct:
    def test_worked_family_closed_forms(self):
        for a in (F(1, 2), F(1), F(3, 2), F(2), F(5, 2)):
            plan = ReconstructionPlan(residue_split=((F(2), (a / 3, (3 - a) / 3)),))
            rec = reconstruct_center(EX_SPECTRA, EX_LENGTHS, plan)
            assert rec.graph.central_mass == 0
            e1, e2 = rec.graph.edges
            assert e1.lengths == (2 / (a + 1), 2 * a / (a + 1))
            assert e1.masses == ((1 / a) * ((a + 1) / 2) ** 2,)
            assert e2.lengths == (2 / (5 - a), (3 - a) / (5 - a))
            assert e2.masses == ((1 / (3 - a)) * ((5 - a) / 2) ** 2,)

    def test_lengths_always_recovered(self, rng):
        for _ in range(20):
            spectra, lengths, q, _ = random_center_spectral_data(rng)
            rec = reconstruct_center(spectra, lengths)
            for edge, length in zip(rec.graph.edges, lengths):
                assert edge.total_length == length

    def test_isospectral_across_plans(self):
        quotients = set()
        for a in (F(1, 2), F(1), F(2), F(5, 2)):
            plan = ReconstructionPlan(residue_split=((F(2), (a / 3, (3 - a) / 3)),))
            rec = reconstruct_center(EX_SPECTRA, EX_LENGTHS, plan)
            quotient, _ = center_quotient(rec.graph)
            quotients.add(quotient)
            assert quotient == rec.psi.inverse()
        assert len(quotients) == 1

    def test_spectral_fidelity(self, rng):
        for _ in range(30):
            spectra, lengths, q, m_positive = random_center_spectral_data(rng)
            rec = reconstruct_center(spectra, lengths)
            assert (rec.graph.central_mass > 0) == m_positive
            phi_n, phi_d = char_polys_center(rec.graph)
            for got, want in (
                (spectrum_of(phi_n), spectra.neumann_sq),
                (spectrum_of(phi_d), spectra.dirichlet_sq),
            ):
                assert [(rv.rat, m) for rv, m in got] == list(want)

    def test_positivity_of_all_data(self, rng):
        # positivity is an Edge invariant; constructing the graph is the test
        for _ in range(10):
            spectra, lengths, *_ = random_center_spectral_data(rng)
            reconstruct_center(spectra, lengths)

    def test_degenerate_empty_dirichlet(self):
        spectra = SpectrumPair(((F(2), 1),), ())
        rec = reconstruct_center(spectra, [F(1), F(1)])
        assert rec.graph.central_mass == 1
        assert all(e.mass_count == 0 for e in rec.graph.edges)
        phi_n, phi_d = char_polys_center(rec.graph)
        assert [(rv.rat, m) for rv, m in spectrum_of(phi_n)] == [(F(2), 1)]
        assert phi_d.degree == 0

    def test_invalid_input_raises(self):
        bad = SpectrumPair(((F(1), 1),), ((F(1), 1),))
        with pytest.raises(InvariantViolation):
            reconstruct_center(bad, [F(1), F(1)])

    def test_single_string_two_spectra(self):
        # classic single-string problem: free-at-centre spectrum {1},
        # clamped spectrum {2}, length 2 -> the unit bead in the middle
        spectra = SpectrumPair(((F(1), 1),), ((F(2), 1),))
        rec = reconstruct_center(spectra, [F(2)], allow_single=True)
        assert rec.graph is None
        assert rec.central_mass == 0
        (edge,) = rec.edges
        assert edge.lengths == (F(1), F(1)) and edge.masses == (F(1),)

    def test_single_string_requires_strict(self):
        shared = SpectrumPair(((F(1), 1), (F(2), 1)), ((F(2), 1), (F(3), 1)))
        with pytest.raises(InvariantViolation):
            reconstruct_center(shared, [F(1)], allow_single=True)

    def test_roundtrip_forward_induced(self, rng):
        # graph -> forward -> grouped reconstruct -> forward: same quotient,
        # and in fact the identical graph
        done = 0
        while done < 25:
            g = random_center_graph(rng, q_max=4, max_masses=3)
            factors = [edge_cauer_polys(e).even.monic() for e in g.edges]
            if any(
                poly_gcd(factors[i], factors[j]).degree > 0
                for i in range(len(factors))
                for j in range(i)
            ):
                continue
            quotient, _ = center_quotient(g)
            rebuilt = reconstruct_center_grouped(
                quotient.inverse(), factors, [e.total_length for e in g.edges]
            )
            assert rebuilt == g
            done += 1


class TestEnumerate:
    def test_constraint_export(self):
        out = enumerate_constraints(EX_SPECTRA, EX_LENGTHS)
        assert out["central_mass"] == "0"
        (pole,) = out["poles"]
        assert pole["value"] == "2"
        assert pole["total_residue"] == "3"
        assert pole["free_parameters"] == 1
        assert out["feasible_partitions"] == 1
