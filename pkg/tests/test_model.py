"""Data model invariants and serialization round trips."""

import json
from fractions import Fraction as F

import pytest

from starstring.errors import InvariantViolation, SchemaError
from starstring.model import (
    Edge,
    ReconstructionPlan,
    Root,
    SpectrumPair,
    StarGraph,
    parse_graph,
    parse_plan,
    parse_spectra,
    serialize_graph,
    serialize_plan,
    serialize_spectra,
)
from tests.conftest import random_center_graph, random_pendant_graph


def test_edge_count_mismatch():
    with pytest.raises(InvariantViolation):
        Edge((F(1),), (F(1),))


def test_edge_positivity():
    with pytest.raises(InvariantViolation):
        Edge((F(1), F(-1)), (F(1),))


def test_massless_edge():
    e = Edge((F(1),), ())
    assert e.mass_count == 0 and e.total_length == 1


def test_edge_json_roundtrip():
    e = Edge((F(2, 3), F(4, 3)), (F(9, 8),))
    assert Edge.from_json(e.to_json()) == e


def test_graph_requires_two_edges():
    with pytest.raises(InvariantViolation):
        StarGraph(Root.CENTER, F(0), (Edge((F(1),), ()),))


def test_pendant_requires_main():
    with pytest.raises(InvariantViolation):
        StarGraph(Root.PENDANT, F(0), (Edge((F(1),), ()), Edge((F(1),), ())))


def test_example_solution_graph_parses():
    data = {
        "root": "pendant",
        "central_mass": "0",
        "main_edge": {"lengths": ["1", "1"], "masses": ["1"]},
        "edges": [
            {"lengths": ["2/3", "4/3"], "masses": ["9/8"]},
            {"lengths": ["2/3", "1/3"], "masses": ["9/4"]},
        ],
    }
    g = parse_graph(json.dumps(data).encode())
    assert g.main_edge.lengths == (F(1), F(1))
    assert g.main_edge.masses == (F(1),)
    assert g.spectral_size == 3


def test_schema_error_context():
    with pytest.raises(SchemaError) as err:
        parse_graph(b'{"root": "middle", "edges": []}')
    assert "root" in str(err.value)


def test_invariant_from_json():
    with pytest.raises(InvariantViolation):
        parse_graph(b'{"root": "center", "central_mass": "0", '
                    b'"edges": [{"lengths": ["1"], "masses": ["1"]}, '
                    b'{"lengths": ["1"], "masses": []}]}')


def test_graph_serialization_roundtrip(rng):
    for _ in range(20):
        g = random_center_graph(rng)
        assert parse_graph(serialize_graph(g)) == g
        h = random_pendant_graph(rng)
        assert parse_graph(serialize_graph(h)) == h


def test_graph_serialization_deterministic(rng):
    g = random_center_graph(rng)
    assert serialize_graph(g) == serialize_graph(g)


def test_spectra_roundtrip():
    s = SpectrumPair(((F(1, 2), 1), (F(2), 2)), ((F(1), 1),))
    assert parse_spectra(serialize_spectra(s)) == s


def test_spectra_decimal_parsing():
    s = parse_spectra(b'{"neumann_squared": [{"value": "0.5", "mult": 1}], '
                      b'"dirichlet_squared": []}')
    assert s.neumann_sq == ((F(1, 2), 1),)


def test_spectra_reject_nonpositive():
    with pytest.raises(InvariantViolation):
        SpectrumPair(((F(0), 1),), ())


def test_spectra_merge_duplicates():
    s = SpectrumPair(((F(2), 1), (F(2), 1)), ())
    assert s.neumann_sq == ((F(2), 2),)


def test_plan_roundtrip():
    p = ReconstructionPlan(
        partition=((0,), (0, 1)),
        residue_split=((F(2), (F(2, 3), F(1, 3))),),
    )
    assert parse_plan(serialize_plan(p)) == p


def test_plan_split_lookup():
    p = parse_plan(b'{"residue_split": {"2": ["2/3", "1/3"]}}')
    assert p.split_for(F(2)) == (F(2, 3), F(1, 3))
    assert p.split_for(F(3)) is None


def test_mass_counts(rng):
    g = random_pendant_graph(rng)
    n = g.main_edge.mass_count + sum(e.mass_count for e in g.edges)
    assert g.point_mass_count == n
    assert g.spectral_size == n + (1 if g.central_mass > 0 else 0)
