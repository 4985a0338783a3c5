"""CLI surface: exit codes, file formats, determinism."""

import json

import pytest

from starstring.cli import main

EX_SPECTRA = {
    "neumann_squared": [
        {"value": "0.5", "mult": 1},
        {"value": "3/2", "mult": 1},
        {"value": "2", "mult": 1},
    ],
    "dirichlet_squared": [
        {"value": "1", "mult": 1},
        {"value": "2", "mult": 2},
    ],
}

EX_GRAPH = {
    "root": "pendant",
    "central_mass": "0",
    "main_edge": {"lengths": ["1", "1"], "masses": ["1"]},
    "edges": [
        {"lengths": ["2/3", "4/3"], "masses": ["9/8"]},
        {"lengths": ["2/3", "1/3"], "masses": ["9/4"]},
    ],
}


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def ex_files(tmp_path):
    spectra = write(tmp_path / "spectra.json", EX_SPECTRA)
    plan = write(tmp_path / "plan.json", {"residue_split": {"2": ["2/3", "1/3"]}})
    return tmp_path, spectra, plan


def test_inverse_pendant_golden(ex_files):
    tmp, spectra, plan = ex_files
    out = tmp / "graph.json"
    code = main([
        "inverse-pendant", "--spectra", spectra, "--main-length", "2",
        "--lengths", "2,1", "--plan", plan, "--out", str(out),
    ])
    assert code == 0
    assert json.loads(out.read_text()) == EX_GRAPH
    details = json.loads((tmp / "graph.plan.json").read_text())
    assert details["gamma"] == "8/3"
    assert details["cf"] == {"a": ["1", "4/3", "1/3"], "b": ["1", "3"]}


def test_forward_golden(ex_files, tmp_path):
    graph = write(tmp_path / "g.json", EX_GRAPH)
    out = tmp_path / "spectra_out.json"
    code = main(["forward", "--graph", graph, "--out", str(out)])
    assert code == 0
    got = json.loads(out.read_text())
    assert got == {
        "neumann_squared": [
            {"value": "1/2", "mult": 1},
            {"value": "3/2", "mult": 1},
            {"value": "2", "mult": 1},
        ],
        "dirichlet_squared": [
            {"value": "1", "mult": 1},
            {"value": "2", "mult": 2},
        ],
    }


def test_forward_deterministic(ex_files, tmp_path):
    graph = write(tmp_path / "g.json", EX_GRAPH)
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["forward", "--graph", graph, "--out", str(out1)]) == 0
    assert main(["forward", "--graph", graph, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_forward_emit_polys(ex_files, tmp_path):
    graph = write(tmp_path / "g.json", EX_GRAPH)
    out = tmp_path / "s.json"
    assert main(["forward", "--graph", graph, "--out", str(out), "--emit-polys"]) == 0
    polys = json.loads((tmp_path / "s.polys.json").read_text())
    assert set(polys) == {"phi_neumann", "phi_dirichlet"}


def test_forward_irrational_intervals(tmp_path):
    graph = write(tmp_path / "g.json", {
        "root": "center", "central_mass": "0",
        "edges": [
            {"lengths": ["1", "1", "1"], "masses": ["1", "2"]},
            {"lengths": ["1"], "masses": []},
        ],
    })
    out = tmp_path / "s.json"
    assert main(["forward", "--graph", graph, "--out", str(out),
                 "--refine-width", "1/1024"]) == 0
    got = json.loads(out.read_text())
    for entry in got["neumann_squared"]:
        assert "value" in entry or "interval" in entry


def test_inverse_center_with_enumerate(tmp_path):
    spectra = write(tmp_path / "s.json", {
        "neumann_squared": [{"value": "1", "mult": 1}, {"value": "2", "mult": 1}],
        "dirichlet_squared": [{"value": "2", "mult": 2}],
    })
    out = tmp_path / "g.json"
    code = main(["inverse-center", "--spectra", spectra, "--lengths", "2,1",
                 "--out", str(out), "--enumerate"])
    assert code == 0
    graph = json.loads(out.read_text())
    assert graph["root"] == "center"
    constraints = json.loads((tmp_path / "g.constraints.json").read_text())
    assert constraints["poles"][0]["total_residue"] == "3"
    plan = json.loads((tmp_path / "g.plan.json").read_text())
    assert plan["assignments"][0]["shares"] == ["1/2", "1/2"]


def test_validate_failure_exit_code(tmp_path):
    spectra = write(tmp_path / "bad.json", {
        "neumann_squared": [{"value": "1", "mult": 1}],
        "dirichlet_squared": [{"value": "1", "mult": 1}],
    })
    out = tmp_path / "report.json"
    code = main(["validate", "--spectra", spectra, "--root", "pendant",
                 "--main-length", "1", "--lengths", "1", "--out", str(out)])
    assert code == 2
    report = json.loads(out.read_text())
    assert report["valid"] is False


def test_validate_success(tmp_path):
    spectra = write(tmp_path / "s.json", EX_SPECTRA)
    out = tmp_path / "report.json"
    code = main(["validate", "--spectra", spectra, "--root", "pendant",
                 "--main-length", "2", "--lengths", "2,1", "--out", str(out)])
    assert code == 0


def test_roundtrip_graph(tmp_path):
    graph = write(tmp_path / "g.json", EX_GRAPH)
    out = tmp_path / "verdict.json"
    assert main(["verify-roundtrip", "--graph", graph, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["pass"] is True


def test_roundtrip_spectra(ex_files):
    tmp, spectra, plan = ex_files
    out = tmp / "verdict.json"
    code = main(["verify-roundtrip", "--spectra", spectra, "--root", "pendant",
                 "--main-length", "2", "--lengths", "2,1", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["pass"] is True


def test_inverse_pendant_enumerate(ex_files):
    tmp, spectra, plan = ex_files
    out = tmp / "graph.json"
    code = main([
        "inverse-pendant", "--spectra", spectra, "--main-length", "2",
        "--lengths", "2,1", "--out", str(out), "--enumerate",
    ])
    assert code == 0
    constraints = json.loads((tmp / "graph.constraints.json").read_text())
    # the subgraph data is rational here, so the cross-check report is present
    assert constraints["subgraph_report"]["valid"] is True


def test_matrix_command(tmp_path):
    graph = write(tmp_path / "g.json", {
        "root": "center", "central_mass": "1",
        "edges": [
            {"lengths": ["1", "1"], "masses": ["1"]},
            {"lengths": ["1", "1"], "masses": ["1"]},
        ],
    })
    out = tmp_path / "pencil.json"
    assert main(["matrix", "--graph", graph, "--out", str(out)]) == 0
    pencil = json.loads(out.read_text())
    assert pencil["dim"] == 3
    cert = json.loads((tmp_path / "pencil.certificate.json").read_text())
    assert cert["ok"] is True


def test_matrix_rejects_massless_center(tmp_path):
    graph = write(tmp_path / "g.json", {
        "root": "center", "central_mass": "0",
        "edges": [
            {"lengths": ["1", "1"], "masses": ["1"]},
            {"lengths": ["1", "1"], "masses": ["1"]},
        ],
    })
    assert main(["matrix", "--graph", graph, "--out", str(tmp_path / "p.json")]) == 1


def test_schema_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["forward", "--graph", str(bad), "--out", str(tmp_path / "o.json")]) == 1


def test_frequency_output(tmp_path):
    graph = write(tmp_path / "g.json", {
        "root": "center", "central_mass": "1",
        "edges": [{"lengths": ["1"], "masses": []}, {"lengths": ["1"], "masses": []}],
    })
    out = tmp_path / "f.json"
    assert main(["forward", "--graph", graph, "--out", str(out),
                 "--as-frequencies", "--digits", "4"]) == 0
    got = json.loads(out.read_text())
    assert got["approximate"] is True
    # single eigenvalue 2: frequencies -sqrt(2), sqrt(2)
    assert got["neumann_frequencies"] == ["-1.4142", "1.4142"]
