"""Command-line front end.

Subcommands: forward, inverse-center, inverse-pendant, validate,
verify-roundtrip, matrix.  Inputs and outputs are the JSON formats of the
model module; all values are exact rationals unless a decimal output mode
is requested (decimal output is explicitly labelled approximate).  Output
is deterministic: identical inputs produce byte-identical files.

Exit status: 0 success, 2 validation failure, 1 any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import isqrt
from pathlib import Path

from . import forward as fwd
from . import inverse_center as ic
from . import inverse_pendant as ip
from . import matrixize as mx
from .errors import InvariantViolation, PlanInfeasible, SchemaError, StarStringError
from .model import (
    Root,
    parse_graph,
    parse_plan,
    parse_spectra,
    serialize_graph,
)
from .rational import format_rational, parse_rational

DEFAULT_REFINE_WIDTH = Fraction(1, 1 << 64)


def _dump_json(obj):
    return (json.dumps(obj, indent=2) + "\n").encode()


def _write(path, data):
    if path is None:
        sys.stdout.buffer.write(data)
    else:
        Path(path).write_bytes(data)


def _write_sibling(out, suffix, data):
    if out is None:
        sys.stdout.buffer.write(data)
    else:
        base = Path(out)
        _write(base.with_name(base.stem + suffix + base.suffix), data)


def _read(path, what):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {what} file {path}: {exc}") from exc


def _parse_lengths(text):
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise SchemaError("--lengths: expected a comma-separated list of rationals")
    return [parse_rational(s.strip(), "--lengths") for s in items]


# ---------------------------------------------------------------------------
# spectra formatting


def _decimal_sqrt(value, digits):
    """Floor of sqrt(value) with ``digits`` decimal places, as a string."""
    scaled = value * 10 ** (2 * digits)
    root = isqrt(scaled.numerator // scaled.denominator)
    text = str(root).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}" if digits else text


def _decimal_of(value, digits):
    scaled = value * 10 ** digits
    whole = scaled.numerator // scaled.denominator
    sign = "-" if whole < 0 else ""
    text = str(abs(whole)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def _root_entry(rv, mult, width):
    if rv.is_rational:
        return {"value": format_rational(rv.rat), "mult": mult}
    rv.refine_to_width(width)
    lo, hi = rv.bounds()
    return {"interval": [format_rational(lo), format_rational(hi)], "mult": mult}


def _midpoint(rv, width):
    if rv.is_rational:
        return rv.rat
    rv.refine_to_width(width)
    lo, hi = rv.bounds()
    return (lo + hi) / 2


def _spectra_json(neumann, dirichlet, args):
    width = args.refine_width
    if args.as_frequencies:
        digits = args.digits or 12
        out = {"approximate": True, "digits": digits}
        for key, roots in (("neumann_frequencies", neumann), ("dirichlet_frequencies", dirichlet)):
            freqs = []
            for rv, mult in reversed(roots):
                r = _decimal_sqrt(_midpoint(rv, width), digits)
                for _ in range(mult):
                    freqs.append("-" + r)
            for rv, mult in roots:
                r = _decimal_sqrt(_midpoint(rv, width), digits)
                for _ in range(mult):
                    freqs.append(r)
            out[key] = freqs
        return out
    if args.digits:
        return {
            "approximate": True,
            "digits": args.digits,
            "neumann_squared": [
                {"value": _decimal_of(_midpoint(rv, width), args.digits), "mult": m}
                for rv, m in neumann
            ],
            "dirichlet_squared": [
                {"value": _decimal_of(_midpoint(rv, width), args.digits), "mult": m}
                for rv, m in dirichlet
            ],
        }
    return {
        "neumann_squared": [_root_entry(rv, m, width) for rv, m in neumann],
        "dirichlet_squared": [_root_entry(rv, m, width) for rv, m in dirichlet],
    }


def _poly_json(p):
    return [format_rational(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_forward(args):
    graph = parse_graph(_read(args.graph, "graph"))
    neumann, dirichlet = fwd.graph_spectra(graph)
    _write(args.out, _dump_json(_spectra_json(neumann, dirichlet, args)))
    if args.emit_polys:
        if graph.root is Root.CENTER:
            phi_n, phi_d = fwd.char_polys_center(graph)
        else:
            phi_d, phi_n = fwd.char_polys_pendant(graph)
        _write_sibling(args.out, ".polys", _dump_json({
            "phi_neumann": _poly_json(phi_n),
            "phi_dirichlet": _poly_json(phi_d),
        }))
    return 0


def _cmd_inverse_center(args):
    spectra = parse_spectra(_read(args.spectra, "spectra"))
    lengths = _parse_lengths(args.lengths)
    plan = parse_plan(_read(args.plan, "plan")) if args.plan else None
    report = ic.validate_center(spectra, len(lengths))
    if not report.valid:
        _write_sibling(args.out, ".report", _dump_json(report.to_json()))
        return 2
    rec = ic.reconstruct_center(spectra, lengths, plan, validate=False)
    _write(args.out, serialize_graph(rec.graph))
    plan_out = rec.plan_used.to_json()
    plan_out["reusable_plan"] = rec.plan_used.as_plan().to_json()
    _write_sibling(args.out, ".plan", _dump_json(plan_out))
    if args.enumerate:
        _write_sibling(
            args.out, ".constraints",
            _dump_json(ic.enumerate_constraints(spectra, lengths, plan)),
        )
    return 0


def _cmd_inverse_pendant(args):
    spectra = parse_spectra(_read(args.spectra, "spectra"))
    lengths = _parse_lengths(args.lengths)
    main_length = parse_rational(args.main_length, "--main-length")
    plan = parse_plan(_read(args.plan, "plan")) if args.plan else None
    report = ip.validate_pendant(spectra, main_length, lengths)
    if not report.valid:
        _write_sibling(args.out, ".report", _dump_json(report.to_json()))
        return 2
    rec = ip.reconstruct_pendant(spectra, main_length, lengths, plan, validate=False)
    _write(args.out, serialize_graph(rec.graph))
    details = {
        "gamma": format_rational(rec.decomposition.gamma),
        "cf": rec.decomposition.cf.to_json(),
        "main_mass_count": rec.decomposition.main_mass_count,
        "tail_constant": format_rational(rec.decomposition.tail_constant),
        "central_mass": format_rational(rec.graph.central_mass),
        "common_zeros": [
            {"value": format_rational(v), "mult": m}
            for v, m in rec.decomposition.common_zeros
        ],
    }
    if rec.subgraph_plan is not None:
        details["subgraph_plan"] = rec.subgraph_plan.to_json()
        details["subgraph_plan"]["reusable_plan"] = rec.subgraph_plan.as_plan().to_json()
    _write_sibling(args.out, ".plan", _dump_json(details))
    if args.enumerate:
        sub = ip.validate_subgraph_data(rec.decomposition, lengths)
        details_out = {"subgraph_report": None if sub is None else sub.to_json()}
        _write_sibling(args.out, ".constraints", _dump_json(details_out))
    return 0


def _cmd_validate(args):
    spectra = parse_spectra(_read(args.spectra, "spectra"))
    lengths = _parse_lengths(args.lengths)
    if args.root == "center":
        report = ic.validate_center(spectra, len(lengths))
    else:
        if args.main_length is None:
            raise SchemaError("--main-length is required for pendant validation")
        main_length = parse_rational(args.main_length, "--main-length")
        report = ip.validate_pendant(spectra, main_length, lengths)
    _write(args.out, _dump_json(report.to_json()))
    return 0 if report.valid else 2


def _roundtrip_graph(graph):
    if graph.root is Root.CENTER:
        quotient, _ = fwd.center_quotient(graph)
        factors = [
            fwd.edge_cauer_polys(e, fwd.Flavor.DIRICHLET_END).even.monic()
            for e in graph.edges
        ]
        phi_n, _ = fwd.char_polys_center(graph)
        lengths = [e.total_length for e in graph.edges]
        psi = quotient.inverse()
        rebuilt = ic.reconstruct_center_grouped(psi, factors, lengths)
        quotient2, _ = fwd.center_quotient(rebuilt)
        return {
            "mode": "center",
            "pass": quotient2 == quotient,
            "detail": "canonical phi_D/phi_N compared exactly",
        }
    quotient, _ = fwd.pendant_quotient(graph)
    dec = ip.decompose_main_from_quotient(quotient, graph.main_edge.total_length)
    return {
        "mode": "pendant",
        "pass": dec.main == graph.main_edge,
        "detail": "main edge recovered from the spectral quotient",
    }


def _roundtrip_spectra(args, spectra, lengths):
    if args.root == "pendant":
        main_length = parse_rational(args.main_length, "--main-length")
        rec = ip.reconstruct_pendant(spectra, main_length, lengths)
        phi_d, phi_n = fwd.char_polys_pendant(rec.graph)
        got_n, got_d = fwd.spectrum_of(phi_n), fwd.spectrum_of(phi_d)
    else:
        rec = ic.reconstruct_center(spectra, lengths)
        phi_n, phi_d = fwd.char_polys_center(rec.graph)
        got_n, got_d = fwd.spectrum_of(phi_n), fwd.spectrum_of(phi_d)
    ok = _roots_match(got_n, spectra.neumann_sq) and _roots_match(got_d, spectra.dirichlet_sq)
    return {"mode": f"spectra-{args.root}", "pass": ok,
            "detail": "reconstructed graph's spectra compared to the input multisets"}


def _roots_match(roots, expected):
    flat = [(rv, m) for rv, m in roots]
    if len(flat) != len(expected):
        return False
    for (rv, m), (value, mult) in zip(flat, expected):
        if m != mult or not rv.is_rational or rv.rat != value:
            return False
    return True


def _cmd_verify_roundtrip(args):
    if args.graph:
        graph = parse_graph(_read(args.graph, "graph"))
        verdict = _roundtrip_graph(graph)
    else:
        if not args.spectra or not args.lengths:
            raise SchemaError("verify-roundtrip needs --graph or --spectra with --lengths")
        spectra = parse_spectra(_read(args.spectra, "spectra"))
        lengths = _parse_lengths(args.lengths)
        verdict = _roundtrip_spectra(args, spectra, lengths)
    _write(args.out, _dump_json(verdict))
    return 0 if verdict["pass"] else 2


def _cmd_matrix(args):
    graph = parse_graph(_read(args.graph, "graph"))
    L, diag = mx.build_pencil(graph)
    _write(args.out, _dump_json(mx.pencil_to_json(L, diag)))
    cert = mx.interlacing_certificate(L, diag)
    _write_sibling(args.out, ".certificate", _dump_json(cert.to_json()))
    return 0 if cert.ok else 2


# ---------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="starstring",
        description="Direct and inverse Dirichlet/Neumann spectral problems "
                    "for star graphs of Stieltjes strings (exact arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_output(p):
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("forward", help="graph -> spectra")
    p.add_argument("--graph", required=True)
    p.add_argument("--emit-polys", action="store_true",
                   help="also write the characteristic polynomials")
    p.add_argument("--as-frequencies", action="store_true",
                   help="emit +-sqrt(z) decimals instead of exact squared values")
    p.add_argument("--digits", type=int, default=0,
                   help="decimal output with this many places (approximate)")
    p.add_argument("--refine-width", type=Fraction, default=DEFAULT_REFINE_WIDTH,
                   help="interval refinement width for irrational roots")
    common_output(p)
    p.set_defaults(func=_cmd_forward)

    p = sub.add_parser("inverse-center", help="spectra + lengths -> centre-rooted graph")
    p.add_argument("--spectra", required=True)
    p.add_argument("--lengths", required=True, help="comma-separated string lengths")
    p.add_argument("--plan", help="reconstruction plan JSON")
    p.add_argument("--enumerate", action="store_true",
                   help="export the non-uniqueness constraint set")
    common_output(p)
    p.set_defaults(func=_cmd_inverse_center)

    p = sub.add_parser("inverse-pendant", help="spectra + lengths -> pendant-rooted graph")
    p.add_argument("--spectra", required=True)
    p.add_argument("--main-length", required=True)
    p.add_argument("--lengths", required=True, help="comma-separated non-main lengths")
    p.add_argument("--plan", help="reconstruction plan JSON (subgraph stage)")
    p.add_argument("--enumerate", action="store_true")
    common_output(p)
    p.set_defaults(func=_cmd_inverse_pendant)

    p = sub.add_parser("validate", help="check spectral data against the solvability conditions")
    p.add_argument("--spectra", required=True)
    p.add_argument("--root", choices=("center", "pendant"), default="center")
    p.add_argument("--lengths", required=True)
    p.add_argument("--main-length")
    common_output(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("verify-roundtrip", help="inverse(forward) or forward(inverse) identity")
    p.add_argument("--graph")
    p.add_argument("--spectra")
    p.add_argument("--lengths")
    p.add_argument("--root", choices=("center", "pendant"), default="center")
    p.add_argument("--main-length")
    common_output(p)
    p.set_defaults(func=_cmd_verify_roundtrip)

    p = sub.add_parser("matrix", help="stiffness/mass pencil and interlacing certificate")
    p.add_argument("--graph", required=True)
    common_output(p)
    p.set_defaults(func=_cmd_matrix)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvariantViolation, PlanInfeasible) as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": exc.message}) + "\n")
        return 2
    except StarStringError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": exc.message}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
