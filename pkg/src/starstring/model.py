"""Domain model: edges, star graphs, spectra, reconstruction plans.

Conventions
-----------
A star graph has q strings joined at a central vertex carrying a mass
M >= 0.  The root (where the Neumann/Dirichlet condition is toggled) is
either the centre or one pendant vertex; in the latter case the string
incident to the root is the main edge.

Each edge stores its intervals and point masses in the order of its own
driving-point continued fraction:

* non-main edges: ``lengths[0]`` abuts the central vertex, the last
  interval ends at the clamped pendant;
* the main edge: ``lengths[0]`` abuts the root, the last interval ends at
  the centre.

In both cases ``masses[k]`` sits between ``lengths[k]`` and
``lengths[k+1]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvariantViolation, SchemaError
from .rational import format_rational, parse_rational


class Root(Enum):
    CENTER = "center"
    PENDANT = "pendant"


@dataclass(frozen=True)
class Edge:
    """One Stieltjes string: n+1 intervals separated by n point masses."""

    lengths: tuple
    masses: tuple

    def __post_init__(self):
        lengths = tuple(Fraction(x) for x in self.lengths)
        masses = tuple(Fraction(x) for x in self.masses)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "masses", masses)
        if len(lengths) != len(masses) + 1:
            raise InvariantViolation(
                f"edge needs one more interval than masses, got {len(lengths)} vs {len(masses)}"
            )
        if any(x <= 0 for x in lengths) or any(x <= 0 for x in masses):
            raise InvariantViolation("edge intervals and masses must be positive")

    @property
    def mass_count(self):
        return len(self.masses)

    @property
    def total_length(self):
        return sum(self.lengths, Fraction(0))

    def to_json(self):
        return {
            "lengths": [format_rational(x) for x in self.lengths],
            "masses": [format_rational(x) for x in self.masses],
        }

    @staticmethod
    def from_json(obj, context="edge"):
        if not isinstance(obj, dict):
            raise SchemaError(f"{context}: expected object")
        try:
            lengths = [parse_rational(x, f"{context}.lengths") for x in obj["lengths"]]
            masses = [parse_rational(x, f"{context}.masses") for x in obj["masses"]]
        except KeyError as exc:
            raise SchemaError(f"{context}: missing field {exc}") from exc
        return Edge(tuple(lengths), tuple(masses))


@dataclass(frozen=True)
class StarGraph:
    root: Root
    central_mass: Fraction
    edges: tuple  # non-main edges
    main_edge: Edge | None = None

    def __post_init__(self):
        object.__setattr__(self, "central_mass", Fraction(self.central_mass))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.central_mass < 0:
            raise InvariantViolation("central mass must be >= 0")
        if self.root is Root.CENTER:
            if self.main_edge is not None:
                raise InvariantViolation("centre-rooted graph has no main edge")
            if len(self.edges) < 2:
                raise InvariantViolation("centre-rooted graph needs at least 2 edges")
        else:
            if self.main_edge is None:
                raise InvariantViolation("pendant-rooted graph needs a main edge")
            if len(self.edges) < 1:
                raise InvariantViolation("pendant-rooted graph needs a non-main edge")

    @property
    def edge_count(self):
        return len(self.edges) + (1 if self.main_edge is not None else 0)

    @property
    def point_mass_count(self):
        n = sum(e.mass_count for e in self.edges)
        if self.main_edge is not None:
            n += self.main_edge.mass_count
        return n

    @property
    def spectral_size(self):
        """Total number of masses counting the central one when present."""
        return self.point_mass_count + (1 if self.central_mass > 0 else 0)

    def to_json(self):
        obj = {
            "root": self.root.value,
            "central_mass": format_rational(self.central_mass),
        }
        if self.main_edge is not None:
            obj["main_edge"] = self.main_edge.to_json()
        obj["edges"] = [e.to_json() for e in self.edges]
        return obj

    @staticmethod
    def from_json(obj, context="graph"):
        if not isinstance(obj, dict):
            raise SchemaError(f"{context}: expected object")
        root_raw = obj.get("root")
        if root_raw not in ("center", "pendant"):
            raise SchemaError(f"{context}.root: expected 'center' or 'pendant', got {root_raw!r}")
        root = Root(root_raw)
        central = parse_rational(obj.get("central_mass", "0"), f"{context}.central_mass")
        edges_raw = obj.get("edges")
        if not isinstance(edges_raw, list):
            raise SchemaError(f"{context}.edges: expected array")
        edges = tuple(
            Edge.from_json(e, f"{context}.edges[{i}]") for i, e in enumerate(edges_raw)
        )
        main = None
        if root is Root.PENDANT:
            if "main_edge" not in obj:
                raise SchemaError(f"{context}.main_edge: required for pendant root")
            main = Edge.from_json(obj["main_edge"], f"{context}.main_edge")
        elif "main_edge" in obj:
            raise SchemaError(f"{context}.main_edge: not allowed for centre root")
        return StarGraph(root, central, edges, main)


@dataclass(frozen=True)
class SpectrumPair:
    """Two multisets of positive squared eigenvalues, stored sorted."""

    neumann_sq: tuple  # ((value, mult), ...)
    dirichlet_sq: tuple

    def __post_init__(self):
        object.__setattr__(self, "neumann_sq", _canonical_multiset(self.neumann_sq, "neumann"))
        object.__setattr__(self, "dirichlet_sq", _canonical_multiset(self.dirichlet_sq, "dirichlet"))

    @property
    def neumann_count(self):
        return sum(m for _, m in self.neumann_sq)

    @property
    def dirichlet_count(self):
        return sum(m for _, m in self.dirichlet_sq)

    def neumann_values(self):
        return [v for v, m in self.neumann_sq for _ in range(m)]

    def dirichlet_values(self):
        return [v for v, m in self.dirichlet_sq for _ in range(m)]

    def to_json(self):
        return {
            "neumann_squared": _multiset_json(self.neumann_sq),
            "dirichlet_squared": _multiset_json(self.dirichlet_sq),
        }

    @staticmethod
    def from_json(obj, context="spectra"):
        if not isinstance(obj, dict):
            raise SchemaError(f"{context}: expected object")
        for key in ("neumann_squared", "dirichlet_squared"):
            if key not in obj:
                raise SchemaError(f"{context}.{key}: missing")
        return SpectrumPair(
            _multiset_from_json(obj["neumann_squared"], f"{context}.neumann_squared"),
            _multiset_from_json(obj["dirichlet_squared"], f"{context}.dirichlet_squared"),
        )


def _canonical_multiset(entries, name):
    merged = {}
    for value, mult in entries:
        v = Fraction(value)
        if v <= 0:
            raise InvariantViolation(f"{name}: squared eigenvalues must be positive, got {v}")
        if not isinstance(mult, int) or mult < 1:
            raise InvariantViolation(f"{name}: multiplicity must be a positive integer")
        merged[v] = merged.get(v, 0) + mult
    return tuple(sorted(merged.items()))


def _multiset_json(entries):
    return [{"value": format_rational(v), "mult": m} for v, m in entries]


def _multiset_from_json(arr, context):
    if not isinstance(arr, list):
        raise SchemaError(f"{context}: expected array")
    out = []
    for i, item in enumerate(arr):
        if not isinstance(item, dict):
            raise SchemaError(f"{context}[{i}]: expected object")
        if "value" not in item:
            raise SchemaError(f"{context}[{i}].value: missing (exact input required)")
        value = parse_rational(item["value"], f"{context}[{i}].value")
        mult = item.get("mult", 1)
        if not isinstance(mult, int) or mult < 1:
            raise SchemaError(f"{context}[{i}].mult: expected positive integer")
        out.append((value, mult))
    return tuple(out)


@dataclass(frozen=True)
class ReconstructionPlan:
    """Explicit control of the reconstruction's non-uniqueness.

    ``partition`` lists, for each distinct Dirichlet value in ascending
    order, the edge indices receiving its occurrences (one index per
    occurrence, all distinct).  ``residue_split`` maps a pole value to the
    positive fractions of its residue given to the holding edges, in the
    same order; the fractions must sum to 1.
    """

    partition: tuple | None = None  # ((edge_idx, ...) per sorted distinct value)
    residue_split: tuple | None = None  # ((value, (share, ...)), ...)

    def split_for(self, value):
        if self.residue_split is None:
            return None
        for v, shares in self.residue_split:
            if v == value:
                return shares
        return None

    def to_json(self):
        obj = {}
        if self.partition is not None:
            obj["partition"] = [list(t) for t in self.partition]
        if self.residue_split is not None:
            obj["residue_split"] = {
                format_rational(v): [format_rational(s) for s in shares]
                for v, shares in self.residue_split
            }
        return obj

    @staticmethod
    def from_json(obj, context="plan"):
        if not isinstance(obj, dict):
            raise SchemaError(f"{context}: expected object")
        partition = None
        if "partition" in obj and obj["partition"] is not None:
            raw = obj["partition"]
            if not isinstance(raw, list):
                raise SchemaError(f"{context}.partition: expected array of arrays")
            partition = []
            for i, entry in enumerate(raw):
                if not isinstance(entry, list) or not all(isinstance(e, int) for e in entry):
                    raise SchemaError(f"{context}.partition[{i}]: expected array of edge indices")
                partition.append(tuple(entry))
            partition = tuple(partition)
        split = None
        if "residue_split" in obj and obj["residue_split"] is not None:
            raw = obj["residue_split"]
            if not isinstance(raw, dict):
                raise SchemaError(f"{context}.residue_split: expected object")
            split = tuple(
                sorted(
                    (
                        parse_rational(k, f"{context}.residue_split key"),
                        tuple(parse_rational(s, f"{context}.residue_split[{k}]") for s in v),
                    )
                    for k, v in raw.items()
                )
            )
        return ReconstructionPlan(partition, split)


# ---------------------------------------------------------------------------
# byte-level serialization (lossless, deterministic)


def _dump(obj):
    return (json.dumps(obj, indent=2) + "\n").encode()


def _load(data, context):
    if isinstance(data, bytes):
        data = data.decode()
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{context}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def serialize_graph(graph):
    return _dump(graph.to_json())


def parse_graph(data):
    return StarGraph.from_json(_load(data, "graph"))


def serialize_spectra(spectra):
    return _dump(spectra.to_json())


def parse_spectra(data):
    return SpectrumPair.from_json(_load(data, "spectra"))


def serialize_plan(plan):
    return _dump(plan.to_json())


def parse_plan(data):
    return ReconstructionPlan.from_json(_load(data, "plan"))
