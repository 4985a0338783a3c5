"""Exact direct and inverse Dirichlet/Neumann spectral problems for star
graphs of Stieltjes strings."""

from .errors import (
    BadShape,
    DivisionByZero,
    InvariantViolation,
    IrrationalPole,
    MainTooLong,
    NotIsolating,
    NotStieltjes,
    PlanInfeasible,
    RangeError,
    RequiresPositiveCentralMass,
    SchemaError,
    StarStringError,
    Unresolved,
)
from .forward import (
    CauerPair,
    Flavor,
    branching_quotient,
    center_quotient,
    center_quotient_identity,
    char_polys_center,
    char_polys_pendant,
    edge_cauer_polys,
    edge_quotient,
    graph_spectra,
    lagrange_check,
    main_cauer_polys,
    neumann_monotonicity,
    pendant_quotient,
    pendant_subgraph_identities,
    spectrum_of,
    total_length_identity,
)
from .inverse_center import (
    build_psi,
    enumerate_constraints,
    plan_partition,
    reconstruct_center,
    reconstruct_center_grouped,
    validate_center,
)
from .inverse_pendant import (
    build_phi,
    decompose_main,
    decompose_main_from_quotient,
    reconstruct_pendant,
    validate_pendant,
)
from .matrixize import (
    RationalMatrix,
    build_pencil,
    interlacing_certificate,
    pencil_det,
)
from .model import (
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
from .poly import Poly, poly_gcd, squarefree_factor, squarefree_part
from .rational import Rational, format_rational, parse_rational
from .ratfun import (
    PartialFractions,
    RationalFunction,
    StieltjesCF,
    cf_expand,
    cf_tail,
    cf_to_ratfun,
    partial_fractions,
    ratfun_normalize,
    validate_s0,
)
from .roots import RootVal, isolate_real_roots, refine_root, simplest_in_open

__version__ = "0.1.0"
