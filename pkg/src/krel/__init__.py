"""Exact calculus of linear relations between finite-dimensional Krein spaces."""
from . import errors as _errors
from .errors import *  # noqa: F401,F403
from .generators import Gen, GeneratorConfig
from .green import (
    GreensBoundaryRelation,
    build_gbr,
    classify_boundary,
    is_minimal,
    main_transformation,
    inverse_main_transformation,
    nevanlinna_negative_squares,
    weyl_family,
)
from .harness import PropertyReport, SUITE_IDS, replay, run_suite
from .relations import (
    LinearRelation,
    adjoint,
    classify_relation,
    finite_eigenvalues,
    graph_of,
    relation,
)
from .scalars import EXACT, Gaussian, float_mode, parse_scalar
from .spaces import KreinSpace, Subspace, hilbert_space, krein_space, product_space, span

__version__ = "0.1.0"

__all__ = [
    "Gen",
    "GeneratorConfig",
    "GreensBoundaryRelation",
    "build_gbr",
    "classify_boundary",
    "is_minimal",
    "main_transformation",
    "inverse_main_transformation",
    "nevanlinna_negative_squares",
    "weyl_family",
    "PropertyReport",
    "SUITE_IDS",
    "replay",
    "run_suite",
    "LinearRelation",
    "adjoint",
    "classify_relation",
    "finite_eigenvalues",
    "graph_of",
    "relation",
    "EXACT",
    "Gaussian",
    "float_mode",
    "parse_scalar",
    "KreinSpace",
    "Subspace",
    "hilbert_space",
    "krein_space",
    "product_space",
    "span",
] + list(_errors.__all__)
