"""Geometry built from a world function alone.

A world function ``sigma(P, Q)`` is half the squared distance between two
points and may be negative. Scalar products, lengths, geometric objects,
flat coordinates and embeddability verdicts are all derived from it.
"""

from .collinearity import (
    ConeSample,
    CollinearityVerdict,
    Orientation,
    cone_sample,
    fibonacci_directions,
    is_collinear,
    tube_through_point_member,
)
from .errors import (
    ContractError,
    DomainError,
    NoBasisError,
    TableValidationError,
    TGeometryError,
    UnsupportedOperation,
)
from .objects import (
    EnvelopeEval,
    EnvelopeObject,
    GridSample,
    TubeClass,
    classify_tube,
    envelope_value,
    evaluate_envelope,
    grid_sample,
    tube_member,
    tube_section_member,
)
from .reconstruct import (
    EmbeddabilityReport,
    ReconstructionFrame,
    build_frame,
    coordinates,
    detect_dimension,
    menger_embed_test,
    sigma_from_coords,
    verify_conditions,
)
from .sigma_core import (
    TOL_REL,
    Multivector,
    SignedLength,
    gamma,
    gram_det,
    gram_matrix,
    mv_length,
    mv_scalar_product,
    restrict,
    sigma,
    squared_length,
    two_point_scalar,
)
from .spaces import (
    AffineCap,
    BallComplement,
    DeformedSpace,
    EuclideanSpace,
    HalfSpace,
    MinkowskiSpace,
    IdSubset,
    PredicateRegion,
    Quadratic,
    RestrictedSpace,
    Scale,
    SigmaSpace,
    TabulatedSpace,
    make_euclidean,
    make_minkowski,
    make_tabulated,
    metric_from_sigma_fd,
    space_from_spec,
    tabulate,
    uniform_points,
)

__version__ = "0.1.0"

__all__ = [
    "ConeSample",
    "CollinearityVerdict",
    "Orientation",
    "cone_sample",
    "fibonacci_directions",
    "is_collinear",
    "tube_through_point_member",
    "ContractError",
    "DomainError",
    "NoBasisError",
    "TableValidationError",
    "TGeometryError",
    "UnsupportedOperation",
    "EnvelopeEval",
    "EnvelopeObject",
    "GridSample",
    "TubeClass",
    "classify_tube",
    "envelope_value",
    "evaluate_envelope",
    "grid_sample",
    "tube_member",
    "tube_section_member",
    "EmbeddabilityReport",
    "ReconstructionFrame",
    "build_frame",
    "coordinates",
    "detect_dimension",
    "menger_embed_test",
    "sigma_from_coords",
    "verify_conditions",
    "TOL_REL",
    "Multivector",
    "SignedLength",
    "gamma",
    "gram_det",
    "gram_matrix",
    "mv_length",
    "mv_scalar_product",
    "restrict",
    "sigma",
    "squared_length",
    "two_point_scalar",
    "AffineCap",
    "BallComplement",
    "DeformedSpace",
    "EuclideanSpace",
    "HalfSpace",
    "MinkowskiSpace",
    "IdSubset",
    "PredicateRegion",
    "Quadratic",
    "RestrictedSpace",
    "Scale",
    "SigmaSpace",
    "TabulatedSpace",
    "make_euclidean",
    "make_minkowski",
    "make_tabulated",
    "metric_from_sigma_fd",
    "space_from_spec",
    "tabulate",
    "uniform_points",
]
