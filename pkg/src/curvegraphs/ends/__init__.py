"""End spaces, characteristic systems and the finite-invariance index."""

from .space import (
    Cantor,
    CharSpace,
    Empty,
    EmptyCase,
    Finite,
    NotCountable,
    Union,
    cardinality,
    cb_derivative,
    characteristic_system,
    is_countable,
    leaves,
    make_union,
    normalize,
)
from .surfaces import (
    CATALOG,
    INF,
    DescriptorSyntax,
    Exact,
    FiniteTypeInput,
    Infinity,
    LowerBound,
    SurfaceDescriptor,
    UnknownName,
    catalog_name,
    classify_fii_zero,
    fii,
    invariant_collection_bound,
    named_surface,
    parse_descriptor,
    parse_end_term,
    surface,
)
