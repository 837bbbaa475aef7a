"""Exact-arithmetic lattice toolkit: even lattices, root systems, small-cone
wall decompositions on the positive cone, Pell isometries and orbit counts,
and period-fiber cardinalities."""

from .certify import InconclusiveSearchError, wall_realizability_embedded
from .cones import (
    ChamberComparison,
    ConeError,
    InfiniteWallsError,
    IrrationalVector,
    OnWallError,
    RegionError,
    SmallConeFan,
    Wall,
    dolgachev_comparison,
    fiber_cardinality,
    is_period_generic,
    locate_small_cone,
    null_boundary_rays,
    positive_cone_vector,
    rational_h,
    same_small_cone,
    small_cones_rank2,
    surd_h,
    very_irrational,
    wall_candidates_abstract,
)
from .embeddings import (
    Embedding,
    EmbeddingError,
    SpanContainsVectorError,
    identity_embedding,
    is_primitive,
    orthogonal_complement,
    project_to_domain,
    saturate,
    span_with_vector,
    sublattice_embedding,
)
from .lattices import (
    DegenerateLatticeError,
    Lattice,
    LatticeError,
    determinant,
    direct_sum,
    discriminant_group,
    dual_coords,
    inner,
    is_hyperbolic,
    is_negative_definite,
    is_unimodular,
    make_ADE,
    make_E8,
    make_K3,
    make_pell,
    make_U,
    make_U_scaled,
    norm,
    signature,
)
from .numeric import QuadraticSurd, Rational, snf, surd_sign, symmetric_diagonalize
from .pell import (
    IsometryError,
    OrbitCount,
    PellUnit,
    isometry_report,
    orbit_count_rank2,
    pell_fundamental,
    pell_isometry,
    translate_wall,
)
from .roots import (
    ADEType,
    RootSystem,
    ade_type,
    chamber_reduce,
    enumerate_roots,
    has_root_orthogonal_to,
    positive_system,
    reflect,
    weyl_order,
)

__version__ = "0.1.0"
