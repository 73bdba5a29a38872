"""Coarse geometry of finitely generated monoids, in exact rational arithmetic.

Word semimetrics, continuous Cayley graphs, quasi-isometry and action
property checkers, and a constructive generating-set extraction with
verified constants.
"""

__version__ = "0.1.0"

from .errors import (
    FactorizationFailed,
    HorizonTooSmall,
    HypothesisFailed,
    InvalidElement,
    InvalidLetter,
    MonoidGeoError,
    NonTerminating,
    NoPath,
    SpecParseError,
    SpecValidationError,
    UndefinedProduct,
)
from .extnum import (
    INF,
    ZERO,
    ExtNonNeg,
    TruncatedDistance,
    ext_add,
    ext_compare,
    ext_max,
    ext_min,
    ext_scale,
    truncated_min,
)
from .monoids import (
    FiniteGroup,
    FreeMonoid,
    FreeProductElem,
    FreeProductMonoid,
    MonoidOracle,
    RewritingMonoid,
    SubmonoidOracle,
    SubmonoidSpec,
    TableMonoid,
    Verdict,
    Word,
    bicyclic_monoid,
    check_cancellative,
    check_finite_geometric_type,
    check_left_unitary,
    cyclic_group,
    ends_in_group_identity_submonoid,
    format_word,
    free_product_normal_form,
    from_spec_dict,
    rewrite_normal_form,
    trivial_monoid,
    zero_monoid,
)
from .cayley import (
    CayleyPoint,
    CellSet,
    EdgePoint,
    GammaOracle,
    Segment,
    Vertex,
    check_inclusion_qi,
    gamma_distance,
    gamma_set_distance,
    geodesic_witness,
    parse_point,
    shortest_word,
    word_distance,
)
from .spaces import (
    PathWitness,
    QiParams,
    SemimetricSpace,
    Violation,
    ViolationReport,
    WordMetricSpace,
    ball,
    check_axioms,
    check_qi_embedding,
    check_quasi_dense,
    check_quasi_metric,
    is_geodesic_witness,
    set_distance,
    validate_path_witness,
)
from .actions import (
    ActionOracle,
    PropertyReport,
    apply_translation,
    check_action_laws,
    check_cobounded,
    check_idealistic,
    check_isometric_embedding_action,
    compute_contact_set,
    translation_action,
)
from .svarcmilnor import (
    FreeProductInput,
    SmInput,
    SmReport,
    SubmonoidInput,
    extract_generators,
    factor_over_generators,
    run_free_product,
    run_pipeline,
    run_submonoid_theorem,
    verify_generation_bound,
    verify_qi_bounds,
)
