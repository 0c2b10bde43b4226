"""Exact heights, morphism tests, and measure/dimension verdicts for
rational approximation on polynomial graphs."""

__version__ = "0.1.0"

from .asymptotics import (
    ApproxFunction,
    DimFunction,
    DimensionResult,
    HypothesisReport,
    Outcome,
    Verdict,
    classical_verdict,
    dimension_formula,
    series_verdict,
    validate_hypotheses,
)
from .empirical import (
    Ball,
    DimensionEstimate,
    FiniteStageCover,
    TailSumResult,
    build_cover,
    count_cells,
    estimate_dimension,
    tail_sum,
)
from .errors import ParseError, PreconditionError
from .groebner import (
    GroebnerBasis,
    MorphismCertificate,
    buchberger,
    ideal_member,
    morphism_condition,
    reduce,
    s_poly,
)
from .mpoly import DEGREVLEX, LEX, MonOrder, MPoly, poly_from_terms
from .parsing import SystemDescriptor, parse_box, parse_poly
from .rational import (
    ProjPoint,
    RatVec,
    affine_height,
    projective_height,
    rat,
    rat_str,
    rat_vec,
    to_projective,
)
from .variety import (
    HeightBoundReport,
    OffManifoldFinding,
    PrimitivePoint,
    VarietyContext,
    apply_F,
    apply_Fstar,
    build_context,
    enumerate_primitive,
    height_bound_scan,
    image_height,
    interval_eval,
    off_manifold_check,
    top_forms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
