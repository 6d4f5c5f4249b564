"""Generalized real-valued metrics and Lorentz causal structure.

Extended-real arithmetic with the cost and gain sum conventions, finite
metric spaces of three axiom kinds with min-plus closure, partition-based
path valuation, Lorentz vector spaces with their antinorm and cones, and
Minkowski / power-law spacetime fields with proper-time quadrature and a
variational geodesic metric estimate.
"""

from ._kernels import backend as kernel_backend
from .extreal import (
    MINUS_INF,
    PLUS_INF,
    ZERO,
    ExtReal,
    add_cost,
    add_gain,
    as_extreal,
    negate,
)
from .finspace import (
    ClosureResult,
    CostMatrix,
    LipschitzResult,
    Preorders,
    SpaceKind,
    ValidatedSpace,
    ValidationReport,
    Violation,
    check_lipschitz,
    dualize,
    metric_closure,
    preorders,
    validate,
    verify,
)
from .lorentz import (
    ConeRegion,
    LorentzFrame,
    OrthonormalBasis,
    ScalarProduct,
    VectorClass,
    antinorm,
    classify,
    cone_membership,
    orthonormal_basis,
    quadratic_form,
    scalar_product,
    standardize,
)
from .pathval import (
    MetricFunction,
    PolylinePath,
    ValuationTrace,
    delta_line,
    gain_line,
    partition_sum,
    potential_metric,
    refine_valuation,
    rho_line,
)
from .spacetime import (
    CausalityResult,
    FieldKind,
    MetricField,
    Quadrature,
    RhoGConfig,
    RhoGResult,
    causally_precedes,
    event_antimetric,
    event_metric,
    event_rho,
    is_causal_path,
    proper_time,
    rho_g_estimate,
)

__version__ = "0.1.0"
