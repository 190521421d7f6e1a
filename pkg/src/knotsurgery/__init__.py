"""Dimension computations for Dehn surgeries on knot models.

Library layout:

- ``linalg``: exact rational linear algebra on graded spaces.
- ``knotcx``: finite knot models (two anticommuting differentials), thin
  synthesis from an Alexander polynomial and tau, validation, mirrors.
- ``catalog``: built-in small-knot models by name.
- ``cone``: bent complexes and the mapping-cone surgery dimensions
  (integral, rational, zero-slope), ladders and the minimal-dimension scan.
- ``borromean``: exterior-algebra pathway for circle bundles over surfaces
  and Seifert fibered spaces with nonzero orbifold degree.
- ``formulas``: closed-form dimensions (thin knots, alternating family,
  Whitehead doubles, splices) and classifiers.
- ``crosscheck``: agreement suites tying the pathways together.
"""

from .borromean import (
    MonomialModule,
    circle_bundle_dim_formula,
    circle_bundle_dim_module,
    gamma_slice,
    khi_borromean,
    seifert_dim,
)
from .catalog import get_knot, knot_names
from .cone import (
    BentComplex,
    ConeProblem,
    PreconditionError,
    ScanResult,
    SurgeryResult,
    almost_lspace_scan,
    bent_homology,
    genus_one_positive_ladder,
    pi_maps,
    surgery_dim,
    zero_surgery_dims,
)
from .formulas import (
    SutureDimProfile,
    WhDoubleSpec,
    almost_lspace_necessary_conditions,
    alternating_family_dim,
    nearly_fibered_classify,
    splice_dim,
    thin_surgery_formula,
    whitehead_double_pm1,
)
from .knotcx import (
    KnotComplex,
    ModelError,
    SquareSpec,
    StaircaseSpec,
    build_square,
    build_staircase,
    compute_tau,
    mirror,
    parse_knot_spec,
    thin_from_alexander,
    validate,
)
from .linalg import (
    ExactScalar,
    GradedSpace,
    LinearAlgebraError,
    SparseExactMap,
    homology,
    induced_map_on_homology,
    rank,
)

__version__ = "0.1.0"
