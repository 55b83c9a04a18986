"""Exact knot invariants for Lagrangian sliceness obstructions.

HOMFLYPT polynomials by skein recursion, planar and DT diagram codecs, a
tangle compiler, Legendrian front invariants and volume corrections for
twisted knot families.
"""

from .diagram import (
    Crossing,
    PDCode,
    format_pd,
    parse_pd,
    pd_canonical_key,
    pd_connected_sum,
    pd_disjoint_union,
    pd_mirror,
    pd_simplify,
    pd_validate,
    pd_writhe,
)
from .dtcode import DTCode, dt_parse, dt_realize_knot, dt_validate, pd_to_dt
from .errors import KnotError
from .homfly import (
    MemoCache,
    crossing_change_identity_check,
    homfly,
    homfly_specialize,
    skein_triple,
)
from .laurent import DELTA, LaurentPoly1, LaurentPoly2, Rational, format_poly, parse_poly
from .legendrian import (
    ClassicalInvariants,
    FrontDiagram,
    ObstructionReport,
    front_connected_sum,
    front_double_stabilize,
    front_invariants,
    front_parse,
    mfw_sl_sum_bound,
    obstruct_chantraine,
    obstruct_kkbar,
    sl_sum_formula,
    tb_generalized_square,
    torus_tb,
)
from .tangledsl import dsl_compile, dsl_parse, load_template, template_instantiate
from .volume import distinct_corrections, monotonicity_check, nz_correction, vol_estimate

__version__ = "0.1.0"
