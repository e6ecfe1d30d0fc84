"""Mod-2 cohomology and category-type bounds for small covers."""

from .bounds import (
    BoundReport,
    ManifoldDescription,
    bott_manifold,
    cat_bounds,
    dold_bounds,
    eq_cat_bounds,
    small_cover_manifold,
    special_family_bounds,
    sphere_manifold,
    symm_tc_bounds,
    tc_bounds,
)
from .charfun import BottMatrix, BottReduction, from_bott, reduce_to_bott, validate
from .cohomology import (
    BottRing,
    DoldRing,
    SmallCoverRing,
    SphereRing,
    bott_ring,
    dold_ring,
    point_ring,
    poincare_pairing,
    projective_ring,
    small_cover_ring,
    sphere_ring,
    verify_top_monomial,
)
from .errors import BudgetExceeded, CharacteristicError, InputError, ReductionFailed
from .invariants import (
    IntervalValue,
    ZclCertificate,
    cup_length,
    verify_certificate,
    zcl_certificate_bott,
    zcl_exact,
    zcl_interval,
    zcl_rp,
)
from .polytope import (
    SimplePolytope,
    explicit_polytope,
    f_vector,
    h_vector,
    polygon,
    product_of_simplices,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
