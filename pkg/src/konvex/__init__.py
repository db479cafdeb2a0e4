"""n-convex and n-konvex sets in abelian semigroups."""

from .carrier import (
    ALL,
    INT,
    INT_NO_ONE_MONOID,
    MultiplierSet,
    Semigroup,
    Subset,
    build_cayley,
    builtin,
    capped_add,
    catalog,
    chain_min,
    cyclic,
    load_cayley,
    parse_carrier,
    powerset_union,
    product,
    sample_carrier,
    subsemigroup_closure,
)
from .convexity import (
    Decision,
    decide_convex,
    decide_convex_all_n,
    decide_konvex,
    decide_konvex_all_n,
    is_n_convex,
    is_n_konvex,
    spectrum,
)
from .errors import InputError, InvariantViolation, KonvexError
from .hull import equiv, hull, hull_fixedpoint, hull_formula, hull_of_union, quotient, singleton_class
from .separation import are_F_disjoint, extend_step, stone_separate, verify_certificate
from .setalg import preimage, scale, sumset, sumset_power

__all__ = [name for name in dir() if not name.startswith("_")]
