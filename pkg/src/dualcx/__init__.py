"""Dual complexes, collapses, cycle-sequence calculus and labeled edge loops."""

from .complex import (
    ComplexError,
    DeltaComplex,
    InvalidComplexError,
    NotFaceClosedError,
    Subcomplex,
    connected_components,
    euler_characteristic,
    is_simplicial,
    simplicial_closure,
    star,
    validate,
)
from .curves import (
    ConfigError,
    CurveConfig,
    CycleSequence,
    Entry,
    find_nontrivial_cycle_sequence,
    forms_tree,
    is_connected,
    is_cycle_sequence,
    is_trivial,
    reduce_a,
    reduce_ab,
)
from .dual import StratificationData, Stratum, build_dual, build_dual_complex, check_regularity
from .homotopy import (
    BudgetExhausted,
    CollapseStep,
    betti,
    cone_over,
    elementary_collapse,
    is_collapsible,
    is_cone_with_apex,
)
from .kernels import BACKEND
from .loops import (
    BoundaryPair,
    EdgeLoop,
    EdgePath,
    LiftError,
    LoopEssential,
    StrataLabeling,
    boundary_pair_graph,
    cancel_backtrack,
    check_g_prime,
    complement_components,
    dominating_subcomplex,
    image_of_loop,
    insert_backtrack,
    lift_cycle_sequence,
    move_across_triangle,
    reduce_loop,
)

__version__ = "0.1.0"
