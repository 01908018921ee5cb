"""Coadjoint orbits, central extension and symplectic realizations of the static kinematical group."""

from .algebra import (
    ALGEBRA_NAMES,
    BracketTable,
    ad_matrix,
    bch2,
    bracket,
    check_jacobi,
    registry_get,
    static_ext,
)
from .coadjoint import (
    ChartKind,
    ChartPoint,
    DualVector,
    Orbit,
    OrbitClass,
    classify,
    coadjoint_act,
    from_chart,
    kirillov,
    pair,
    to_chart,
)
from .dynamics import (
    AffineObservable,
    action_kernel,
    act_point,
    flow,
    hamiltonian,
    momentum_map,
    poisson,
    realize,
    vector_field,
)
from .group import (
    ExtGroupElement,
    GroupElement,
    adjoint,
    b_map,
    coboundary_equivalent,
    cocycle,
    ext_inverse,
    ext_multiply,
    multiply,
    verify_cocycle_identity,
)

__version__ = "0.1.0"
