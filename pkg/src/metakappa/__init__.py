"""Minimal product sets mu_G(r, s) in finite metacyclic groups."""

from .bounds import BoundsProfile, dkappa, f_h, kappa
from .errors import MetakappaError
from .lattice import (
    SubgroupDescriptor,
    brute_force_subgroups,
    enumerate_gamma,
    is_normal_descriptor,
    kmn_normal_order,
    normal_orders,
    psi,
    quotient_map,
    quotient_params,
    subgroup_orders,
)
from .presentation import (
    ElementSet,
    GroupElement,
    GroupTable,
    PresentationParams,
    build_table,
    cyclic_params,
    kmn_params,
    validate_params,
)
from .solver import (
    OPTIMAL,
    UPPER_BOUND_ONLY,
    SearchBudget,
    SearchResult,
    brute_force_mu_grid,
    exact_mu,
    mu_exceeds,
    mu_table,
)
from .witness import (
    WitnessPair,
    construct_cyclic,
    construct_f2,
    construct_lift,
    construct_nkappa,
    construct_witness,
    verify_witness,
)

__all__ = [
    "BoundsProfile", "dkappa", "f_h", "kappa",
    "MetakappaError",
    "SubgroupDescriptor", "brute_force_subgroups", "enumerate_gamma",
    "is_normal_descriptor", "kmn_normal_order", "normal_orders", "psi",
    "quotient_map", "quotient_params", "subgroup_orders",
    "ElementSet", "GroupElement", "GroupTable", "PresentationParams",
    "build_table", "cyclic_params", "kmn_params", "validate_params",
    "OPTIMAL", "UPPER_BOUND_ONLY", "SearchBudget", "SearchResult",
    "brute_force_mu_grid", "exact_mu", "mu_exceeds", "mu_table",
    "WitnessPair", "construct_cyclic", "construct_f2", "construct_lift",
    "construct_nkappa", "construct_witness", "verify_witness",
]
