"""Betti numbers of regular Hessenberg varieties from root-system combinatorics."""

__version__ = "0.1.0"

from .rootsys import RootSystem, build_root_system, negate, is_positive, root_sum, subsystem
from .weyl import WeylElement, WeylGroup, generate_weyl, inversion_neg, longest_element
from .hessenberg import (
    HessenbergSpace,
    WeylTypeSubset,
    enumerate_hessenberg_spaces,
    from_type_a_function,
    is_closed,
    is_weyl_type,
    levi_hessenberg,
    validate_hessenberg,
    weyl_type_subsets,
)
from .betti import (
    BettiProfile,
    betti_profile,
    cell_dimension,
    cell_nonempty,
    hessenberg_dimension,
    irreducibility_criterion,
    is_palindromic,
    witness_partition,
)
from .bijection import (
    coset_transfer,
    dual_subset,
    nilpotent_complement,
    theorem_bijection,
    unique_weyl_rep,
)

__all__ = [
    "RootSystem", "build_root_system", "negate", "is_positive", "root_sum", "subsystem",
    "WeylElement", "WeylGroup", "generate_weyl", "inversion_neg", "longest_element",
    "HessenbergSpace", "WeylTypeSubset", "enumerate_hessenberg_spaces", "from_type_a_function",
    "is_closed", "is_weyl_type", "levi_hessenberg", "validate_hessenberg", "weyl_type_subsets",
    "BettiProfile", "betti_profile", "cell_dimension", "cell_nonempty", "hessenberg_dimension",
    "irreducibility_criterion", "is_palindromic", "witness_partition",
    "coset_transfer", "dual_subset", "nilpotent_complement", "theorem_bijection",
    "unique_weyl_rep",
]
