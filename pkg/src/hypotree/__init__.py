"""Energies of trees and (strongly) hypoenergetic tree classification."""

from .classify import Verdict, certify, hypo_exists, strong_exists, witness
from .constructions import (
    complete_dary,
    figure1,
    max_nullity_tree,
    path,
    star,
    tstar,
    tstar_digits,
)
from .enumeration import exhaustive_verdict, free_trees, min_energy_tree
from .spectral import (
    CharPoly,
    EnergyResult,
    char_poly,
    eigenvalues,
    energy,
    energy_upper_bound,
    matching_number,
    nullity,
)
from .tree import (
    Tree,
    canonical_code,
    coalesce,
    max_degree,
    new_tree,
    parse_edge_list,
    serialize_edge_list,
    to_dot,
)

__version__ = "0.1.0"
