"""Plate vectors, expansions, change of basis and straightening."""
from .expansion import (
    ChangeOfBasis,
    change_of_basis,
    change_of_basis_matrix,
    convolution_expand,
    inverse_change_of_basis_matrix,
    plate_basis,
    tree_expand,
    tree_terms,
    weyl_chamber_expansion,
)
from .straighten import project, straighten, straighten_hatP, straighten_theorem_form, theorem_terms
from .tree import DirectedTree, all_directed_trees, labeled_trees, path_tree
from .vector import Basis, PlateVector, Space, kept_in

__all__ = [
    "Basis",
    "ChangeOfBasis",
    "DirectedTree",
    "PlateVector",
    "Space",
    "all_directed_trees",
    "change_of_basis",
    "change_of_basis_matrix",
    "convolution_expand",
    "inverse_change_of_basis_matrix",
    "kept_in",
    "labeled_trees",
    "path_tree",
    "plate_basis",
    "project",
    "straighten",
    "straighten_hatP",
    "straighten_theorem_form",
    "theorem_terms",
    "tree_expand",
    "tree_terms",
    "weyl_chamber_expansion",
]
