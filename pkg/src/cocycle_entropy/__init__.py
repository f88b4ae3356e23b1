"""Shannon entropy as the homogeneous, symmetric, continuous solution of the 2-cocycle equation."""

from .core import (
    as_probabilities,
    as_weights,
    extend,
    hat_entropy,
    hat_entropy_potential_form,
    renyi_entropy,
    restrict,
    shannon_entropy,
    tsallis_entropy,
    u,
)
from .exceptions import BoundError, DomainError
from .tree import Leaf, Node, cocycle_residual, flatten, grouping_residual, node, node_mass, tree_entropy

__version__ = "0.1.0"

__all__ = [
    "BoundError",
    "DomainError",
    "Leaf",
    "Node",
    "as_probabilities",
    "as_weights",
    "cocycle_residual",
    "extend",
    "flatten",
    "grouping_residual",
    "hat_entropy",
    "hat_entropy_potential_form",
    "node",
    "node_mass",
    "renyi_entropy",
    "restrict",
    "shannon_entropy",
    "tree_entropy",
    "tsallis_entropy",
    "u",
]
