"""Thompson's groups as groups of fractions, Jones representations and Jones links."""

from .group import (
    F,
    T,
    V,
    GroupElement,
    TreePair,
    act_word,
    as_pl_map,
    enumerate_elements,
    fixed_point_measure,
    generator,
    identity,
    invert,
    multiply,
    random_element,
    reduce_pair,
    stabilize,
)
from .notation import format_element, parse_element, parse_pair
from .plmap import PLMap, parse_dyadic
from .trees import Forest, Tree, common_multiple, compose_forests

__all__ = [
    "F",
    "T",
    "V",
    "Forest",
    "GroupElement",
    "PLMap",
    "Tree",
    "TreePair",
    "act_word",
    "as_pl_map",
    "common_multiple",
    "compose_forests",
    "enumerate_elements",
    "fixed_point_measure",
    "format_element",
    "generator",
    "identity",
    "invert",
    "multiply",
    "parse_dyadic",
    "parse_element",
    "parse_pair",
    "random_element",
    "reduce_pair",
    "stabilize",
]

__version__ = "0.1.0"
