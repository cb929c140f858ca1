"""Quivers, relation sets, the text format and generated families."""

from domdim.quiver.arms import Arm, ArmDecomposition, CoreDerivation, arms, derive_core
from domdim.quiver.core import (
    Arrow,
    BranchingVertex,
    Path,
    Quiver,
    QuiverClass,
    RelationSet,
    ValidationError,
    degenerate_branching,
    enumerate_paths,
    longest_paths,
    validate,
)
from domdim.quiver.dsl import ParseError, QuiverDocument, parse, parse_document, serialize
from domdim.quiver.families import (
    FamilyDescriptor,
    FamilyError,
    acyclic_quivers,
    generate_family,
    linear_quiver,
    matched_tree,
    parse_family,
    random_acyclic_quiver,
    random_relations,
    random_tree,
    truncated,
)

__all__ = [
    "Arm",
    "ArmDecomposition",
    "Arrow",
    "BranchingVertex",
    "CoreDerivation",
    "FamilyDescriptor",
    "FamilyError",
    "ParseError",
    "Path",
    "Quiver",
    "QuiverClass",
    "QuiverDocument",
    "RelationSet",
    "ValidationError",
    "acyclic_quivers",
    "arms",
    "degenerate_branching",
    "derive_core",
    "enumerate_paths",
    "generate_family",
    "linear_quiver",
    "longest_paths",
    "matched_tree",
    "parse",
    "parse_document",
    "parse_family",
    "random_acyclic_quiver",
    "random_relations",
    "random_tree",
    "serialize",
    "truncated",
    "validate",
]
