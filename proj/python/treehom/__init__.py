"""Homomorphisms of constraint structures into trees.

Structures carry two edge relations: ``lt`` (must map strictly below) and
``inc`` (must map to incomparable nodes). The decision procedures report
whether a structure maps into a tree; the oracles are brute-force
cross-checks limited to small inputs.
"""

from ._treehom import (
    ConstraintStructure,
    EmptyStructure,
    InvalidConfig,
    NoHomomorphism,
    NotExhausted,
    NotSemilinear,
    ParseError,
    SizeLimitExceeded,
    TreehomError,
    UnknownLabel,
    brute_force_tree_hom_oracle,
    build_witness,
    chain,
    decide_ordinal_tree,
    decide_semilinear,
    decide_tree,
    decide_tree_height,
    embed_universal,
    extension_oracle,
    family,
    find_equivalent_chain_lengths,
    fixpoint_levels,
    incomparable_tripleu,
    is_semilinear_order,
    level_sets,
    lt_cycle,
    placement_stage,
    random_semilinear_order,
    random_structure,
    solve_game,
    subset_criterion_oracle,
    tripleu,
)

__all__ = [name for name in dir() if not name.startswith("_")]
