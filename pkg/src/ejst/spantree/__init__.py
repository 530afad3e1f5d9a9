"""Sector partitions and the EDNIST / IST spanning-tree constructions."""
from .build import PathWordError, build_all, build_tree, path_word, verification_text, verify_all
from .interpret import (
    Interpretation,
    InterpretationError,
    Reading,
    candidate_readings,
    interpretation_for,
    literal_interpretation,
    literal_reading,
    resolve_interpretation,
)
from .product import ProductTree, build_product_trees, verify_product_edge_disjoint, verify_product_spanning
from .sectors import Scheme, SectorClass, classify, sector_coords
from .tree import PathWord, SpanningTree, depth, expand_word, rotate_tree, tree_path, word_of_path
from .verify import (
    Report,
    render_reports,
    unused_edges,
    verify_edge_disjoint,
    verify_node_independent,
    verify_path_consistency,
    verify_spanning,
)

__all__ = [
    "PathWordError", "build_all", "build_tree", "path_word", "verification_text", "verify_all",
    "Interpretation", "InterpretationError", "Reading", "candidate_readings", "interpretation_for",
    "literal_interpretation", "literal_reading", "resolve_interpretation",
    "ProductTree", "build_product_trees", "verify_product_edge_disjoint", "verify_product_spanning",
    "Scheme", "SectorClass", "classify", "sector_coords",
    "PathWord", "SpanningTree", "depth", "expand_word", "rotate_tree", "tree_path", "word_of_path",
    "Report", "render_reports", "unused_edges", "verify_edge_disjoint", "verify_node_independent",
    "verify_path_consistency", "verify_spanning",
]
