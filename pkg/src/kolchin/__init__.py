"""Dehn twists of free groups and the Kolchin property.

Two Dehn twists, each given by a marked graph of groups with cyclic
edge groups, generate a subgroup of the outer automorphism group in
which either every element grows polynomially or some element grows
exponentially.  Which case holds is decided by a finite check: build
the edge-twist digraph of the two splittings and test it for cycles.
This package implements the words, graphs of groups, twists, digraph
and the decision procedure, plus a growth lab for empirical
cross-checks.
"""

from .edge_twist import (EdgeTwistDigraph, KolchinVerdict,
                         build_edge_twist_digraph, decide_kolchin,
                         digraph_dot, digraph_json, is_dag)
from .gog import (Arrow, Graph, GraphOfGroups, Marking, Problem,
                  ValidationReport, arrow_cyclic_reduce, arrow_end,
                  arrow_invert, arrow_multiply, arrow_reduce, arrow_str,
                  check_arrow, collapse, collapse_local, edges_used, express,
                  identity_arrow, is_cyclically_reduced, is_reduced,
                  parse_arrow, presentation_h1, validate_marked_gog)
from .growth import (GrowthClassification, GrowthConfig, GrowthSeries,
                     classify_growth, default_seeds, generator_words,
                     iterate_lengths, survey)
from .snf import smith_invariant_factors
from .twist import (TwistSpec, scale_exponents, twist_arrow,
                    twist_automorphism, validate_twist)
from .twistfile import (InputError, load_document, parse_twist_pair,
                        serialize_twist_pair)
from .words import (CyclicWord, FreeAutomorphism, Word, abelianization_matrix,
                    automorphism_power, check_basis_names, compose,
                    conjugacy_class, cyclic_reduce, free_reduce,
                    generates_free_group, identity_automorphism,
                    nielsen_reduce, parse_word, power_exponent, word_str)

__version__ = "0.1.0"

__all__ = [
    "Arrow", "CyclicWord", "EdgeTwistDigraph", "FreeAutomorphism", "Graph",
    "GraphOfGroups", "GrowthClassification", "GrowthConfig", "GrowthSeries",
    "InputError", "KolchinVerdict", "Marking", "Problem", "TwistSpec",
    "ValidationReport", "Word", "abelianization_matrix", "arrow_cyclic_reduce",
    "arrow_end", "arrow_invert", "arrow_multiply", "arrow_reduce", "arrow_str",
    "automorphism_power", "build_edge_twist_digraph", "check_arrow",
    "check_basis_names", "classify_growth", "collapse", "collapse_local",
    "compose", "conjugacy_class",
    "cyclic_reduce", "decide_kolchin", "default_seeds", "digraph_dot",
    "digraph_json", "edges_used", "express", "free_reduce",
    "generates_free_group", "generator_words", "identity_arrow",
    "identity_automorphism", "is_cyclically_reduced", "is_dag", "is_reduced",
    "iterate_lengths", "load_document", "nielsen_reduce", "parse_arrow",
    "parse_twist_pair", "parse_word", "power_exponent", "presentation_h1",
    "scale_exponents", "serialize_twist_pair", "smith_invariant_factors",
    "survey", "twist_arrow", "twist_automorphism", "validate_marked_gog",
    "validate_twist", "word_str",
]
