"""Exact vulnerability parameters and {K2, C_{2i+1} | i >= 2}-factors of small graphs"""
from .factors import (
    Cycle,
    Edge,
    FactorDecision,
    FactorDecomposition,
    Violation,
    cp_criterion,
    decide_factor,
    find_factor,
    fractional_tutte,
    validate_factor,
)
from .generators import GeneratorSpec, bowtie, generate, gm, hm
from .graph import Graph, canonical_form, from_canonical, induced_delete, parse_edge_list, serialize_edge_list
from .parameters import (
    Parameter,
    ParameterResult,
    binding_number,
    compute,
    compute_all,
    isolated_toughness,
    isolated_toughness_variant,
    toughness,
)
from .rational import INFINITY, Rational
from .structure import blocks, components, count_c_iso, count_tc, is_triangular_cactus, neighborhood

__version__ = "0.1.0"
