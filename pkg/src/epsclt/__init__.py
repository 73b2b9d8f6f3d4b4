"""Exact moment computations for central limit theorems of graph-independent variables."""

from .combinatorics import (
    PairPartition,
    SetPartition,
    WordSpec,
    crossing_number,
    enumerate_partitions,
    intersection_graph,
    is_gn_noncrossing,
    kernel,
)
from .cumulants import (
    FreeCumulantSequence,
    ScalarLaw,
    StarVariable,
    epsilon_moment,
    free_cumulants_to_moments,
    moments_to_free_cumulants,
    star_joint_moment,
)
from .decorated import (
    DecoratedGraph,
    DecoratedStepGraphon,
    MLMatrix,
    compressed_grid,
    decorated_intersection_graph,
    hom_variants,
    lex_limit_decoration,
    rho_decorated,
)
from .errors import BudgetError, DomainError, SchemaError
from .finite_n import (
    Sn_full_moment,
    Sn_product_moment,
    convergence_table,
    expand_word,
    rho_n,
)
from .graphon import StepGraphon, blowup_graph, constant_graphon, half_graphon, rho_graph, rho_graphon
from .graphs import GridGraph, LexicographicFamily, SimpleGraph, h_graph, lexicographic_product, make_graph
from .limit_laws import (
    LimitModel,
    NormalizationParams,
    S_limit_moment,
    classify_sJ,
    clt_L1_moment,
    lex_limit_moment,
    master_limit_moment,
    tensor2_reference_moment,
)

__version__ = "0.1.0"

__all__ = [
    "PairPartition",
    "SetPartition",
    "WordSpec",
    "crossing_number",
    "enumerate_partitions",
    "intersection_graph",
    "is_gn_noncrossing",
    "kernel",
    "FreeCumulantSequence",
    "ScalarLaw",
    "StarVariable",
    "epsilon_moment",
    "free_cumulants_to_moments",
    "moments_to_free_cumulants",
    "star_joint_moment",
    "DecoratedGraph",
    "DecoratedStepGraphon",
    "MLMatrix",
    "compressed_grid",
    "decorated_intersection_graph",
    "hom_variants",
    "lex_limit_decoration",
    "rho_decorated",
    "BudgetError",
    "DomainError",
    "SchemaError",
    "Sn_full_moment",
    "Sn_product_moment",
    "convergence_table",
    "expand_word",
    "rho_n",
    "StepGraphon",
    "blowup_graph",
    "constant_graphon",
    "half_graphon",
    "rho_graph",
    "rho_graphon",
    "GridGraph",
    "LexicographicFamily",
    "SimpleGraph",
    "h_graph",
    "lexicographic_product",
    "make_graph",
    "LimitModel",
    "NormalizationParams",
    "S_limit_moment",
    "classify_sJ",
    "clt_L1_moment",
    "lex_limit_moment",
    "master_limit_moment",
    "tensor2_reference_moment",
]
