"""Experiment graphs for GHZ-state design: exact validity, dimension,
sparsification, structural certificates and small exhaustive search."""

from .certificate import CertificateReport, build_chi, certificate_report, partition_RU, select_base_edge
from .errors import (
    GraphFormatError,
    InputError,
    LemmaViolation,
    MatchingCapExceeded,
    MonoedgePropertyError,
    PreconditionError,
    UnsupportedError,
    XGraphError,
)
from .gaussian import GaussianRational
from .graph import (
    ExperimentGraph,
    HalfColoredEdge,
    VertexColoring,
    canonical_form,
    color_degree,
    export_dot,
    induced_subgraph,
)
from .io import load, parse, save, serialize
from .kernels import BACKEND
from .matching import PerfectMatching, WeightTable, enumerate_perfect_matchings, weight_table
from .search import SearchResult, SearchSpace, export_polynomial_system, search_max_dimension
from .sparsify import (
    PruneTrace,
    color_isolated_prune,
    find_color_isolated_edges,
    infeasible_color_prune,
    matching_covered_reduction,
    prune_to_fixpoint,
)
from .validity import Verdict, bound_report, check_monoedge_property, dimension, verify

__version__ = "0.1.0"
