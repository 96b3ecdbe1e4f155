"""Hamiltonian cycles through prescribed pairings on rook-type graphs."""

from .cycle import HamCycle, verify_extension
from .errors import BudgetExceeded, InternalInvariantViolation, InvalidParameter, NoPairingExists
from .extend_construct import (
    Nonextendable,
    construct_extension,
    extend_4xm_odd,
    extend_knn,
    extend_rook,
)
from .extend_search import Pruning, decide_nonextendable, extend_by_search
from .graph_core import (
    Graph,
    Vertex,
    build_bishop_on_rook,
    build_complete,
    build_complete_bipartite,
    build_hypercube,
    build_petersen,
    build_rook,
    cartesian_product,
    conormal_product,
    line_graph,
)
from .matchings import Pairing, classify_columns, cut_pairing, enumerate_pairings, random_pairing
from .ph_checker import PhReport, check_ph, explore_bishop_on_rook

__version__ = "0.1.0"
