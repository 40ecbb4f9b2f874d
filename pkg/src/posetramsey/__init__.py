"""Poset Ramsey numbers on Boolean lattices: exact search, constructions and bounds."""

from .coloring import ChainColoring
from .embedding import Embedding, count_embeddings, find_copy, is_embedding
from .errors import CertificateParseError, InfeasibleSizeError, ParameterError, VerificationError
from .lattice import (
    BooleanLattice, SubsetMask, TargetPoset, chain_count_formula, enumerate_t_chains, make_target,
    parse_target, parse_targets,
)
from .search import RamseyInstance, compute_ramsey_number, is_ramsey_at, verify_coloring

__version__ = "0.1.0"

__all__ = [
    "ChainColoring", "Embedding", "count_embeddings", "find_copy", "is_embedding",
    "CertificateParseError", "InfeasibleSizeError", "ParameterError", "VerificationError",
    "BooleanLattice", "SubsetMask", "TargetPoset", "chain_count_formula", "enumerate_t_chains",
    "make_target", "parse_target", "parse_targets", "RamseyInstance", "compute_ramsey_number",
    "is_ramsey_at", "verify_coloring",
]
