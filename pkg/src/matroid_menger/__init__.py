"""Matroid-constrained edge-disjoint paths with complementary cut certificates."""

from .digraph import Digraph, Edge
from .matroid import (
    DirectSumMatroid,
    Free,
    Graphic,
    LinearGF2,
    Matroid,
    Partition,
    Uniform,
    axiom_spot_check,
)
from .solver import Certificate, cover_covers_all_paths, solve, verify_certificate
from .waves import proof_solve

__all__ = [
    "Certificate",
    "Digraph",
    "DirectSumMatroid",
    "Edge",
    "Free",
    "Graphic",
    "LinearGF2",
    "Matroid",
    "Partition",
    "Uniform",
    "axiom_spot_check",
    "cover_covers_all_paths",
    "proof_solve",
    "solve",
    "verify_certificate",
]
