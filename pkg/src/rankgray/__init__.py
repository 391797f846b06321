"""Hamiltonian cycles and snakes in Cayley graphs of A_n and S_n with jump-to-front generators."""

from .analysis import SnakeReport, m6_cycle, rankin_excludes, upper_bound, verify_snake
from .covers import GenSequence, SuccessorCover
from .hamgen import generate
from .search import longest_snake_search

__version__ = "0.1.0"

__all__ = [
    "GenSequence",
    "SnakeReport",
    "SuccessorCover",
    "generate",
    "longest_snake_search",
    "m6_cycle",
    "rankin_excludes",
    "upper_bound",
    "verify_snake",
]
