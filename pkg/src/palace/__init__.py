"""Solver and verifier for the prince-and-princess search game on graphs."""

from .characterize import is_solvable, reduce
from .engine import min_days_exact, verify_strategy
from .graph import Palace, parse_palace
from .strategy import linear_strategy, optimal_length
from .walks import EscapeWalk, ProbeSequence

__all__ = [
    "EscapeWalk", "Palace", "ProbeSequence", "is_solvable", "linear_strategy",
    "min_days_exact", "optimal_length", "parse_palace", "reduce", "verify_strategy",
]
