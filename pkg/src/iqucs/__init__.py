"""Grover index search with iterative qubit reduction, plus a single-round baseline."""

from .baseline import BaselineOutcome, gsearch
from .encoding import PairRecord, ProblemInstance, load_wordlist, make_records
from .grover import GroverRun, optimal_num_invocations
from .metrics import ComparisonReport, CqcTrace, accuracy, compare, cqc, reduction
from .search import FilterConfig, IterationRecord, SearchOutcome, search

__all__ = [
    "BaselineOutcome",
    "ComparisonReport",
    "CqcTrace",
    "FilterConfig",
    "GroverRun",
    "IterationRecord",
    "PairRecord",
    "ProblemInstance",
    "SearchOutcome",
    "accuracy",
    "compare",
    "cqc",
    "gsearch",
    "load_wordlist",
    "make_records",
    "optimal_num_invocations",
    "reduction",
    "search",
]

__version__ = "0.1.0"
