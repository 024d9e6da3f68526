"""Cumulative qubit consumption (CQC), accuracy and reduction figures."""

from __future__ import annotations

from collections.abc import Iterable, Set
from dataclasses import dataclass

__all__ = ["CqcTrace", "ComparisonReport", "cqc", "accuracy", "reduction", "compare"]


@dataclass(frozen=True)
class CqcTrace:
    """Per-iteration ``(qubits, invocations)`` entries."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple((int(q), int(c)) for q, c in self.entries)
        if any(q <= 0 or c <= 0 for q, c in entries):
            raise ValueError("CQC entries must be positive")
        object.__setattr__(self, "entries", entries)

    def __add__(self, other: CqcTrace) -> CqcTrace:
        return CqcTrace(self.entries + other.entries)


def cqc(trace: CqcTrace | Iterable[tuple[int, int]]) -> int:
    """Sum of qubits x invocations over the trace.

    A one-entry trace ``[(N_q, I)]`` gives the single-round baseline's
    ``N_q * I``.
    """
    if not isinstance(trace, CqcTrace):
        trace = CqcTrace(tuple(trace))
    if not trace.entries:
        raise ValueError("empty CQC trace")
    return sum(q * c for q, c in trace.entries)


def accuracy(predicted: Set[int], truth: Set[int], dataset_size: int) -> float:
    """Fraction of dataset points classified correctly."""
    if dataset_size <= 0:
        raise ValueError("dataset_size must be positive")
    false_pos = len(predicted - truth)
    false_neg = len(truth - predicted)
    return (dataset_size - false_pos - false_neg) / dataset_size


def reduction(baseline_cqc: int, iqucs_cqc: int, ndigits: int | None = 1) -> float:
    """Percent saved relative to the baseline, rounded to ``ndigits``."""
    if baseline_cqc <= 0:
        raise ValueError("baseline CQC must be positive")
    pct = 100.0 * (1.0 - iqucs_cqc / baseline_cqc)
    return pct if ndigits is None else round(pct, ndigits)


@dataclass(frozen=True)
class ComparisonReport:
    baseline_cqc: int
    iqucs_cqc: int
    reduction_pct: float
    baseline_accuracy: float
    iqucs_accuracy: float
    baseline_invocations: int
    iqucs_invocations: int


def compare(outcome, baseline, truth: Set[int], dataset_size: int) -> ComparisonReport:
    """Side-by-side figures for a :class:`SearchOutcome` and a :class:`BaselineOutcome`."""
    base_cqc = cqc(baseline.cqc_entries())
    iq_cqc = cqc(outcome.cqc_entries())
    return ComparisonReport(
        baseline_cqc=base_cqc,
        iqucs_cqc=iq_cqc,
        reduction_pct=reduction(base_cqc, iq_cqc, ndigits=None),
        baseline_accuracy=accuracy(baseline.predicted, truth, dataset_size),
        iqucs_accuracy=accuracy(outcome.solution_original_indexes, truth, dataset_size),
        baseline_invocations=baseline.invocations,
        iqucs_invocations=outcome.total_invocations,
    )
