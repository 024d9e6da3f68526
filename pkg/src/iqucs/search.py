"""Iterative quantum search: amplify, filter unlikely pairs, shrink, repeat.

Each iteration runs one or two Grover rounds (odd/even rule) over the
current working set, drops every pair whose measured probability falls
below ``T_s / 2**ceil(log2 |G_i|)`` and re-encodes the survivors with
narrower registers. The loop stops once two consecutive iterations keep
the same set of potential solutions.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace

from . import grover
from .encoding import PairRecord, ProblemInstance, ceil_log2, encode_pair, gen_indexes

__all__ = [
    "FilterConfig",
    "IterationRecord",
    "SearchOutcome",
    "invocations_for",
    "filter_threshold",
    "classify",
    "check_targets",
    "target_indexes",
    "search",
]

IQUCS_STREAM = 0

DEFAULT_MAX_ITERATIONS = 50


@dataclass(frozen=True)
class FilterConfig:
    """Filter and read-out settings. ``shots=0`` reads exact probabilities."""

    threshold_ts: float = 0.85
    shots: int = 0
    seed: int = 0
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not 0 < self.threshold_ts <= 1:
            raise ValueError("threshold_ts must be in (0, 1]")
        if self.shots < 0:
            raise ValueError("shots must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass(frozen=True)
class IterationRecord:
    """Trace of one iteration.

    ``fidelities`` maps original index to the probability used by the
    filter. ``snapshots`` holds one such map per Grover round of this
    iteration (the last one equals ``fidelities``) and ``first_invocation``
    is the cumulative number of the first of those rounds.
    """

    iteration: int
    invocations: int
    total_qubits: int
    set_size: int
    fidelities: Mapping[int, float]
    potential: frozenset[int]
    filtered: frozenset[int]
    threshold_value: float
    pairs: tuple[PairRecord, ...] = field(repr=False, default=())
    idx_qubits: int = 0
    val_qubits: int = 0
    snapshots: tuple[Mapping[int, float], ...] = field(repr=False, default=())
    first_invocation: int = 1


@dataclass(frozen=True)
class SearchOutcome:
    solution_original_indexes: frozenset[int]
    trace: tuple[IterationRecord, ...]
    converged: bool
    iterations_used: int
    status: str = "converged"

    @property
    def total_invocations(self) -> int:
        return sum(r.invocations for r in self.trace)

    def cqc_entries(self) -> list[tuple[int, int]]:
        return [(r.total_qubits, r.invocations) for r in self.trace]


def invocations_for(iteration: int) -> int:
    """Grover rounds at ``iteration``: 1 when odd, 2 when even."""
    if iteration < 1:
        raise ValueError("iteration must be >= 1")
    return (iteration + 1) % 2 + 1


def filter_threshold(set_size: int, threshold_ts: float) -> float:
    return threshold_ts / (1 << ceil_log2(set_size))


def classify(
    fidelities: Mapping[int, float], threshold_value: float
) -> tuple[frozenset[int], frozenset[int]]:
    """Split keys into (potential, filtered); strictly below threshold is filtered."""
    filtered = frozenset(k for k, p in fidelities.items() if p < threshold_value)
    return frozenset(fidelities) - filtered, filtered


def check_targets(records: Sequence[PairRecord], targets: Iterable[int]) -> frozenset[int]:
    targets = frozenset(targets)
    if not targets:
        raise ValueError("target set is empty")
    missing = targets - {r.original_value for r in records}
    if missing:
        raise ValueError(f"targets not present in the dataset: {sorted(missing)}")
    return targets


def target_indexes(records: Sequence[PairRecord], targets: Iterable[int]) -> frozenset[int]:
    """Original indexes of records holding a target value (by dataset position)."""
    targets = frozenset(targets)
    return frozenset(j for j, r in enumerate(records) if r.original_value in targets)


def _amplify(instance: ProblemInstance, targets, invocations, config):
    codes = {r.original_index: encode_pair(r, instance.idx_qubits, instance.val_qubits)
             for r in instance.pairs}
    marked = {codes[r.original_index] for r in instance.pairs if r.original_value in targets}
    job = grover.GroverRun(frozenset(codes.values()), frozenset(marked),
                           invocations, instance.total_qubits)
    order = sorted(codes)
    snaps = grover.trajectory(job, [codes[k] for k in order], shots=config.shots,
                              seed=(config.seed, IQUCS_STREAM, instance.iteration))
    return tuple({k: s[codes[k]] for k in order} for s in snaps)


def search(
    records: Sequence[PairRecord],
    targets: Iterable[int],
    config: FilterConfig = FilterConfig(),
    rescue: Callable[[IterationRecord], Iterable[int]] | None = None,
) -> SearchOutcome:
    """Run the iterative search for the records holding ``targets`` values.

    ``rescue`` is an optional hook called after each filter step; original
    indexes it returns are moved back from the filtered to the potential
    set. It is off by default, so filtered targets are lost for good.

    An empty working set ends the search with ``status="empty"`` instead
    of raising; exhausting ``config.max_iterations`` gives
    ``status="iteration_cap"``.
    """
    targets = check_targets(records, targets)
    instance = gen_indexes(records, 1)
    trace: list[IterationRecord] = []
    previous: frozenset[int] | None = None
    invoked = 0

    for i in range(1, config.max_iterations + 1):
        if i > 1:
            instance = gen_indexes(instance.records, i)
        n_rounds = invocations_for(i)
        snaps = _amplify(instance, targets, n_rounds, config)
        fidelities = snaps[-1]
        threshold = filter_threshold(len(instance), config.threshold_ts)
        potential, filtered = classify(fidelities, threshold)
        record = IterationRecord(
            iteration=i,
            invocations=n_rounds,
            total_qubits=instance.total_qubits,
            set_size=len(instance),
            fidelities=fidelities,
            potential=potential,
            filtered=filtered,
            threshold_value=threshold,
            pairs=instance.pairs,
            idx_qubits=instance.idx_qubits,
            val_qubits=instance.val_qubits,
            snapshots=snaps,
            first_invocation=invoked + 1,
        )
        if rescue is not None:
            saved = frozenset(rescue(record)) & filtered
            if saved:
                potential, filtered = potential | saved, filtered - saved
                record = replace(record, potential=potential, filtered=filtered)
        trace.append(record)
        invoked += n_rounds

        if potential == previous:
            inverse = {cur: orig for orig, cur in instance.map_i.items()}
            current = {instance.map_i[k] for k in potential}
            solution = frozenset(inverse[c] for c in current)
            return SearchOutcome(solution, tuple(trace), True, i)
        # Some read-out is >= the mean, so this needs T_s = 1 plus rounding.
        if not potential:
            return SearchOutcome(frozenset(), tuple(trace), False, i, status="empty")

        instance = _drop(instance, filtered)
        previous = potential

    return SearchOutcome(previous or frozenset(), tuple(trace), False,
                         config.max_iterations, status="iteration_cap")


def _drop(instance: ProblemInstance, filtered: frozenset[int]) -> ProblemInstance:
    records = tuple(r.filtered() if r.original_index in filtered else r
                    for r in instance.records)
    return replace(instance, records=records)
