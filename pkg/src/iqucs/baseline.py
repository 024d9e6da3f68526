"""GSearch: single-round Grover at the optimal invocation count.

The baseline is told how many targets exist (it needs that for the
optimal count) but not which ones; it predicts targets with the same
mean-based filter as the iterative search.

Amplification runs over the full register (uniform over all
``2**N_q`` basis states). The optimal count is defined for that space,
and only there does it leave the non-targets below the filter threshold.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from . import grover
from .encoding import PairRecord, encode_pair, gen_indexes
from .search import FilterConfig, check_targets, classify, filter_threshold

__all__ = ["BaselineOutcome", "gsearch"]

GSEARCH_STREAM = 1


@dataclass(frozen=True)
class BaselineOutcome:
    predicted: frozenset[int]
    fidelities: Mapping[int, float]
    invocations: int
    total_qubits: int
    threshold_value: float
    pairs: tuple[PairRecord, ...] = field(repr=False, default=())
    idx_qubits: int = 0
    val_qubits: int = 0
    snapshots: tuple[Mapping[int, float], ...] = field(repr=False, default=())
    first_invocation: int = 1
    iteration: int = 1

    @property
    def filtered(self) -> frozenset[int]:
        return frozenset(self.fidelities) - self.predicted

    def cqc_entries(self) -> list[tuple[int, int]]:
        return [(self.total_qubits, self.invocations)]


def gsearch(
    records: Sequence[PairRecord],
    targets: Iterable[int],
    config: FilterConfig = FilterConfig(),
    invocations: int | None = None,
) -> BaselineOutcome:
    """Predict the target records with one optimally-sized Grover run.

    ``invocations`` overrides the optimal count (for probing intermediate
    rounds); every round's read-out is kept in ``snapshots``.
    """
    targets = check_targets(records, targets)
    instance = gen_indexes(records, 1)
    n_q = instance.total_qubits
    codes = {r.original_index: encode_pair(r, instance.idx_qubits, instance.val_qubits)
             for r in instance.pairs}
    marked = frozenset(codes[r.original_index] for r in instance.pairs
                       if r.original_value in targets)
    if invocations is None:
        invocations = grover.optimal_num_invocations(n_q, len(marked))

    job = grover.GroverRun.full_register(n_q, marked, invocations)
    order = sorted(codes)
    raw = grover.trajectory(job, [codes[k] for k in order], shots=config.shots,
                            seed=(config.seed, GSEARCH_STREAM, 1))
    snaps = tuple({k: s[codes[k]] for k in order} for s in raw)
    fidelities = snaps[-1] if snaps else {k: 1.0 / (1 << n_q) for k in order}

    threshold = filter_threshold(len(instance), config.threshold_ts)
    predicted, _ = classify(fidelities, threshold)
    return BaselineOutcome(
        predicted=predicted,
        fidelities=fidelities,
        invocations=invocations,
        total_qubits=n_q,
        threshold_value=threshold,
        pairs=instance.pairs,
        idx_qubits=instance.idx_qubits,
        val_qubits=instance.val_qubits,
        snapshots=snaps,
    )
