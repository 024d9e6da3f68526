"""Classical data layer: index/value regeneration and pair encoding.

Every iteration the surviving (index, value) pairs are re-indexed to
``0..n-1`` and their values are rank-compacted to ``0..n-1`` so both
registers shrink to ``ceil(log2 n)`` qubits. Original identities are kept
on each :class:`PairRecord` and in the ``map_i`` / ``map_v`` tables.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from importlib import resources
from os import PathLike
from pathlib import Path
from types import MappingProxyType

__all__ = [
    "PairRecord",
    "ProblemInstance",
    "ceil_log2",
    "register_width",
    "make_records",
    "gen_indexes",
    "gen_values",
    "encode_pair",
    "rank",
    "read_words",
    "load_wordlist",
    "builtin_words",
]

log = logging.getLogger(__name__)

DEAD = -1


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n - 1).bit_length()


def register_width(n: int) -> int:
    """Qubits needed to address ``n`` items; never below 1."""
    return max(1, ceil_log2(n))


@dataclass(frozen=True)
class PairRecord:
    """One data point. ``current_index == -1`` marks it as filtered out."""

    original_index: int
    original_value: int
    current_index: int
    current_value: int

    @property
    def alive(self) -> bool:
        return self.current_index >= 0

    def filtered(self) -> PairRecord:
        return replace(self, current_index=DEAD)


@dataclass(frozen=True)
class ProblemInstance:
    """The working set ``G_i`` of iteration ``i``.

    ``pairs`` holds the alive records in dataset order; ``records`` is the
    whole dataset (filtered records included) so it can seed the next
    iteration.
    """

    iteration: int
    pairs: tuple[PairRecord, ...]
    idx_qubits: int
    val_qubits: int
    map_i: Mapping[int, int]
    map_v: Mapping[int, int]
    records: tuple[PairRecord, ...] = field(repr=False, default=())

    @property
    def total_qubits(self) -> int:
        return self.idx_qubits + self.val_qubits

    def __len__(self) -> int:
        return len(self.pairs)


def make_records(values: Iterable[int]) -> list[PairRecord]:
    """Fresh records for a dataset given as a value list (index = position)."""
    out = []
    for j, v in enumerate(values):
        if v < 0:
            raise ValueError(f"values must be non-negative, got {v}")
        out.append(PairRecord(j, int(v), j, int(v)))
    return out


def gen_indexes(records: Sequence[PairRecord], iteration: int) -> ProblemInstance:
    """Assign current indexes for ``iteration`` and regenerate values.

    At iteration 1 every record is (re)indexed by its dataset position,
    which also becomes its original index. Later iterations skip filtered
    records and number the survivors consecutively in dataset order.
    """
    if iteration < 1:
        raise ValueError("iteration must be >= 1")
    updated: list[PairRecord] = []
    map_i: dict[int, int] = {}
    j = 0
    if iteration == 1:
        for pos, rec in enumerate(records):
            if not rec.alive:
                raise ValueError("all records must be alive at iteration 1")
            updated.append(replace(rec, original_index=pos, current_index=pos))
            map_i[pos] = pos
        j = len(updated)
    else:
        for rec in records:
            if rec.alive:
                updated.append(replace(rec, current_index=j))
                map_i[rec.original_index] = j
                j += 1
            else:
                updated.append(rec)
    if j == 0:
        raise ValueError("no alive records left to index")

    alive = tuple(r for r in updated if r.alive)
    width = register_width(len(alive))
    instance = ProblemInstance(
        iteration=iteration,
        pairs=alive,
        idx_qubits=width,
        val_qubits=width,
        map_i=MappingProxyType(map_i),
        map_v=MappingProxyType({}),
        records=tuple(updated),
    )
    return gen_values(instance)


def gen_values(instance: ProblemInstance) -> ProblemInstance:
    """Fill in current values for the instance's alive records.

    Iteration 1 keeps the original values. Later iterations replace each
    value by its rank among the surviving original values.
    """
    if instance.iteration == 1:
        new_value = {r.original_value: r.original_value for r in instance.pairs}
    else:
        new_value = rank({r.original_value for r in instance.pairs})

    by_index = {}
    for rec in instance.pairs:
        by_index[rec.original_index] = replace(rec, current_value=new_value[rec.original_value])
    pairs = tuple(by_index[r.original_index] for r in instance.pairs)
    records = tuple(by_index.get(r.original_index, r) if r.alive else r for r in instance.records)

    # Raw values at iteration 1 may need more bits than the set size implies.
    top = max(r.current_value for r in pairs)
    val_qubits = max(register_width(len(pairs)), top.bit_length())
    return replace(
        instance,
        pairs=pairs,
        records=records,
        val_qubits=val_qubits,
        map_v=MappingProxyType(dict(new_value)),
    )


def encode_pair(record: PairRecord, idx_qubits: int, val_qubits: int) -> int:
    """Basis code with the index block in the high bits, value in the low bits."""
    if not record.alive:
        raise ValueError(f"record {record.original_index} has been filtered out")
    if record.current_index >= 1 << idx_qubits:
        raise ValueError(f"index {record.current_index} exceeds {idx_qubits} qubits")
    if not 0 <= record.current_value < 1 << val_qubits:
        raise ValueError(f"value {record.current_value} exceeds {val_qubits} qubits")
    return (record.current_index << val_qubits) | record.current_value


def rank(values: Iterable[int]) -> dict[int, int]:
    """Order-preserving compaction of ``values`` onto ``0..len-1``."""
    return {v: r for r, v in enumerate(sorted(set(values)))}


def builtin_words() -> list[str]:
    text = resources.files("iqucs").joinpath("data/common_words.txt").read_text()
    return text.splitlines()


def read_words(path: str | PathLike) -> list[str]:
    lines = Path(path).read_text().splitlines()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            raise ValueError(f"{path}:{lineno}: empty line in word list")
    return [line.strip() for line in lines]


def load_wordlist(
    source: str | PathLike | None, size: int, fallback: bool = False
) -> list[PairRecord]:
    """Records for the ``size`` most frequent words of a ranked word list.

    A word's rank is both its value and its initial index. ``source=None``
    uses the bundled 100-word list; so does a missing file when
    ``fallback`` is set.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if source is None:
        words = builtin_words()
    else:
        try:
            words = read_words(source)
        except FileNotFoundError:
            if not fallback:
                raise
            log.warning("word list %s not found, using built-in corpus", source)
            words = builtin_words()
    if len(words) < size:
        raise ValueError(f"word list has {len(words)} entries, {size} requested")
    return make_records(range(size))
