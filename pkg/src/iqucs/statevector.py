"""Dense statevector kernel with the three reflections Grover search needs.

States are immutable value objects: every operation returns a new
:class:`AmplitudeState`. Amplitudes are kept complex even though every
state reachable here is real.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AmplitudeState",
    "uniform_over",
    "phase_oracle",
    "diffuse",
    "probabilities",
    "sample",
]


def _as_codes(codes: Iterable[int], num_qubits: int) -> np.ndarray:
    arr = np.unique(np.fromiter((int(c) for c in codes), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= 1 << num_qubits):
        raise ValueError(
            f"basis code out of range for {num_qubits} qubits: "
            f"{arr[0] if arr[0] < 0 else arr[-1]}"
        )
    return arr


@dataclass(frozen=True, eq=False)
class AmplitudeState:
    """Amplitudes over ``2**num_qubits`` basis states.

    ``prep_subset`` holds the sorted basis codes the uniform preparation
    was taken over; :func:`diffuse` reflects about that preparation.
    """

    num_qubits: int
    amplitudes: np.ndarray
    prep_subset: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def _evolve(self, amplitudes: np.ndarray) -> AmplitudeState:
        return AmplitudeState(self.num_qubits, amplitudes, self.prep_subset)


def uniform_over(num_qubits: int, subset: Iterable[int]) -> AmplitudeState:
    """Equal-amplitude superposition over ``subset``, zero elsewhere."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    codes = _as_codes(subset, num_qubits)
    if codes.size == 0:
        raise ValueError("preparation subset is empty")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[codes] = 1.0 / np.sqrt(codes.size)
    codes.flags.writeable = False
    return AmplitudeState(num_qubits, amps, codes)


def phase_oracle(state: AmplitudeState, marked: Iterable[int]) -> AmplitudeState:
    """Negate the amplitudes of ``marked`` basis states."""
    codes = _as_codes(marked, state.num_qubits)
    amps = state.amplitudes.copy()
    amps[codes] *= -1
    return state._evolve(amps)


def diffuse(state: AmplitudeState) -> AmplitudeState:
    """Reflect about the prepared state: ``2|psi><psi| - I``.

    ``|psi>`` is the uniform superposition over ``state.prep_subset``, so
    the overlap is just the scaled sum of the subset's amplitudes.
    """
    subset = state.prep_subset
    scale = 1.0 / np.sqrt(subset.size)
    overlap = state.amplitudes[subset].sum() * scale
    amps = -state.amplitudes
    amps[subset] += 2.0 * overlap * scale
    return state._evolve(amps)


def probabilities(state: AmplitudeState, subset: Iterable[int]) -> dict[int, float]:
    codes = _as_codes(subset, state.num_qubits)
    probs = np.abs(state.amplitudes[codes]) ** 2
    return {int(c): float(p) for c, p in zip(codes, probs)}


def sample(
    state: AmplitudeState, shots: int, seed: int | Sequence[int]
) -> dict[int, int]:
    """Draw ``shots`` measurements of the full register.

    Returns counts for every outcome observed at least once. ``seed`` may
    be an int or a sequence of ints (fed to :class:`numpy.random.SeedSequence`),
    so callers can derive independent streams deterministically.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = np.abs(state.amplitudes) ** 2
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    (hit,) = np.nonzero(counts)
    return {int(c): int(counts[c]) for c in hit}
