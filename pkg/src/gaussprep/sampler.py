"""Shot-based measurement simulation: draw basis-state samples from a state
(or an explicit probability vector) with a seeded PCG64 generator, and
compare empirical frequencies against exact probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .statevector import StateVector
from .statevector import probabilities as state_probabilities


@dataclass(frozen=True)
class ShotHistogram:
    """Measurement outcome counts for every basis state.

    counts[k] is how many of the shots landed in basis state k; the counts
    always sum to exactly the number of shots. The seed is recorded so the
    histogram is reproducible from its own metadata.
    """

    num_qubits: int
    shots: int
    seed: int
    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if counts.shape != (2**self.num_qubits,):
            raise ValueError(
                f"expected 2**{self.num_qubits} count bins, got shape {counts.shape}"
            )
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        total = int(counts.sum())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots} shots")

    @property
    def frequencies(self) -> np.ndarray:
        """Empirical probabilities counts/shots."""
        return self.counts / float(self.shots)


def sample_counts(
    state: Union[StateVector, np.ndarray], shots: int, seed: int
) -> ShotHistogram:
    """Draw independent basis-state samples by inverse-CDF lookup.

    Accepts either a StateVector (sampling its measurement distribution) or
    a probability vector directly. The generator is PCG64 seeded with the
    given integer, so identical (state, shots, seed) triples reproduce
    identical histograms on any platform.
    """
    if isinstance(state, StateVector):
        probs = state_probabilities(state)
    else:
        probs = np.asarray(state, dtype=np.float64)
    if probs.ndim != 1 or probs.size < 2 or (probs.size & (probs.size - 1)) != 0:
        raise ValueError(
            f"probabilities must have power-of-two length >= 2, got shape {probs.shape}"
        )
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if np.any(probs < 0.0):
        raise ValueError("probabilities must be non-negative")
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities must sum to 1, got {total}")
    num_qubits = probs.size.bit_length() - 1

    rng = np.random.Generator(np.random.PCG64(seed))
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    draws = rng.random(shots)
    indices = np.searchsorted(cdf, draws, side="right")
    indices = np.minimum(indices, probs.size - 1)
    counts = np.bincount(indices, minlength=probs.size).astype(np.int64)
    return ShotHistogram(num_qubits=num_qubits, shots=shots, seed=seed, counts=counts)


def tv_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Total variation distance 0.5 * sum |p_k - q_k|."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.sum(np.abs(p - q)))
