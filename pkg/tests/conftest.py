"""Shared test configuration and helpers."""

from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings

from gaussprep import Circuit, StateVector, apply_circuit, new_zero_state

settings.register_profile(
    "package",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("package")


def simulate(circuit: Circuit) -> StateVector:
    """Run a circuit from |0...0> and return the final state."""
    state = new_zero_state(circuit.num_qubits)
    return apply_circuit(state, circuit)


def circuit_matrix(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a circuit, built column by column from basis states."""
    dim = 2**circuit.num_qubits
    matrix = np.empty((dim, dim), dtype=np.complex128)
    for j in range(dim):
        state = new_zero_state(circuit.num_qubits)
        state.amplitudes[:] = 0.0
        state.amplitudes[j] = 1.0
        apply_circuit(state, circuit)
        matrix[:, j] = state.amplitudes
    return matrix


def random_normalized_amplitudes(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random complex unit vector."""
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)
