"""Ground-truth reference objects, independent of the circuit path: the
discrete Gaussian target, the product-state amplitude formula, a literal
brute-force DFT, and the closed-form output distribution.

These are the oracles the simulator is checked against; they deliberately
avoid the gate kernels (and any FFT) so agreement is evidence, not tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import rotation_angle

MAX_ORACLE_QUBITS = 26
MAX_DFT_LENGTH = 2**16


@dataclass(frozen=True)
class GaussianSpec:
    """Target profile e^(-decay_rate * x^2), mean 0, on [domain_lo, domain_hi).

    decay_rate = 0 is allowed and yields the uniform distribution.
    """

    decay_rate: float = 1.0
    domain_lo: float = -2.0
    domain_hi: float = 2.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.decay_rate) or self.decay_rate < 0.0:
            raise ValueError(f"decay_rate must be finite and >= 0, got {self.decay_rate}")
        if not (self.domain_lo < self.domain_hi):
            raise ValueError(
                f"domain_lo must be < domain_hi, got [{self.domain_lo}, {self.domain_hi})"
            )

    @property
    def sigma(self) -> float:
        """Standard deviation 1/sqrt(2*decay_rate); infinite for the uniform case."""
        if self.decay_rate == 0.0:
            return math.inf
        return 1.0 / math.sqrt(2.0 * self.decay_rate)


@dataclass(frozen=True)
class Grid:
    """2**n equally spaced points covering [domain_lo, domain_hi), hi excluded."""

    n: int
    points: np.ndarray

    @property
    def spacing(self) -> float:
        return float(self.points[1] - self.points[0]) if len(self.points) > 1 else 0.0


@dataclass(frozen=True)
class TargetDistribution:
    """Ideal discrete Gaussian: probabilities G(x_k) and amplitudes sqrt(G(x_k))."""

    probabilities: np.ndarray
    amplitudes: np.ndarray


def grid_points(n: int, spec: GaussianSpec = GaussianSpec()) -> Grid:
    """x_k = domain_lo + k * (domain_hi - domain_lo) / 2**n for k = 0..2**n - 1."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    step = (spec.domain_hi - spec.domain_lo) / 2.0**n
    return Grid(n, spec.domain_lo + step * np.arange(2**n))


def target_distribution(spec: GaussianSpec, n: int) -> TargetDistribution:
    """G(x_k) = e^(-decay_rate*x_k^2) normalized over the grid.

    Normalization subtracts the maximum exponent first so very large decay
    rates cannot underflow every weight at once.
    """
    grid = grid_points(n, spec)
    exponents = -spec.decay_rate * grid.points**2
    weights = np.exp(exponents - exponents.max())
    probs = weights / weights.sum()
    return TargetDistribution(probabilities=probs, amplitudes=np.sqrt(probs))


def product_amplitudes_oracle(n: int, beta: float) -> np.ndarray:
    """Amplitudes of the rotation layer's product state, straight from the
    formula: alpha_x = prod_j cos(theta_j/2)^(1-x_j) * sin(theta_j/2)^(x_j)."""
    if n < 1 or n > MAX_ORACLE_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_ORACLE_QUBITS}], got {n}")
    amps = np.ones(1)
    for j in range(n - 1, -1, -1):
        half = rotation_angle(j, beta) / 2.0
        # kron keeps bit j at significance 2**j: the outer factor is qubit j.
        amps = np.kron(amps, np.array([math.cos(half), math.sin(half)]))
    return amps


def dft_oracle(alpha: np.ndarray) -> np.ndarray:
    """beta_k = (1/sqrt(2^n)) * sum_x alpha_x * e^(2*pi*i*x*k/2^n), evaluated
    as the literal double sum (O(4^n) on purpose; no FFT, no gate kernels)."""
    alpha = np.asarray(alpha)
    dim = alpha.shape[0]
    if dim < 1 or dim & (dim - 1) != 0:
        raise ValueError(f"length must be a power of two, got {dim}")
    if dim > MAX_DFT_LENGTH:
        raise ValueError(f"length {dim} exceeds the {MAX_DFT_LENGTH} oracle cap")
    xs = np.arange(dim, dtype=np.int64)
    out = np.empty(dim, dtype=np.complex128)
    norm = 1.0 / math.sqrt(dim)
    for k in range(dim):
        # x*k mod dim is exact in int64 and leaves e^(2*pi*i*...) unchanged.
        phases = np.exp(2j * np.pi * ((xs * k) % dim) / dim)
        out[k] = norm * np.dot(alpha, phases)
    return out


def closed_form_probabilities(n: int, beta: float, msb_flipped: bool = False) -> np.ndarray:
    """Output distribution of the preparation circuit in closed form:

        |beta_m|^2 = (1/2^n) * prod_j (1 + sin(theta_j) * cos(2*pi*m*2^j/2^n))

    With msb_flipped the index m is XORed with 2^(n-1), accounting for the
    alignment X on the highest qubit.
    """
    if n < 1 or n > MAX_ORACLE_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_ORACLE_QUBITS}], got {n}")
    dim = 1 << n
    m = np.arange(dim, dtype=np.int64)
    probs = np.full(dim, 1.0 / dim)
    for j in range(n):
        theta = rotation_angle(j, beta)
        phase_index = (m << j) % dim  # exact: m * 2**j mod 2**n in int64
        probs *= 1.0 + math.sin(theta) * np.cos(2.0 * np.pi * phase_index / dim)
    if msb_flipped:
        probs = probs[m ^ (dim >> 1)]
    return probs
