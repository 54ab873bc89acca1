"""Acceptance gate: every headline guarantee of the package, one test per
criterion, each printing a single PASS/FAIL line directly to the terminal
(bypassing capture) before asserting."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import circuit_matrix, simulate
from gaussprep import (
    GaussianSpec,
    PruningPolicy,
    build_gaussian_prep,
    build_qft,
    calibrate_beta,
    closed_form_probabilities,
    count_gates,
    dft_oracle,
    encode_exact,
    fidelity,
    kept_cphase_count,
    magnitude_fidelity,
    probabilities,
    product_amplitudes_oracle,
    pruning_fidelity_bound,
    run_prepare,
    sample_counts,
    target_distribution,
    tv_distance,
)

DELTA_DEFAULT = 0.0123


def emit(capsys, criterion: int, passed: bool, detail: str) -> None:
    label = "PASS" if passed else "FAIL"
    with capsys.disabled():
        print(f"CRITERION {criterion:02d}: {label} - {detail}")


def prepared_probabilities(n: int, beta: float, delta: float) -> np.ndarray:
    circuit = build_gaussian_prep(
        n, GaussianSpec(decay_rate=1.0), PruningPolicy(delta), beta_override=beta
    )
    return probabilities(simulate(circuit))


@pytest.fixture(scope="module")
def calibrated_betas():
    return {n: calibrate_beta(1.0, n).best_beta for n in (8, 10, 12)}


def test_criterion_01_bound_reference_value(capsys):
    value = pruning_fidelity_bound(16, DELTA_DEFAULT, loose=True)
    passed = abs(value - 0.990317) <= 1e-5
    emit(capsys, 1, passed, f"loose bound at n=16, delta=0.0123 is {value:.6f} (want 0.990317 +/- 1e-5)")
    assert passed


def test_criterion_02_pruned_fidelity_respects_bound(capsys):
    spec = GaussianSpec(decay_rate=1.0)
    worst_margin = math.inf
    worst_cell = None
    for n in range(2, 13):
        full = simulate(build_gaussian_prep(n, spec, PruningPolicy(0.0)))
        for delta in (0.1, DELTA_DEFAULT, 0.001):
            pruned = simulate(build_gaussian_prep(n, spec, PruningPolicy(delta)))
            bound = 1.0 - (n - 1) ** 2 * delta**2 / 4.0
            margin = fidelity(full, pruned) - bound
            if margin < worst_margin:
                worst_margin, worst_cell = margin, (n, delta)
    passed = worst_margin >= 0.0
    emit(capsys, 2, passed,
         f"33 (n, delta) cells, worst fidelity margin over 1-(n-1)^2*delta^2/4 "
         f"is {worst_margin:.3e} at {worst_cell}")
    assert passed


def test_criterion_03_three_path_agreement(capsys):
    worst = 0.0
    for n in range(2, 11):
        flip = 1 << (n - 1)
        indices = np.arange(1 << n)
        for beta in (0.25, 1.0, 2.5):
            simulated = prepared_probabilities(n, beta, 0.0)
            transformed = np.abs(dft_oracle(product_amplitudes_oracle(n, beta))) ** 2
            oracle = transformed[indices ^ flip]
            closed = closed_form_probabilities(n, beta, msb_flipped=True)
            worst = max(
                worst,
                float(np.max(np.abs(simulated - oracle))),
                float(np.max(np.abs(simulated - closed))),
                float(np.max(np.abs(oracle - closed))),
            )
    passed = worst <= 1e-10
    emit(capsys, 3, passed,
         f"simulation vs brute DFT vs closed form, n=2..10 x beta in {{0.25, 1.0, 2.5}}: "
         f"max pairwise deviation {worst:.2e} (tolerance 1e-10)")
    assert passed


def test_criterion_04_qft_matches_dft_matrix(capsys):
    worst = 0.0
    for n in range(1, 9):
        dim = 1 << n
        actual = circuit_matrix(build_qft(n))
        j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="xy")
        expected = np.exp(2j * np.pi * j * k / dim) / math.sqrt(dim)
        worst = max(worst, float(np.max(np.abs(actual - expected))))
    passed = worst <= 1e-10
    emit(capsys, 4, passed,
         f"full QFT unitary vs DFT matrix, n=1..8: max entry deviation {worst:.2e}")
    assert passed


def test_criterion_05_calibrated_accuracy(capsys, calibrated_betas):
    details = []
    passed = True
    for n in (8, 12):
        result = run_prepare(n, decay_rate=1.0, delta=0.0, beta_mode=calibrated_betas[n])
        fid = result.report.fidelity
        err = result.report.mse_amplitude
        passed = passed and fid >= 0.99 and err <= 1e-4
        details.append(f"n={n}: fidelity {fid:.6f} (>= 0.99), mse {err:.2e} (<= 1e-4)")
    emit(capsys, 5, passed, "; ".join(details))
    assert passed


def test_criterion_06_gate_cost_scaling(capsys):
    full_ok = all(
        kept_cphase_count(n, PruningPolicy(0.0)) == n * (n - 1) // 2
        for n in range(1, 65)
    ) and all(
        count_gates(build_qft(n)).cphase == n * (n - 1) // 2 for n in (2, 8, 16, 32, 64)
    )

    policy = PruningPolicy(DELTA_DEFAULT)

    def expected_kept(n: int) -> int:
        return sum(n - d for d in range(1, min(n - 1, 7) + 1))

    pruned_ok = all(kept_cphase_count(n, policy) == expected_kept(n) for n in range(2, 65))
    kept_16 = count_gates(build_qft(16, policy)).cphase
    pruned_ok = pruned_ok and kept_16 == 84

    increments = {
        kept_cphase_count(n + 1, policy) - kept_cphase_count(n, policy)
        for n in range(9, 64)
    }
    linear_ok = increments == {7}

    encoder_totals = {
        n: count_gates(encode_exact(target_distribution(GaussianSpec(1.0), n).amplitudes, n)).total
        for n in range(4, 11)
    }
    doubling_ok = all(encoder_totals[n + 1] >= 2 * encoder_totals[n] for n in range(4, 10))

    passed = full_ok and pruned_ok and linear_ok and doubling_ok
    emit(capsys, 6, passed,
         f"full QFT count n(n-1)/2 up to n=64: {full_ok}; pruned count at delta=0.0123 "
         f"matches sum(n-d) with {kept_16} kept at n=16: {pruned_ok}; per-qubit increment "
         f"{sorted(increments)} for n>8: {linear_ok}; baseline at least doubles per qubit "
         f"for n=4..10: {doubling_ok}")
    assert passed


def test_criterion_07_pruning_barely_moves_kl(capsys, calibrated_betas):
    details = []
    passed = True
    for n in (10, 12):
        beta = calibrated_betas[n]
        kl_full = run_prepare(n, 1.0, 0.0, beta).report.kl_divergence
        kl_pruned = run_prepare(n, 1.0, DELTA_DEFAULT, beta).report.kl_divergence
        ok = kl_pruned <= 1.1 * kl_full + 1e-9
        passed = passed and ok
        details.append(f"n={n}: KL {kl_pruned:.6e} vs 1.1 x {kl_full:.6e}")
    emit(capsys, 7, passed, "; ".join(details) + " (KL from prepared to target)")
    assert passed


def test_criterion_08_exact_encoding_of_the_target(capsys):
    target = target_distribution(GaussianSpec(decay_rate=1.0), 8).amplitudes
    state = simulate(encode_exact(target, 8))
    fid = magnitude_fidelity(target, state)
    passed = fid >= 1.0 - 1e-10
    emit(capsys, 8, passed, f"amplitude-encoding fidelity at n=8 is 1 - {1.0 - fid:.2e}")
    assert passed


def test_criterion_09_seeded_sampling(capsys):
    probs = run_prepare(5, 1.0, DELTA_DEFAULT, "heuristic").prepared_probabilities
    first = sample_counts(probs, shots=50_000, seed=1234)
    second = sample_counts(probs, shots=50_000, seed=1234)
    deterministic = bool(np.array_equal(first.counts, second.counts))
    tv = tv_distance(first.frequencies, probs)
    passed = deterministic and tv <= 0.02
    emit(capsys, 9, passed,
         f"same-seed histograms identical: {deterministic}; "
         f"TV at 50000 shots is {tv:.4f} (<= 0.02)")
    assert passed


def test_criterion_10_hardware_noise_comparison(capsys):
    with capsys.disabled():
        print("CRITERION 10: SKIP - hardware-noise broadening comparison is out "
              "of scope (no device noise model in this package)")
    pytest.skip("no hardware noise model: simulation here is exact by design")
