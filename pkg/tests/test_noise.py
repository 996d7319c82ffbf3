"""Trajectory noise: channel conventions, determinism, degradation trends."""

import numpy as np
import pytest

from qbandit.backends import IdealBackend, NoisyBackend
from qbandit.bandit import BanditParams, PolicySpec, angle_from_frequency
from qbandit.noise import NoiseConfig, noisy_counts, run_trajectory
from qbandit.qpe import QpeConfig, exact_value_distribution, run_qpe
from qbandit.statevector import Circuit, derive_seed, h, ry, x

SILENT = NoiseConfig(p1=0.0, p2=0.0, readout_flip=0.0, seed=0)
ARMS = BanditParams(angle_from_frequency(0.7), angle_from_frequency(0.2))


def tv_distance(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


class TestNoiseConfig:
    def test_defaults_in_range(self):
        cfg = NoiseConfig()
        assert 0 <= cfg.p1 <= 1 and 0 <= cfg.p2 <= 1 and 0 <= cfg.readout_flip <= 1

    @pytest.mark.parametrize("field", ["p1", "p2", "readout_flip"])
    def test_rejects_out_of_range(self, field):
        with pytest.raises(ValueError, match=field):
            NoiseConfig(**{field: 1.5})


class TestRunTrajectory:
    def test_zero_rates_match_ideal_distribution(self):
        circ = Circuit(2, (h(0), x(1, controls=[0])))
        counts = {}
        for i in range(2000):
            bits = run_trajectory(circ, SILENT, derive_seed(0, i))
            counts[bits] = counts.get(bits, 0) + 1
        emp = {k: v / 2000 for k, v in counts.items()}
        ideal = IdealBackend().exact_probabilities(circ)
        assert tv_distance(emp, ideal) < 0.04

    def test_three_quarters_rate_depolarizes(self):
        # p = 3/4 with one uniform Pauli per error is maximal mixing:
        # P(flip) = (3/4) * (2/3) = 1/2 on a |0>-preserving gate.
        cfg = NoiseConfig(p1=0.75, p2=0.0, readout_flip=0.0, seed=0)
        circ = Circuit(1, (ry(0.0, 0),))
        ones = 0
        shots = 20000
        for i in range(shots):
            ones += run_trajectory(circ, cfg, derive_seed(1, i)) == "1"
        assert ones / shots == pytest.approx(0.5, abs=0.02)

    def test_full_readout_flip_inverts(self):
        cfg = NoiseConfig(p1=0.0, p2=0.0, readout_flip=1.0, seed=0)
        assert run_trajectory(Circuit(1, (ry(0.0, 0),)), cfg, seed=5) == "1"
        assert run_trajectory(Circuit(1, (x(0),)), cfg, seed=5) == "0"

    def test_measures_requested_subset(self):
        circ = Circuit(3, (x(2),))
        bits = run_trajectory(circ, SILENT, seed=1, qubits=(2,))
        assert bits == "1"


class TestNoisyCounts:
    def test_deterministic_given_seed(self):
        circ = Circuit(2, (h(0), ry(1.0, 1, controls=[0])))
        cfg = NoiseConfig(seed=3)
        a = noisy_counts(circ, 200, cfg, seed=8)
        b = noisy_counts(circ, 200, cfg, seed=8)
        assert a.counts == b.counts

    def test_zero_rates_deterministic_circuit(self):
        counts = noisy_counts(Circuit(1, (x(0),)), 100, SILENT, seed=0)
        assert counts.counts == {"1": 100}

    def test_readout_half_flip_rate(self):
        cfg = NoiseConfig(p1=0.0, p2=0.0, readout_flip=0.5, seed=1)
        counts = noisy_counts(Circuit(1, (ry(0.0, 0),)), 10000, cfg, seed=2)
        assert counts.frequency("1") == pytest.approx(0.5, abs=0.02)

    def test_trajectory_state_stays_normalized(self):
        # Pauli insertions are unitary, so outcome frequencies keep summing
        # to the shot count even at extreme rates.
        cfg = NoiseConfig(p1=1.0, p2=1.0, readout_flip=0.0, seed=0)
        circ = Circuit(2, (h(0), x(1, controls=[0]), ry(0.3, 0)))
        counts = noisy_counts(circ, 500, cfg, seed=9)
        assert sum(counts.counts.values()) == 500


class TestDegradationTrend:
    def test_qpe_depth_ordering(self):
        # Deeper evaluation registers mean more Grover repetitions, so the
        # noisy output drifts farther from the ideal distribution.
        policy = PolicySpec(0.5)
        shots, seeds = 150, (0, 1, 2)
        tv_by_n = {}
        for n in (3, 4):
            exact = exact_value_distribution(policy, ARMS, n)
            tvs = []
            for seed in seeds:
                hist = run_qpe(
                    policy,
                    ARMS,
                    QpeConfig(n=n, shots=shots, backend="noisy", seed=seed),
                    NoisyBackend(NoiseConfig()),
                )
                emp = {y: c / shots for y, c in hist.counts.items()}
                tvs.append(tv_distance(emp, exact))
            tv_by_n[n] = float(np.mean(tvs))
        assert tv_by_n[4] > tv_by_n[3]
