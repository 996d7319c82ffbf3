"""Backend surfaces: sampling, exact oracle, apportionment, aliases."""

import numpy as np
import pytest

from qbandit.backends import (
    ExactOracleBackend,
    IdealBackend,
    NoisyBackend,
    apportion,
    get_backend,
)
from qbandit.noise import NoiseConfig
from qbandit.statevector import Circuit, h, ry, x


def plus_circuit():
    return Circuit(1, (h(0),))


class TestApportion:
    def test_sums_to_shots(self):
        probs = {"00": 0.21, "01": 0.33, "10": 0.05, "11": 0.41}
        counts = apportion(probs, 997)
        assert sum(counts.values()) == 997

    def test_exact_fractions(self):
        assert apportion({"0": 0.25, "1": 0.75}, 4) == {"0": 1, "1": 3}

    def test_deterministic_tie_break(self):
        probs = {"0": 0.5, "1": 0.5}
        assert apportion(probs, 3) == apportion(probs, 3)
        assert sum(apportion(probs, 3).values()) == 3


class TestIdealBackend:
    def test_counts_match_frequency(self):
        backend = IdealBackend()
        counts = backend.counts(plus_circuit(), 2000, seed=4)
        assert sum(counts.counts.values()) == 2000
        assert abs(counts.frequency("1") - 0.5) < 0.05

    def test_exact_probabilities(self):
        probs = IdealBackend().exact_probabilities(plus_circuit())
        assert probs["0"] == pytest.approx(0.5, abs=1e-12)

    def test_frequency_on_qubit(self):
        circ = Circuit(2, (x(1),))
        assert IdealBackend().frequency(circ, 1, 100, seed=0) == 1.0


class TestExactOracleBackend:
    def test_counts_are_apportioned_exact(self):
        backend = ExactOracleBackend()
        counts = backend.counts(plus_circuit(), 301, seed=99)
        assert counts.counts in ({"0": 150, "1": 151}, {"0": 151, "1": 150})

    def test_frequency_is_exact(self):
        circ = Circuit(1, (ry(2 * np.arcsin(np.sqrt(0.3)), 0),))
        assert ExactOracleBackend().frequency(circ, 0, 10, seed=0) == pytest.approx(
            0.3, abs=1e-12
        )

    def test_seed_independent(self):
        backend = ExactOracleBackend()
        a = backend.counts(plus_circuit(), 500, seed=1)
        b = backend.counts(plus_circuit(), 500, seed=2)
        assert a.counts == b.counts


class TestNoisyBackend:
    def test_zero_rates_match_ideal_exactly(self):
        silent = NoiseConfig(p1=0.0, p2=0.0, readout_flip=0.0, seed=0)
        counts = NoisyBackend(silent).counts(Circuit(1, (x(0),)), 50, seed=3)
        assert counts.counts == {"1": 50}

    def test_no_exact_probabilities(self):
        assert NoisyBackend().exact_probabilities(plus_circuit()) is None


class TestGetBackend:
    def test_aliases(self):
        assert isinstance(get_backend("ideal"), IdealBackend)
        assert isinstance(get_backend("exact"), ExactOracleBackend)
        assert isinstance(get_backend("exact-oracle"), ExactOracleBackend)
        assert isinstance(get_backend("noisy"), NoisyBackend)

    def test_noise_config_passed_through(self):
        noise = NoiseConfig(p1=0.1)
        assert get_backend("noisy", noise).noise.p1 == 0.1

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown backend"):
            get_backend("hardware")
