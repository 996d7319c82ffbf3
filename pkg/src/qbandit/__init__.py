"""Two-armed-bandit quantum environment learning and policy evaluation.

The package stacks up as:

* ``statevector`` — exact dense simulator with seeded sampling.
* ``bandit`` — policy/environment circuits and angle conversions.
* ``training`` + ``optimizers`` — shot-based derivative-free fitting of
  the environment angles to classical data.
* ``qpe`` — policy-value estimation by phase estimation of the Grover
  operator.
* ``noise`` + ``backends`` — ideal, exact-oracle, and Pauli-trajectory
  execution modes.
* ``baseline`` — classical Monte Carlo comparison.
* ``cli`` — the ``qbandit`` command-line front end.
"""

from .backends import ExactOracleBackend, IdealBackend, NoisyBackend, get_backend
from .bandit import (
    ACTION_QUBIT,
    REWARD_QUBIT,
    Arm,
    BanditParams,
    PolicySpec,
    angle_from_frequency,
    build_arm_circuit,
    build_environment_circuit,
    build_policy_circuit,
    policy_value,
    reward_probability,
)
from .baseline import McEstimate, mc_samples_needed, monte_carlo_estimate, qpe_qsample_count
from .noise import NoiseConfig, noisy_counts, run_trajectory
from .optimizers import OPTIMIZERS, LinearTrustRegion, NelderMead
from .qpe import (
    GroverOperator,
    QpeConfig,
    ValueHistogram,
    build_grover_operator,
    build_qpe_circuit,
    build_state_prep,
    error_bound,
    exact_value_distribution,
    outcome_to_value,
    qsample_count,
    run_qpe,
    value_grid,
)
from .statevector import (
    Circuit,
    Gate,
    MeasurementCounts,
    StateVector,
    apply_circuit,
    circuit,
    circuit_unitary,
    derive_seed,
    exact_distribution,
    h,
    inverse_circuit,
    measure_all,
    new_state,
    phase,
    ry,
    sample_counts,
    swap,
    unitary,
    x,
    z,
)
from .training import (
    Frequencies,
    TrainConfig,
    TrainingResult,
    TransitionDataset,
    empirical_frequencies,
    load_dataset,
    measured_frequencies,
    mse_loss,
    optimize,
    synthesize_dataset,
)

__version__ = "0.1.0"
