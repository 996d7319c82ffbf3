"""Learning bandit rotation angles from classical transition data.

The loop follows the shot-based procedure: compute empirical win
frequencies from the data once, then repeatedly (run both arm circuits
for M shots, read off measured frequencies, score the mean squared
error against the data, let a derivative-free optimizer update the
angles) until the evaluation budget is spent.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .backends import Backend, IdealBackend
from .bandit import REWARD_QUBIT, Arm, BanditParams, build_arm_circuit
from .optimizers import OPTIMIZERS
from .statevector import derive_seed


class DatasetError(ValueError):
    """Raised for unreadable or malformed transition data."""


@dataclass(frozen=True)
class TransitionDataset:
    """Batch of (action, reward) records with per-arm tallies."""

    records: tuple[tuple[Arm, int], ...]

    @property
    def pulls(self) -> dict[Arm, int]:
        tally = {Arm.LEFT: 0, Arm.RIGHT: 0}
        for arm, _ in self.records:
            tally[arm] += 1
        return tally

    @property
    def wins(self) -> dict[Arm, int]:
        tally = {Arm.LEFT: 0, Arm.RIGHT: 0}
        for arm, reward in self.records:
            tally[arm] += reward
        return tally

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class Frequencies:
    """Per-arm win frequencies, both in [0, 1]."""

    f_left: float
    f_right: float

    def __post_init__(self):
        for name, value in (("f_left", self.f_left), ("f_right", self.f_right)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class TrainConfig:
    shots_per_eval: int = 8000
    max_iterations: int = 100
    initial_theta: tuple[float, float] = (math.pi / 2, math.pi / 2)
    rho_start: float = 0.5
    rho_end: float = 1e-3
    seed: int = 0
    optimizer: str = "cobyla"

    def __post_init__(self):
        if self.shots_per_eval < 1:
            raise ValueError(f"shots_per_eval must be >= 1, got {self.shots_per_eval}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not self.rho_start > self.rho_end > 0:
            raise ValueError(
                f"need rho_start > rho_end > 0, got {self.rho_start}, {self.rho_end}"
            )
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(
                f"unknown optimizer {self.optimizer!r}; expected one of {sorted(OPTIMIZERS)}"
            )


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    theta_left: float
    theta_right: float
    loss: float


@dataclass(frozen=True)
class TrainingResult:
    trace: tuple[TraceEntry, ...]
    final_theta: tuple[float, float]
    final_loss: float

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def to_dict(self) -> dict:
        return {
            "final_theta": list(self.final_theta),
            "final_loss": self.final_loss,
            "iterations": self.iterations,
        }


def load_dataset(path: str | Path) -> TransitionDataset:
    """Parse a JSON Lines file of {"action": "left"|"right", "reward": 0|1}.

    Blank lines are skipped; anything else malformed raises DatasetError
    naming the offending line.  Both arms must appear at least once.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"dataset file not found: {path}")
    records: list[tuple[Arm, int]] = []
    with path.open() as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise DatasetError(f"{path}:{lineno}: expected an object, got {obj!r}")
            action = obj.get("action")
            if action not in ("left", "right"):
                raise DatasetError(
                    f"{path}:{lineno}: unknown action {action!r} (want 'left' or 'right')"
                )
            reward = obj.get("reward")
            if reward not in (0, 1):
                raise DatasetError(
                    f"{path}:{lineno}: reward must be 0 or 1, got {reward!r}"
                )
            records.append((Arm(action), int(reward)))
    dataset = TransitionDataset(tuple(records))
    for arm, pulls in dataset.pulls.items():
        if pulls == 0:
            raise DatasetError(f"{path}: no records for the {arm.value} arm")
    return dataset


def synthesize_dataset(
    f_left: float, f_right: float, pulls_per_arm: int, seed: int
) -> TransitionDataset:
    """Draw a balanced Bernoulli dataset with the given win probabilities."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    records: list[tuple[Arm, int]] = []
    for arm, f in ((Arm.LEFT, f_left), (Arm.RIGHT, f_right)):
        rewards = (rng.random(pulls_per_arm) < f).astype(int)
        records.extend((arm, int(r)) for r in rewards)
    return TransitionDataset(tuple(records))


def write_dataset(dataset: TransitionDataset, path: str | Path) -> None:
    with Path(path).open("w") as handle:
        for arm, reward in dataset.records:
            handle.write(json.dumps({"action": arm.value, "reward": reward}) + "\n")


def empirical_frequencies(data: TransitionDataset) -> Frequencies:
    """Win frequency per arm: wins / pulls."""
    pulls, wins = data.pulls, data.wins
    for arm in Arm:
        if pulls[arm] == 0:
            raise DatasetError(f"cannot estimate frequency: {arm.value} arm never pulled")
    return Frequencies(
        wins[Arm.LEFT] / pulls[Arm.LEFT], wins[Arm.RIGHT] / pulls[Arm.RIGHT]
    )


def measured_frequencies(
    params: BanditParams, shots: int, backend: Backend, seed: int
) -> Frequencies:
    """Run both arm circuits for ``shots`` shots and return the measured
    reward frequencies.  Each arm gets its own stream derived from
    (seed, arm index)."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    values = []
    for index, arm in enumerate((Arm.LEFT, Arm.RIGHT)):
        circ = build_arm_circuit(arm, params)
        values.append(
            backend.frequency(circ, REWARD_QUBIT, shots, derive_seed(seed, index))
        )
    return Frequencies(values[0], values[1])


def mse_loss(meas: Frequencies, data: Frequencies) -> float:
    """Mean squared error between measured and data frequencies."""
    return (
        (meas.f_left - data.f_left) ** 2 + (meas.f_right - data.f_right) ** 2
    ) / 2.0


def optimize(
    data: TransitionDataset,
    config: TrainConfig,
    backend: Backend | None = None,
) -> TrainingResult:
    """Fit (theta_left, theta_right) to the dataset's win frequencies.

    Every objective evaluation is one full measurement cycle; evaluation
    k draws its shots from streams keyed by (config.seed, k, arm), so a
    rerun with the same config reproduces the trace exactly on the
    ideal backend.  The returned final point is the best evaluation
    accepted by the optimizer (lowest recorded loss).
    """
    backend = backend or IdealBackend()
    target = empirical_frequencies(data)
    trace: list[TraceEntry] = []

    def objective(theta: np.ndarray) -> float:
        k = len(trace)
        meas = measured_frequencies(
            BanditParams(float(theta[0]), float(theta[1])),
            config.shots_per_eval,
            backend,
            derive_seed(config.seed, k),
        )
        loss = mse_loss(meas, target)
        trace.append(TraceEntry(k, float(theta[0]), float(theta[1]), loss))
        return loss

    optimizer = OPTIMIZERS[config.optimizer]()
    best = optimizer.minimize(
        objective,
        np.asarray(config.initial_theta, dtype=float),
        rho_start=config.rho_start,
        rho_end=config.rho_end,
        max_evals=config.max_iterations - 1,
    )

    # Final acceptance measurement: one reserved evaluation re-scores the
    # returned parameters, so the reported loss is a fresh draw rather
    # than the minimum over noisy search evaluations.
    final_theta = np.asarray(best.x, dtype=float)
    final_loss = objective(final_theta)
    return TrainingResult(
        trace=tuple(trace),
        final_theta=(float(final_theta[0]), float(final_theta[1])),
        final_loss=final_loss,
    )


def write_trace_csv(result: TrainingResult, path: str | Path) -> None:
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["iteration", "theta_left", "theta_right", "loss"])
        for entry in result.trace:
            writer.writerow(
                [entry.iteration, repr(entry.theta_left), repr(entry.theta_right), repr(entry.loss)]
            )


def write_result_json(result: TrainingResult, path: str | Path) -> None:
    with Path(path).open("w") as handle:
        json.dump(result.to_dict(), handle, indent=2)
        handle.write("\n")
