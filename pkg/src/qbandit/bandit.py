"""Two-armed-bandit policy and environment circuits.

The bandit lives on two qubits: qubit 0 carries the action (|0> = left
arm, |1> = right arm) and qubit 1 carries the Bernoulli reward.  Each
arm's winning probability is sin^2(theta/2) for its rotation angle, so
probabilities and angles convert back and forth in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .statevector import Circuit, Gate, ry, x

ACTION_QUBIT = 0
REWARD_QUBIT = 1


class Arm(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class BanditParams:
    """Environment rotation angles per arm; unbounded reals in radians."""

    theta_left: float
    theta_right: float

    def __post_init__(self):
        if not (math.isfinite(self.theta_left) and math.isfinite(self.theta_right)):
            raise ValueError("arm angles must be finite")

    def theta(self, arm: Arm) -> float:
        return self.theta_left if arm is Arm.LEFT else self.theta_right


@dataclass(frozen=True)
class PolicySpec:
    """Arm-selection rule: pick the left arm with probability ``p_left``.

    Realized as the one-parameter rotation RY(theta_policy) on the action
    qubit with p_left = cos^2(theta_policy / 2), so theta_policy is in
    [0, pi] and p_left = 0 maps to a full RY(pi) rotation rather than a
    bare X gate.
    """

    p_left: float
    theta_policy: float = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.p_left <= 1.0:
            raise ValueError(f"p_left must be in [0, 1], got {self.p_left}")
        object.__setattr__(
            self, "theta_policy", 2.0 * math.acos(math.sqrt(self.p_left))
        )


def angle_from_frequency(f: float) -> float:
    """Rotation angle whose arm wins with probability ``f``: 2*arcsin(sqrt(f))."""
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"frequency must be in [0, 1], got {f}")
    return 2.0 * math.asin(math.sqrt(f))


def reward_probability(theta: float) -> float:
    """Winning probability of an arm with rotation angle ``theta``: sin^2(theta/2)."""
    return math.sin(theta / 2.0) ** 2


def build_policy_circuit(policy: PolicySpec) -> Circuit:
    """RY(theta_policy) on the action qubit of the 2-qubit register."""
    return Circuit(2, (ry(policy.theta_policy, ACTION_QUBIT),))


def _environment_gates(params: BanditParams) -> tuple[Gate, ...]:
    # The X pair temporarily flips the action qubit so the left-arm
    # rotation triggers on |0>_A; the trailing controlled rotation then
    # handles the right arm on the restored action qubit.
    return (
        x(ACTION_QUBIT),
        ry(params.theta_left, REWARD_QUBIT, controls=[ACTION_QUBIT]),
        x(ACTION_QUBIT),
        ry(params.theta_right, REWARD_QUBIT, controls=[ACTION_QUBIT]),
    )


def build_environment_circuit(params: BanditParams) -> Circuit:
    """Reward-generating segment acting after a policy's action selection."""
    return Circuit(2, _environment_gates(params))


def build_arm_circuit(arm: Arm, params: BanditParams) -> Circuit:
    """Fixed-action circuit for one arm, starting from |00>.

    Left: X, controlled-RY(theta_left), X.  Right: an X first prepares
    |1> on the action qubit, then the environment's gate sequence runs
    with the left-arm rotation inactive.  Either way the action qubit
    ends in the chosen arm's state and only that arm's angle can affect
    the reward qubit.
    """
    if arm is Arm.LEFT:
        gates = (
            x(ACTION_QUBIT),
            ry(params.theta_left, REWARD_QUBIT, controls=[ACTION_QUBIT]),
            x(ACTION_QUBIT),
        )
    else:
        gates = (x(ACTION_QUBIT),) + _environment_gates(params)
    return Circuit(2, gates)


def policy_value(policy: PolicySpec, params: BanditParams) -> float:
    """Expected reward of the policy: sum of arm probabilities weighted by
    the arm-selection probabilities."""
    return policy.p_left * reward_probability(params.theta_left) + (
        1.0 - policy.p_left
    ) * reward_probability(params.theta_right)
