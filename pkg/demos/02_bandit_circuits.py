"""Two-armed bandit as a quantum circuit
=========================================

The bandit uses two qubits: the action qubit selects an arm (|0> =
left), and controlled rotations write each arm's win probability onto
the reward qubit.  Everything has a closed form, which the circuits
reproduce exactly.
"""

from qbandit import (
    Arm,
    BanditParams,
    PolicySpec,
    angle_from_frequency,
    apply_circuit,
    build_arm_circuit,
    build_environment_circuit,
    build_policy_circuit,
    exact_distribution,
    new_state,
    policy_value,
    reward_probability,
)
from qbandit.bandit import ACTION_QUBIT, REWARD_QUBIT

# Win probabilities convert to rotation angles and back.
arms = BanditParams(angle_from_frequency(0.7), angle_from_frequency(0.2))
print("left arm angle: ", round(arms.theta_left, 4), "-> P(win) =", reward_probability(arms.theta_left))
print("right arm angle:", round(arms.theta_right, 4), "-> P(win) =", round(reward_probability(arms.theta_right), 4))

# Fixing the action isolates one arm: the other arm's angle cannot leak in.
for arm in (Arm.LEFT, Arm.RIGHT):
    state = apply_circuit(new_state(2), build_arm_circuit(arm, arms))
    marginal = exact_distribution(state, qubits=[REWARD_QUBIT])
    print(f"{arm.value:>5} arm reward marginal: {marginal}")

# A policy is a single rotation on the action qubit.
policy = PolicySpec(0.5)
prep = build_policy_circuit(policy).then(build_environment_circuit(arms))
state = apply_circuit(new_state(2), prep)
print("\naction marginal under the balanced policy:", exact_distribution(state, qubits=[ACTION_QUBIT]))
print("reward marginal:", exact_distribution(state, qubits=[REWARD_QUBIT]))
print("closed-form policy value:", policy_value(policy, arms))
