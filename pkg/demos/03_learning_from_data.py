"""Learning the environment angles from classical data
=======================================================

Draw a batch of classical bandit transitions, then fit the circuit's
rotation angles by minimizing the shot-based mean squared error with
the derivative-free trust-region optimizer.  The learned angles should
match the closed-form inversion of the data frequencies, and the final
loss should sit at the shot-noise floor rather than zero.
"""

from qbandit import (
    IdealBackend,
    TrainConfig,
    angle_from_frequency,
    empirical_frequencies,
    optimize,
    reward_probability,
    synthesize_dataset,
)

for label, f_left, f_right in (("70% / 20%", 0.7, 0.2), ("0% / 50%", 0.0, 0.5)):
    data = synthesize_dataset(f_left, f_right, pulls_per_arm=10_000, seed=42)
    freqs = empirical_frequencies(data)
    config = TrainConfig(seed=5)  # 8000 shots per evaluation, 100 evaluations
    result = optimize(data, config, IdealBackend())

    print(f"--- arms with win probabilities {label} ---")
    print(f"data frequencies:        ({freqs.f_left:.4f}, {freqs.f_right:.4f})")
    print(
        "closed-form angles:      "
        f"({angle_from_frequency(freqs.f_left):.4f}, {angle_from_frequency(freqs.f_right):.4f})"
    )
    print(
        "learned angles:          "
        f"({result.final_theta[0]:.4f}, {result.final_theta[1]:.4f})"
    )
    print(
        "learned win probability: "
        f"({reward_probability(result.final_theta[0]):.4f}, "
        f"{reward_probability(result.final_theta[1]):.4f})"
    )
    floor = (f_left * (1 - f_left) + f_right * (1 - f_right)) / (2 * config.shots_per_eval)
    print(f"final loss:              {result.final_loss:.2e} (shot-noise floor ~{floor:.1e})")
    print(f"evaluations used:        {result.iterations}\n")
