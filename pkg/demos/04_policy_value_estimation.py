"""Policy evaluation by quantum phase estimation
================================================

The policy+environment circuit prepares the reward qubit with
probability equal to the policy value v.  Phase estimation of its
Grover operator reads v back as a quantized estimate sin^2(pi*y/2^n):
an n-qubit register distinguishes 2^(n-1)+1 values, and the estimate
lands within the O(1/2^n) radius with probability at least 8/pi^2.
"""

import math

from qbandit import (
    BanditParams,
    PolicySpec,
    QpeConfig,
    angle_from_frequency,
    error_bound,
    policy_value,
    run_qpe,
    value_grid,
)

arms = BanditParams(angle_from_frequency(0.7), angle_from_frequency(0.2))

for p_left in (0.5, 0.0):
    policy = PolicySpec(p_left)
    v = policy_value(policy, arms)
    print(f"--- policy p_left={p_left}: true value v = {v} ---")
    for n in (3, 4):
        hist = run_qpe(policy, arms, QpeConfig(n=n, shots=300, seed=1))
        eps = error_bound(n, v)
        close = sum(
            c for y, c in hist.counts.items() if abs(hist.value(y) - v) <= eps
        )
        print(f"n={n}: grid {[round(g, 3) for g in value_grid(n)]}")
        print(
            f"     mode estimate {hist.mode_value():.4f}, "
            f"error radius {eps:.3f}, "
            f"shots within radius {close}/300 (need >= {math.ceil(300 * 8 / math.pi**2)})"
        )
        print(f"     environment-circuit applications per run: {hist.qsamples}")
    print()
