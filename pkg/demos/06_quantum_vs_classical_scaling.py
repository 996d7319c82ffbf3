"""Quadratic sample-complexity gap
==================================

For the same target accuracy (the phase-estimation error radius at
register width n) and the same confidence 8/pi^2, count classical
Monte Carlo episodes via Hoeffding against the environment-circuit
applications one phase-estimation run spends.  The classical count
grows ~4x per qubit, the quantum one ~2x, so their ratio doubles.
"""

import math

from qbandit import (
    BanditParams,
    PolicySpec,
    angle_from_frequency,
    error_bound,
    mc_samples_needed,
    monte_carlo_estimate,
    qpe_qsample_count,
)

v = 0.45
confidence = 8 / math.pi**2

print(f"target value v = {v}, confidence = {confidence:.4f}\n")
print(f"{'n':>2} {'error radius':>13} {'qpe circuits':>13} {'mc episodes':>12} {'ratio':>9}")
prev = None
for n in range(3, 9):
    eps = error_bound(n, v)
    quantum = qpe_qsample_count(n)
    classical = mc_samples_needed(eps, 1 - confidence)
    ratio = classical / quantum
    growth = "" if prev is None else f"  (x{ratio / prev:.2f})"
    print(f"{n:>2} {eps:>13.5f} {quantum:>13} {classical:>12} {ratio:>9.3f}{growth}")
    prev = ratio

# The Monte Carlo side really does need ~1/eps^2 samples: its error
# shrinks as 1/sqrt(N).
policy = PolicySpec(0.5)
arms = BanditParams(angle_from_frequency(0.7), angle_from_frequency(0.2))
print("\nMonte Carlo check (balanced policy, true value 0.45):")
for n_samples in (100, 10_000, 1_000_000):
    est = monte_carlo_estimate(policy, arms, n_samples, seed=1)
    print(f"  N={n_samples:>9,}: estimate {est.estimate:.4f}")
