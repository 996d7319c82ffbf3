"""Classical Monte Carlo value estimation and sample-complexity accounting.

Plays the bandit episode by episode (draw an arm from the policy, draw
a Bernoulli reward from that arm) and compares the samples needed for a
given accuracy against the environment-circuit applications one
phase-estimation run spends: Hoeffding forces ~1/eps^2 classical
episodes, while the quantum run uses ~1/eps circuit applications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bandit import BanditParams, PolicySpec, reward_probability
from .qpe import qsample_count


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    samples_used: int
    seed: int


def monte_carlo_estimate(
    policy: PolicySpec, params: BanditParams, num_samples: int, seed: int
) -> McEstimate:
    """Mean reward over ``num_samples`` i.i.d. episodes."""
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    pick_left = rng.random(num_samples) < policy.p_left
    win_prob = np.where(
        pick_left,
        reward_probability(params.theta_left),
        reward_probability(params.theta_right),
    )
    wins = rng.random(num_samples) < win_prob
    return McEstimate(float(wins.mean()), num_samples, seed)


def mc_samples_needed(epsilon: float, delta: float) -> int:
    """Hoeffding sample count for |estimate - v| <= epsilon with failure
    probability at most delta: ceil(ln(2/delta) / (2 epsilon^2)),
    clamped to at least one sample."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    return max(1, math.ceil(math.log(2.0 / delta) / (2.0 * epsilon**2)))


def qpe_qsample_count(n: int) -> int:
    """Environment-circuit applications in one phase-estimation run with an
    n-qubit evaluation register: 2*(2^n - 1) + 1."""
    return qsample_count(n)
