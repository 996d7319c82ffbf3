"""State-vector simulator basics
================================

Build small circuits gate by gate, inspect amplitudes and marginals,
and draw seeded measurement shots.
"""

import numpy as np

from qbandit import (
    Circuit,
    apply_circuit,
    exact_distribution,
    h,
    inverse_circuit,
    measure_all,
    new_state,
    ry,
    x,
)

# Qubit 0 is the least-significant bit of the basis index, so |action=0,
# reward=1> on an (action, reward) register is index 2 and prints as "10".

state = new_state(2)
print("initial amplitudes:", state.amps.real)

# A Bell pair: Hadamard then controlled flip.
bell = apply_circuit(state, Circuit(2, (h(0), x(1, controls=[0]))))
print("bell amplitudes:   ", np.round(bell.amps.real, 4))
print("bell distribution: ", exact_distribution(bell))

# Rotations carry probability on sin^2(theta/2).
theta = 2 * np.arcsin(np.sqrt(0.3))
rotated = apply_circuit(new_state(1), Circuit(1, (ry(theta, 0),)))
print("\nP(|1>) after RY(2*arcsin(sqrt(0.3))):", abs(rotated.amps[1]) ** 2)

# Sampling is a pure function of (state, shots, seed): rerunning with the
# same seed reproduces the counts bit for bit.
counts_a = measure_all(bell, shots=1000, seed=7)
counts_b = measure_all(bell, shots=1000, seed=7)
print("\n1000 Bell shots:", counts_a.counts)
print("identical rerun:", counts_a.counts == counts_b.counts)

# Every circuit has an exact adjoint: applying it undoes the evolution.
circ = Circuit(2, (h(0), ry(0.8, 1, controls=[0]), x(0)))
there = apply_circuit(new_state(2), circ)
back = apply_circuit(there, inverse_circuit(circ))
print("\nround-trip error:", float(np.abs(back.amps - new_state(2).amps).max()))
