"""Dense state-vector simulation of small gate-based quantum circuits.

Conventions used throughout the package:

* Qubit 0 is the least-significant bit of the basis-state index, so the
  basis state with qubit 0 = a and qubit 1 = b has index a + 2*b.
* Bitstrings render the basis index in binary, i.e. the rightmost
  character is qubit 0.
* For multi-target gates, ``targets[0]`` is the least-significant bit of
  the gate-matrix index.

All operations are pure: they take a state in and return a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

MAX_QUBITS = 24

_SQ2 = 1.0 / np.sqrt(2.0)

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def derive_seed(*parts: int) -> int:
    """Deterministically derive a child seed from integer components.

    Used to give every (iteration, arm) evaluation and every noise
    trajectory its own reproducible random stream.
    """
    seq = np.random.SeedSequence([int(p) for p in parts])
    return int(seq.generate_state(1, np.uint64)[0])


class SimulationError(ValueError):
    """Raised for invalid circuits, gates, or simulator inputs."""


@dataclass(frozen=True)
class Gate:
    """One elementary unitary on named qubits, with optional controls.

    ``kind`` is one of X, RY, H, PHASE, Z, SWAP, UNITARY.  Rotation and
    phase gates carry their angle in ``params``; UNITARY carries an
    explicit matrix on up to 3 target qubits.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    params: tuple[float, ...] = ()
    payload: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if set(self.targets) & set(self.controls):
            raise SimulationError(
                f"targets {self.targets} and controls {self.controls} overlap"
            )
        if len(set(self.targets)) != len(self.targets):
            raise SimulationError(f"duplicate target qubits: {self.targets}")
        arity = {"X": 1, "RY": 1, "H": 1, "PHASE": 1, "Z": 1, "SWAP": 2}
        if self.kind in arity and len(self.targets) != arity[self.kind]:
            raise SimulationError(
                f"{self.kind} takes {arity[self.kind]} target(s), got {self.targets}"
            )
        if self.kind == "UNITARY":
            if self.payload is None:
                raise SimulationError("UNITARY gate needs a matrix payload")
            if len(self.targets) > 3:
                raise SimulationError("UNITARY supports at most 3 target qubits")
            m = np.asarray(self.payload, dtype=complex)
            dim = 2 ** len(self.targets)
            if m.shape != (dim, dim):
                raise SimulationError(
                    f"matrix shape {m.shape} does not fit {len(self.targets)} target(s)"
                )
            err = np.abs(m.conj().T @ m - np.eye(dim)).max()
            if err > 1e-12:
                raise SimulationError(f"matrix is not unitary (deviation {err:.2e})")

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix on the target qubits (controls not included)."""
        if self.kind == "X":
            return _X
        if self.kind == "RY":
            (theta,) = self.params
            c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind == "H":
            return _H
        if self.kind == "PHASE":
            (phi,) = self.params
            return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)
        if self.kind == "Z":
            return _Z
        if self.kind == "SWAP":
            return _SWAP
        if self.kind == "UNITARY":
            return np.asarray(self.payload, dtype=complex)
        raise SimulationError(f"unknown gate kind {self.kind!r}")

    @property
    def qubits(self) -> tuple[int, ...]:
        """All qubits the gate touches (targets plus controls)."""
        return self.targets + self.controls

    def adjoint(self) -> Gate:
        if self.kind == "RY":
            return Gate("RY", self.targets, self.controls, (-self.params[0],))
        if self.kind == "PHASE":
            return Gate("PHASE", self.targets, self.controls, (-self.params[0],))
        if self.kind == "UNITARY":
            return Gate(
                "UNITARY", self.targets, self.controls, payload=self.matrix.conj().T
            )
        # X, H, Z, SWAP are self-adjoint
        return self

    def controlled(self, *extra_controls: int) -> Gate:
        """Same gate with additional control qubits."""
        return Gate(
            self.kind,
            self.targets,
            self.controls + tuple(extra_controls),
            self.params,
            payload=self.payload,
        )


def x(target: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("X", (target,), tuple(controls))


def ry(theta: float, target: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("RY", (target,), tuple(controls), (float(theta),))


def h(target: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("H", (target,), tuple(controls))


def phase(phi: float, target: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("PHASE", (target,), tuple(controls), (float(phi),))


def z(target: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("Z", (target,), tuple(controls))


def swap(a: int, b: int, *, controls: Iterable[int] = ()) -> Gate:
    return Gate("SWAP", (a, b), tuple(controls))


def unitary(matrix: np.ndarray, targets: Iterable[int], *, controls: Iterable[int] = ()) -> Gate:
    return Gate("UNITARY", tuple(targets), tuple(controls), payload=np.asarray(matrix, dtype=complex))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on a fixed-width qubit register."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        for gate in self.gates:
            if any(q < 0 or q >= self.num_qubits for q in gate.qubits):
                raise SimulationError(
                    f"gate {gate.kind} on qubits {gate.qubits} exceeds "
                    f"register width {self.num_qubits}"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def then(self, other: Circuit) -> Circuit:
        """Concatenation: self first, then other."""
        if other.num_qubits != self.num_qubits:
            raise SimulationError(
                f"cannot join circuits on {self.num_qubits} and {other.num_qubits} qubits"
            )
        return Circuit(self.num_qubits, self.gates + other.gates)


def circuit(num_qubits: int, gates: Iterable[Gate] = ()) -> Circuit:
    return Circuit(num_qubits, tuple(gates))


def inverse_circuit(circ: Circuit) -> Circuit:
    """Adjoint circuit: reversed order, each gate replaced by its adjoint."""
    return Circuit(circ.num_qubits, tuple(g.adjoint() for g in reversed(circ.gates)))


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over the 2**num_qubits basis states."""

    num_qubits: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def new_state(num_qubits: int) -> StateVector:
    """The all-zeros state |0...0> on ``num_qubits`` qubits."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise SimulationError(
            f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}"
        )
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


_index_cache: dict[tuple[int, tuple[int, ...], tuple[int, ...]], np.ndarray] = {}


def _gate_rows(num_qubits: int, targets: tuple[int, ...], controls: tuple[int, ...]) -> np.ndarray:
    """Index table for a gate: rows[b] lists the basis indices whose target
    bits spell b (targets[0] least significant) and whose control bits are
    all 1.  Cached per (register, targets, controls) signature."""
    key = (num_qubits, targets, controls)
    cached = _index_cache.get(key)
    if cached is not None:
        return cached
    fixed = set(targets) | set(controls)
    free = [q for q in range(num_qubits) if q not in fixed]
    base = np.zeros(2 ** len(free), dtype=np.intp)
    enum = np.arange(2 ** len(free), dtype=np.intp)
    for i, q in enumerate(free):
        base |= ((enum >> i) & 1) << q
    base += sum(1 << c for c in controls)
    k = len(targets)
    rows = np.empty((2**k, base.size), dtype=np.intp)
    for b in range(2**k):
        offset = sum(((b >> j) & 1) << t for j, t in enumerate(targets))
        rows[b] = base + offset
    rows.setflags(write=False)
    if len(_index_cache) > 4096:
        _index_cache.clear()
    _index_cache[key] = rows
    return rows


def _apply_gate_inplace(amps: np.ndarray, num_qubits: int, gate: Gate) -> None:
    # Works for flat amplitude vectors and for (dim, dim) matrices whose
    # columns are states, as used by circuit_unitary.
    rows = _gate_rows(num_qubits, gate.targets, gate.controls)
    amps[rows] = np.tensordot(gate.matrix, amps[rows], axes=(1, 0))


def apply_circuit(state: StateVector, circ: Circuit) -> StateVector:
    """Apply every gate of ``circ`` in order; returns a new state."""
    if circ.num_qubits != state.num_qubits:
        raise SimulationError(
            f"circuit on {circ.num_qubits} qubits cannot act on a "
            f"{state.num_qubits}-qubit state"
        )
    amps = state.amps.copy()
    for gate in circ.gates:
        _apply_gate_inplace(amps, state.num_qubits, gate)
    return StateVector(state.num_qubits, amps)


def circuit_unitary(circ: Circuit) -> np.ndarray:
    """Dense matrix of the whole circuit, column by column.

    Intended for verification on small registers; O(4^n * gates).
    """
    dim = 2**circ.num_qubits
    mat = np.eye(dim, dtype=complex)
    for gate in circ.gates:
        _apply_gate_inplace(mat, circ.num_qubits, gate)
    return mat


def _marginal(state: StateVector, qubits: tuple[int, ...]) -> np.ndarray:
    """Born probabilities marginalized onto ``qubits``; outcome m has bit j
    equal to the measured value of qubits[j]."""
    probs = state.probabilities()
    idx = np.arange(probs.size, dtype=np.intp)
    out = np.zeros(len(idx), dtype=np.intp)
    for j, q in enumerate(qubits):
        out |= ((idx >> q) & 1) << j
    return np.bincount(out, weights=probs, minlength=2 ** len(qubits))


def exact_distribution(
    state: StateVector, qubits: Iterable[int] | None = None
) -> dict[str, float]:
    """Marginal Born probabilities over the given qubits (default: all).

    Keys are bitstrings with qubits[0] rightmost; zero-probability
    outcomes are omitted.
    """
    qs = tuple(range(state.num_qubits)) if qubits is None else tuple(qubits)
    if not qs:
        raise SimulationError("qubit subset must be non-empty")
    if any(q < 0 or q >= state.num_qubits for q in qs):
        raise SimulationError(f"qubits {qs} outside register of {state.num_qubits}")
    if len(set(qs)) != len(qs):
        raise SimulationError(f"duplicate qubits in subset {qs}")
    marg = _marginal(state, qs)
    width = len(qs)
    return {
        format(m, f"0{width}b"): float(p) for m, p in enumerate(marg) if p > 0.0
    }


@dataclass(frozen=True)
class MeasurementCounts:
    """Shot counts per measured bitstring."""

    counts: dict[str, int]
    total_shots: int

    def frequency(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.total_shots


def sample_counts(
    state: StateVector,
    shots: int,
    seed: int,
    qubits: Iterable[int] | None = None,
) -> MeasurementCounts:
    """Draw i.i.d. measurement shots from the exact distribution.

    Shot i is a pure function of (seed, i): the i-th uniform of a
    counter-based Philox stream keyed by ``seed`` is pushed through the
    inverse CDF, so results do not depend on evaluation order.
    """
    if shots < 1:
        raise SimulationError(f"shots must be >= 1, got {shots}")
    qs = tuple(range(state.num_qubits)) if qubits is None else tuple(qubits)
    marg = _marginal(state, qs)
    cdf = np.cumsum(marg)
    cdf[-1] = 1.0
    uniforms = np.random.Generator(np.random.Philox(key=seed)).random(shots)
    outcomes = np.searchsorted(cdf, uniforms, side="right")
    width = len(qs)
    values, reps = np.unique(outcomes, return_counts=True)
    counts = {format(int(m), f"0{width}b"): int(c) for m, c in zip(values, reps)}
    return MeasurementCounts(counts, shots)


def measure_all(state: StateVector, shots: int, seed: int) -> MeasurementCounts:
    """Measure every qubit ``shots`` times; deterministic given seed."""
    return sample_counts(state, shots, seed, qubits=None)
