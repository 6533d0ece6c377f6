"""Dense state-vector register with stride-based gate application.

Qubits are 1-based and qubit 1 is the fastest-varying bit of the basis index:
basis state |i⟩ assigns qubit k the value of bit k-1 of i. Gates are applied
by reshaping the amplitude vector to a rank-N tensor and contracting the
target axes — never by materializing a 2^N x 2^N matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import (
    ACCUMULATED_ATOL,
    DEFAULT_MAX_QUBITS,
    GuardExceeded,
    STATE_DUMP_EPS,
)
from .gates import GATE_ARITY, PlacedGate, gate_matrix


@dataclass(frozen=True)
class StateVector:
    """num_qubits and the 2^num_qubits complex amplitudes (treat as read-only)."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, got {self.amplitudes.shape}"
            )

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def basis_state(num_qubits: int, index: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """|index⟩ on a register of num_qubits qubits."""
    if num_qubits < 1:
        raise ValueError("register needs at least one qubit")
    if num_qubits > max_qubits:
        raise GuardExceeded(
            f"{num_qubits}-qubit register exceeds the guard of {max_qubits} qubits"
        )
    if not 0 <= index < (1 << num_qubits):
        raise ValueError(f"basis index {index} out of range")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def qubit_axis(num_qubits: int, qubit: int) -> int:
    """Tensor axis of a qubit once amplitudes are reshaped to [2]*N."""
    if not 1 <= qubit <= num_qubits:
        raise ValueError(f"qubit {qubit} out of range 1..{num_qubits}")
    return num_qubits - qubit


def apply_placed_gate(state: StateVector, gate: PlacedGate) -> StateVector:
    """Apply one gate at its positions; identity on every other qubit."""
    n = state.num_qubits
    for p in gate.positions:
        if not 1 <= p <= n:
            raise ValueError(f"gate position {p} out of range 1..{n}")
    arity = GATE_ARITY[gate.kind]
    mat = gate_matrix(gate.kind)
    tensor = state.amplitudes.reshape([2] * n)
    src = [qubit_axis(n, p) for p in gate.positions]
    # Slot t of the gate becomes bit t of the local index, so slot 0 must land
    # on the last (fastest-varying) axis of the front block.
    dst = [arity - 1 - t for t in range(arity)]
    tensor = np.moveaxis(tensor, src, dst)
    shape = tensor.shape
    tensor = (mat @ tensor.reshape(1 << arity, -1)).reshape(shape)
    tensor = np.moveaxis(tensor, dst, src)
    return StateVector(n, np.ascontiguousarray(tensor.reshape(-1)))


def apply_sequence(state: StateVector, gates, check_norm: bool = True) -> StateVector:
    """Apply gates in order; optionally enforce the accumulated norm budget."""
    gates = list(gates)
    for gate in gates:
        state = apply_placed_gate(state, gate)
    if check_norm and gates:
        budget = ACCUMULATED_ATOL * max(1, len(gates))
        drift = abs(state.norm_sq - 1.0)
        if drift > budget:
            raise ArithmeticError(
                f"norm drifted by {drift:.3e} over {len(gates)} gates (budget {budget:.3e})"
            )
    return state


def probability_qubit_one(state: StateVector, qubit: int) -> float:
    """P(measuring the given qubit as 1)."""
    axis = qubit_axis(state.num_qubits, qubit)
    tensor = state.amplitudes.reshape([2] * state.num_qubits)
    slice_one = np.take(tensor, 1, axis=axis)
    return float(np.sum(np.abs(slice_one) ** 2))


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    post_state: StateVector | None  # None when the outcome has ~zero weight


def project_qubit(state: StateVector, qubit: int, outcome: int) -> MeasurementOutcome:
    """Project onto qubit == outcome and renormalize."""
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    prob = probability_qubit_one(state, qubit)
    if outcome == 0:
        prob = 1.0 - prob
    if prob < 1e-15:
        return MeasurementOutcome(probability=max(prob, 0.0), post_state=None)
    axis = qubit_axis(state.num_qubits, qubit)
    tensor = state.amplitudes.reshape([2] * state.num_qubits).copy()
    index = [slice(None)] * state.num_qubits
    index[axis] = 1 - outcome
    tensor[tuple(index)] = 0.0
    post = tensor.reshape(-1) / np.sqrt(prob)
    return MeasurementOutcome(probability=prob, post_state=StateVector(state.num_qubits, post))


def state_to_csv(state: StateVector, threshold: float = STATE_DUMP_EPS) -> str:
    """CSV dump (index,real,imag) of amplitudes with magnitude above threshold."""
    lines = ["index,real,imag"]
    amps = state.amplitudes
    for i in np.flatnonzero(np.abs(amps) > threshold):
        lines.append(f"{int(i)},{float(amps[i].real)!r},{float(amps[i].imag)!r}")
    return "\n".join(lines) + "\n"
