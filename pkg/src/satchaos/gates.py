"""The reversible gate set used by the truth-value circuits.

All multi-qubit gates except H are permutations of basis states: the last
position is a target that gets XORed with a boolean function of the earlier
positions (NOT/CN/CCN flip on none/one/two controls; AND, OR, COPY fold the
corresponding connective into the target). Local matrices index their inputs
with slot 0 as the least-significant bit, matching the register convention
that lower qubit numbers vary faster.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cache

import numpy as np


class GateKind(enum.Enum):
    NOT = "NOT"
    CN = "CN"
    CCN = "CCN"
    H = "H"
    AND = "AND"
    OR = "OR"
    COPY = "COPY"


GATE_ARITY = {
    GateKind.NOT: 1,
    GateKind.CN: 2,
    GateKind.CCN: 3,
    GateKind.H: 1,
    GateKind.AND: 3,
    GateKind.OR: 3,
    GateKind.COPY: 2,
}

# Boolean function of the non-target bits that each permutation gate XORs
# into its last position.
_TARGET_FLIP = {
    GateKind.NOT: lambda bits: 1,
    GateKind.CN: lambda bits: bits[0],
    GateKind.CCN: lambda bits: bits[0] & bits[1],
    GateKind.AND: lambda bits: bits[0] & bits[1],
    GateKind.OR: lambda bits: bits[0] | bits[1],
    GateKind.COPY: lambda bits: bits[0],
}


@dataclass(frozen=True)
class PlacedGate:
    """A gate bound to distinct 1-based qubit positions."""

    kind: GateKind
    positions: tuple[int, ...]

    def __post_init__(self):
        arity = GATE_ARITY[self.kind]
        if len(self.positions) != arity:
            raise ValueError(
                f"{self.kind.value} takes {arity} positions, got {self.positions}"
            )
        if len(set(self.positions)) != arity:
            raise ValueError(f"positions must be distinct, got {self.positions}")
        if any(p < 1 for p in self.positions):
            raise ValueError(f"positions are 1-based, got {self.positions}")

    def __repr__(self):
        return f"{self.kind.value}({', '.join(map(str, self.positions))})"


GateSequence = tuple[PlacedGate, ...]


def placed(kind: GateKind, *positions: int) -> PlacedGate:
    return PlacedGate(kind, tuple(positions))


@cache
def gate_matrix(kind: GateKind) -> np.ndarray:
    """Local unitary of the gate; 2^arity square, slot 0 = least significant bit."""
    if kind is GateKind.H:
        mat = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
    else:
        arity = GATE_ARITY[kind]
        flip = _TARGET_FLIP[kind]
        dim = 1 << arity
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for i in range(dim):
            bits = [(i >> t) & 1 for t in range(arity)]
            bits[-1] ^= flip(bits[:-1])
            j = sum(b << t for t, b in enumerate(bits))
            mat[j, i] = 1.0
    mat.setflags(write=False)  # instances are cached and shared
    return mat


def decompose(gate: PlacedGate) -> GateSequence:
    """Rewrite AND/OR/COPY into the NOT/CN/CCN basis (application order)."""
    u = gate.positions
    if gate.kind is GateKind.AND:
        return (placed(GateKind.CCN, *u),)
    if gate.kind is GateKind.COPY:
        return (placed(GateKind.CN, *u),)
    if gate.kind is GateKind.OR:
        a, b, w = u
        return (
            placed(GateKind.CCN, a, b, w),
            placed(GateKind.CN, b, w),
            placed(GateKind.CN, a, w),
        )
    return (gate,)


def polarized_or(u: int, v: int, w: int, *, negate_u: bool = False,
                 negate_v: bool = False) -> GateSequence:
    """OR of the (possibly negated) values at u and v, XORed into w.

    Negated inputs are handled by conjugating with NOT on that input, so the
    inputs are restored after the gate.
    """
    pre = []
    if negate_u:
        pre.append(placed(GateKind.NOT, u))
    if negate_v:
        pre.append(placed(GateKind.NOT, v))
    core = [placed(GateKind.OR, u, v, w)]
    return tuple(pre + core + pre)


def polarized_copy(u: int, w: int, *, negate_u: bool = False) -> GateSequence:
    """The (possibly negated) value at u, XORed into w; input restored."""
    if not negate_u:
        return (placed(GateKind.COPY, u, w),)
    flip = placed(GateKind.NOT, u)
    return (flip, placed(GateKind.COPY, u, w), flip)


def hadamard_layer(num_qubits: int, count: int) -> GateSequence:
    """H on qubits 1..count of a num_qubits register."""
    if count < 0 or count > num_qubits:
        raise ValueError(f"cannot place {count} H gates on {num_qubits} qubits")
    return tuple(placed(GateKind.H, k) for k in range(1, count + 1))


def sequence_to_text(gates) -> str:
    """One gate per line: KIND p1 p2 p3."""
    return "\n".join(
        f"{g.kind.value} {' '.join(map(str, g.positions))}" for g in gates
    ) + ("\n" if gates else "")


def sequence_from_text(text: str) -> GateSequence:
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        try:
            kind = GateKind(parts[0])
        except ValueError:
            raise ValueError(f"unknown gate kind {parts[0]!r} on line {lineno}") from None
        try:
            positions = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise ValueError(f"non-integer position on line {lineno}") from None
        gates.append(PlacedGate(kind, positions))
    return tuple(gates)
