import numpy as np
import pytest

from satchaos.config import UNITARITY_ATOL
from satchaos.gates import (
    GateKind,
    PlacedGate,
    decompose,
    gate_matrix,
    hadamard_layer,
    placed,
    polarized_copy,
    polarized_or,
    sequence_from_text,
    sequence_to_text,
)
from satchaos.quantum import apply_sequence, basis_state


@pytest.mark.parametrize("kind", list(GateKind))
def test_every_matrix_is_unitary(kind):
    mat = gate_matrix(kind)
    dim = mat.shape[0]
    assert mat.shape == (dim, dim)
    dev = np.max(np.abs(mat @ mat.conj().T - np.eye(dim)))
    assert dev <= UNITARITY_ATOL


def test_matrix_hand_values():
    h = gate_matrix(GateKind.H)
    assert np.allclose(h, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)
    x = gate_matrix(GateKind.NOT)
    assert np.array_equal(x.real, [[0, 1], [1, 0]])
    # AND is literally the doubly-controlled NOT
    assert np.array_equal(gate_matrix(GateKind.AND), gate_matrix(GateKind.CCN))
    assert np.array_equal(gate_matrix(GateKind.COPY), gate_matrix(GateKind.CN))


def test_or_truth_table():
    # basis index bits: slot 0 = u, slot 1 = v, slot 2 = target
    mat = gate_matrix(GateKind.OR)
    for i in range(8):
        u, v, t = i & 1, (i >> 1) & 1, (i >> 2) & 1
        j = u | (v << 1) | ((t ^ (u | v)) << 2)
        col = mat[:, i]
        assert col[j] == 1.0 and np.sum(np.abs(col)) == 1.0


def test_placed_gate_validation():
    with pytest.raises(ValueError):
        placed(GateKind.OR, 1, 2)  # arity
    with pytest.raises(ValueError):
        placed(GateKind.CN, 2, 2)  # duplicate positions
    with pytest.raises(ValueError):
        placed(GateKind.NOT, 0)  # 1-based


@pytest.mark.parametrize(
    "gate",
    [
        placed(GateKind.AND, 1, 2, 3),
        placed(GateKind.OR, 1, 2, 3),
        placed(GateKind.OR, 3, 1, 2),
        placed(GateKind.COPY, 2, 1),
    ],
)
def test_decomposition_exact_on_basis_states(gate):
    n = max(gate.positions)
    for index in range(1 << n):
        direct = apply_sequence(basis_state(n, index), [gate])
        via = apply_sequence(basis_state(n, index), decompose(gate))
        assert np.array_equal(direct.amplitudes, via.amplitudes)


def test_decompose_structure():
    assert [g.kind for g in decompose(placed(GateKind.OR, 1, 2, 3))] == [
        GateKind.CCN,
        GateKind.CN,
        GateKind.CN,
    ]
    assert decompose(placed(GateKind.AND, 1, 2, 3)) == (placed(GateKind.CCN, 1, 2, 3),)
    assert decompose(placed(GateKind.COPY, 1, 2)) == (placed(GateKind.CN, 1, 2),)
    h = placed(GateKind.H, 1)
    assert decompose(h) == (h,)


@pytest.mark.parametrize("neg_u", [False, True])
@pytest.mark.parametrize("neg_v", [False, True])
def test_polarized_or_truth_and_restoration(neg_u, neg_v):
    seq = polarized_or(1, 2, 3, negate_u=neg_u, negate_v=neg_v)
    for i in range(8):
        state = apply_sequence(basis_state(3, i), seq)
        j = int(np.argmax(np.abs(state.amplitudes)))
        u, v, t = i & 1, (i >> 1) & 1, (i >> 2) & 1
        value = (u ^ neg_u) | (v ^ neg_v)
        assert j & 1 == u and (j >> 1) & 1 == v  # inputs restored
        assert (j >> 2) & 1 == t ^ value


@pytest.mark.parametrize("neg_u", [False, True])
def test_polarized_copy(neg_u):
    seq = polarized_copy(1, 2, negate_u=neg_u)
    for i in range(4):
        state = apply_sequence(basis_state(2, i), seq)
        j = int(np.argmax(np.abs(state.amplitudes)))
        u, t = i & 1, (i >> 1) & 1
        assert j & 1 == u
        assert (j >> 1) & 1 == t ^ (u ^ neg_u)


def test_hadamard_layer():
    layer = hadamard_layer(5, 3)
    assert [g.positions for g in layer] == [(1,), (2,), (3,)]
    assert all(g.kind is GateKind.H for g in layer)
    assert hadamard_layer(4, 0) == ()
    with pytest.raises(ValueError):
        hadamard_layer(2, 3)


def test_sequence_text_roundtrip():
    seq = (placed(GateKind.H, 1), placed(GateKind.OR, 1, 2, 3))
    text = sequence_to_text(seq)
    assert sequence_from_text(text) == seq
    assert sequence_from_text("") == ()
    with pytest.raises(ValueError, match="unknown gate kind"):
        sequence_from_text("NAND 1 2 3\n")
    with pytest.raises(ValueError, match="non-integer"):
        sequence_from_text("CN 1 x\n")


def test_cached_matrices_are_readonly():
    mat = gate_matrix(GateKind.CN)
    with pytest.raises((ValueError, RuntimeError)):
        mat[0, 0] = 5.0
