"""The four-track SAT program and its runner.

Track roles: track 0 carries the instance encoding, track 1 the superposed
assignment bits, track 2 per-clause truth bits, track 3 the result bit plus
the iteration counter. The run factors into a unitary part (counter setup,
Hadamard spreading, clause ORs, final AND) whose tables all pass the local
unitarity certificate, a collapse that measures in the configuration basis,
erases tracks 0-2 and merges branches by result bit, and a detection loop
that drives the result weight through the logistic map while a binary
counter bounds the number of iterations.

Every phase's table depends only on the variable count, never on the clauses:
the instance enters purely through the track-0 encoding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO

from ..amplifier import (
    AmplifierTrace,
    LogisticParams,
    iteration_window,
    k_bounds,
    logistic_step,
    snap_dyadic,
)
from ..config import DEFAULT_MAX_MACHINE_VARS, GuardExceeded
from ..sat import Clause, Literal, SatInstance
from .machine import (
    BLANK,
    ConfigSuperposition,
    Configuration,
    MixedConfiguration,
    Phase,
    TransitionFunction,
    decohere,
    make_configuration,
    merge_components,
    rebase,
    rule,
    run_phase,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)

# Non-blank alphabets by track.
INPUT_SYMBOLS = ("0", "1", "X", "Y", "C_S", "C_E")
BIT_SYMBOLS = ("0", "1")
COUNTER_SYMBOLS = ("0", "1", "A", "B")

_ALPHABETS = {0: INPUT_SYMBOLS, 1: BIT_SYMBOLS, 2: BIT_SYMBOLS, 3: COUNTER_SYMBOLS}


def _table(name: str, read_tracks: tuple[int, ...], write_tracks: tuple[int, ...]) -> TransitionFunction:
    return TransitionFunction(
        name, 4, read_tracks, write_tracks,
        {t: _ALPHABETS[t] for t in read_tracks},
    )


# --- input encoding --------------------------------------------------------

def encode_sat_input(inst: SatInstance) -> tuple[str, ...]:
    """Track-0 symbols: ``0^n X`` then per clause ``C_S ε… Y ε̄… C_E``.

    ε_k = 1 iff variable k occurs positively, ε̄_k = 1 iff it occurs negated;
    duplicates inside a clause collapse (they cannot change the disjunction).
    """
    n = inst.num_vars
    symbols: list[str] = ["0"] * n + ["X"]
    for clause in inst.clauses:
        pos, neg = clause.masks()
        symbols.append("C_S")
        symbols.extend("1" if pos >> k & 1 else "0" for k in range(n))
        symbols.append("Y")
        symbols.extend("1" if neg >> k & 1 else "0" for k in range(n))
        symbols.append("C_E")
    return tuple(symbols)


def decode_sat_input(symbols: tuple[str, ...] | list[str]) -> SatInstance:
    """Inverse of :func:`encode_sat_input`, up to literal order and duplicates."""
    syms = list(symbols)
    try:
        n = syms.index("X")
    except ValueError:
        raise ValueError("input string has no X separator") from None
    if n == 0 or any(s != "0" for s in syms[:n]):
        raise ValueError("input must start with a nonempty run of 0s before X")
    clauses: list[Clause] = []
    i = n + 1
    block = 2 * n + 3
    while i < len(syms):
        chunk = syms[i:i + block]
        if len(chunk) != block or chunk[0] != "C_S" or chunk[n + 1] != "Y" or chunk[-1] != "C_E":
            raise ValueError(f"malformed clause block at symbol {i}")
        eps, bars = chunk[1:n + 1], chunk[n + 2:2 * n + 2]
        if not all(s in "01" for s in eps + bars):
            raise ValueError(f"clause block at symbol {i} holds non-bit mask symbols")
        literals = [Literal(k + 1, False) for k in range(n) if eps[k] == "1"]
        literals += [Literal(k + 1, True) for k in range(n) if bars[k] == "1"]
        if not literals:
            raise ValueError(f"clause block at symbol {i} encodes an empty clause")
        clauses.append(Clause(tuple(literals)))
        i += block
    if not clauses:
        raise ValueError("input encodes no clauses")
    return SatInstance(n, tuple(clauses))


# --- phase tables ----------------------------------------------------------

def phase_setup(num_vars: int) -> Phase:
    """Lay out the iteration counter on track 3.

    Cell 0 stays blank for the result bit; then marker A, the count bits
    (low bit first, all 0), marker B, and the bit pattern of the iteration
    limit. The head walks home to cell 0 afterwards.
    """
    window = iteration_window(num_vars)
    width = window.bit_length()
    t = _table("setup", (3,), (3,))
    t.add("su_home", (BLANK,), [rule(1, "su_mark_a", moves={3: +1})])
    t.add("su_mark_a", (BLANK,), [rule(1, "su_count_0", writes={3: "A"}, moves={3: +1})])
    for j in range(width):
        nxt = "su_mark_b" if j == width - 1 else f"su_count_{j + 1}"
        t.add(f"su_count_{j}", (BLANK,), [rule(1, nxt, writes={3: "0"}, moves={3: +1})])
    t.add("su_mark_b", (BLANK,), [rule(1, "su_limit_0", writes={3: "B"}, moves={3: +1})])
    for j in range(width):
        bit = "1" if window >> j & 1 else "0"
        if j == width - 1:
            t.add(f"su_limit_{j}", (BLANK,),
                  [rule(1, "su_turn", writes={3: bit}, moves={3: -1})])
        else:
            t.add(f"su_limit_{j}", (BLANK,),
                  [rule(1, f"su_limit_{j + 1}", writes={3: bit}, moves={3: +1})])
    for sym in COUNTER_SYMBOLS:
        t.add("su_turn", (sym,), [rule(1, "su_back", moves={3: -1})])
        t.add("su_back", (sym,), [rule(1, "su_back", moves={3: -1})])
    t.add("su_back", (BLANK,), [rule(1, "setup_done")])
    return Phase("setup", "bookkeeping", t, "su_home", frozenset({"setup_done"}))


def phase_dft() -> Phase:
    """Hadamard each assignment bit: tracks 0 and 1 scan out to X in lockstep,
    then walk back applying the two-branch rotation to every bit cell."""
    t = _table("dft", (0, 1), (1,))
    t.add("dft_scan", ("0", BLANK),
          [rule(1, "dft_scan", writes={1: "0"}, moves={0: +1, 1: +1})])
    t.add("dft_scan", ("X", BLANK),
          [rule(1, "dft_apply", moves={0: -1, 1: -1})])
    t.add("dft_apply", ("0", "0"), [
        rule(SQRT_HALF, "dft_apply", writes={1: "0"}, moves={0: -1, 1: -1}),
        rule(SQRT_HALF, "dft_apply", writes={1: "1"}, moves={0: -1, 1: -1}),
    ])
    t.add("dft_apply", ("0", "1"), [
        rule(SQRT_HALF, "dft_apply", writes={1: "0"}, moves={0: -1, 1: -1}),
        rule(-SQRT_HALF, "dft_apply", writes={1: "1"}, moves={0: -1, 1: -1}),
    ])
    t.add("dft_apply", (BLANK, BLANK), [rule(1, "dft_done", moves={0: +1, 1: +1})])
    return Phase("dft", "logic", t, "dft_scan", frozenset({"dft_done"}))


def _or_bit(a: str, v: str) -> str:
    return "1" if a == "1" or v == "1" else "0"


def _or_negated(a: str, v: str) -> str:
    return "1" if a == "1" or v == "0" else "0"


def phase_or_eval() -> Phase:
    """Evaluate every clause into consecutive track-2 cells.

    Heads 0 and 1 stay aligned: the positive-mask scan reads variable k's bit
    exactly when head 0 sits on mask position k, the Y marker triggers a
    track-1 rewind, and the negative mask repeats the scan with inverted
    values. Head 2 parks on the clause's accumulator cell for the whole
    clause. Movement never depends on the superposed bits, so all branches
    stay in lockstep.
    """
    t = _table("or_eval", (0, 1, 2), (2,))
    for s in ("0", "X"):
        t.add("or_seek", (s, "*", BLANK), [rule(1, "or_seek", moves={0: +1})])
    t.add("or_seek", ("C_S", "*", BLANK),
          [rule(1, "or_pos", writes={2: "0"}, moves={0: +1})])
    for v in BIT_SYMBOLS:
        for a in BIT_SYMBOLS:
            t.add("or_pos", ("0", v, a), [rule(1, "or_pos", moves={0: +1, 1: +1})])
            t.add("or_pos", ("1", v, a),
                  [rule(1, "or_pos", writes={2: _or_bit(a, v)}, moves={0: +1, 1: +1})])
            t.add("or_rewind", ("Y", v, a), [rule(1, "or_rewind", moves={1: -1})])
            t.add("or_neg", ("0", v, a), [rule(1, "or_neg", moves={0: +1, 1: +1})])
            t.add("or_neg", ("1", v, a),
                  [rule(1, "or_neg", writes={2: _or_negated(a, v)}, moves={0: +1, 1: +1})])
    for a in BIT_SYMBOLS:
        t.add("or_pos", ("Y", BLANK, a), [rule(1, "or_rewind", moves={1: -1})])
        t.add("or_rewind", ("Y", BLANK, a), [rule(1, "or_neg", moves={0: +1, 1: +1})])
        t.add("or_neg", ("C_E", BLANK, a),
              [rule(1, "or_next", moves={0: +1, 1: -1, 2: +1})])
    for v in BIT_SYMBOLS:
        t.add("or_next", ("C_S", v, BLANK), [rule(1, "or_next", moves={1: -1})])
        t.add("or_next", (BLANK, v, BLANK), [rule(1, "or_next", moves={1: -1})])
    t.add("or_next", ("C_S", BLANK, BLANK),
          [rule(1, "or_pos", writes={2: "0"}, moves={0: +1, 1: +1})])
    t.add("or_next", (BLANK, BLANK, BLANK), [rule(1, "or_done", moves={1: +1})])
    return Phase("or_eval", "logic", t, "or_seek", frozenset({"or_done"}))


def phase_and_eval() -> Phase:
    """Conjoin the clause bits right-to-left and write the product into
    track 3 cell 0.  The clause bits are left in place: blanking them here
    would make the coherent stage lossy, so cleanup waits for the erasure
    phase, which runs after the collapse."""
    t = _table("and_eval", (2, 3), (3,))
    t.add("and_enter", (BLANK, BLANK), [rule(1, "and_all1", moves={2: -1})])
    t.add("and_all1", ("1", BLANK), [rule(1, "and_all1", moves={2: -1})])
    t.add("and_all1", ("0", BLANK), [rule(1, "and_any0", moves={2: -1})])
    t.add("and_all1", (BLANK, BLANK),
          [rule(1, "and_done", writes={3: "1"}, moves={2: +1})])
    for v in BIT_SYMBOLS:
        t.add("and_any0", (v, BLANK), [rule(1, "and_any0", moves={2: -1})])
    t.add("and_any0", (BLANK, BLANK),
          [rule(1, "and_done", writes={3: "0"}, moves={2: +1})])
    return Phase("and_eval", "logic", t, "and_enter", frozenset({"and_done"}))


def phase_erase() -> Phase:
    """Blank tracks 0-2 so branches differ only in their result bit.

    Deliberately irreversible: this is the reset half of the measurement
    channel and runs on classical (post-collapse) components only, so its
    wellformedness report flags overlap defects but never normalization ones.
    """
    t = _table("erase", (0, 1, 2), (0, 1, 2))
    for v in BIT_SYMBOLS:
        for w in BIT_SYMBOLS:
            t.add("erase_enter", (BLANK, v, w),
                  [rule(1, "erase_input", moves={0: -1})])
            for s in INPUT_SYMBOLS:
                t.add("erase_input", (s, v, w),
                      [rule(1, "erase_input", writes={0: BLANK}, moves={0: -1})])
            t.add("erase_input", (BLANK, v, w),
                  [rule(1, "erase_fwd1", moves={0: +1})])
            t.add("erase_fwd1", (BLANK, v, w), [rule(1, "erase_fwd1", moves={1: +1})])
            t.add("erase_back1", (BLANK, v, w),
                  [rule(1, "erase_back1", writes={1: BLANK}, moves={1: -1})])
        t.add("erase_fwd1", (BLANK, BLANK, v), [rule(1, "erase_back1", moves={1: -1})])
        t.add("erase_back1", (BLANK, BLANK, v), [rule(1, "erase_fwd2", moves={1: +1})])
        t.add("erase_fwd2", (BLANK, BLANK, v), [rule(1, "erase_fwd2", moves={2: +1})])
        t.add("erase_back2", (BLANK, BLANK, v),
              [rule(1, "erase_back2", writes={2: BLANK}, moves={2: -1})])
    t.add("erase_fwd2", (BLANK, BLANK, BLANK), [rule(1, "erase_back2", moves={2: -1})])
    t.add("erase_back2", (BLANK, BLANK, BLANK), [rule(1, "erase_done", moves={2: +1})])
    return Phase("erase", "bookkeeping", t, "erase_enter", frozenset({"erase_done"}))


def phase_handoff() -> Phase:
    """Fork on the result bit: 1 enters the accepting state, 0 keeps waiting."""
    t = _table("handoff", (3,), ())
    t.add("handoff_read", ("1",), [rule(1, "accept")])
    t.add("handoff_read", ("0",), [rule(1, "loop_idle")])
    return Phase("handoff", "bookkeeping", t, "handoff_read",
                 frozenset({"accept", "loop_idle"}))


def phase_increment() -> Phase:
    """Binary increment of the count bits (low bit nearest marker A)."""
    t = _table("increment", (3,), (3,))
    for b in BIT_SYMBOLS:
        t.add("inc_enter", (b,), [rule(1, "inc_skip", moves={3: +1})])
        t.add("inc_back", (b,), [rule(1, "inc_back", moves={3: -1})])
    t.add("inc_skip", ("A",), [rule(1, "inc_carry", moves={3: +1})])
    t.add("inc_carry", ("1",), [rule(1, "inc_carry", writes={3: "0"}, moves={3: +1})])
    t.add("inc_carry", ("0",), [rule(1, "inc_back", writes={3: "1"})])
    t.add("inc_back", ("A",), [rule(1, "inc_done", moves={3: -1})])
    return Phase("increment", "bookkeeping", t, "inc_enter", frozenset({"inc_done"}))


def phase_compare(num_vars: int) -> Phase:
    """Zig-zag equality test between the count bits and the limit bits.

    The two bit groups sit a fixed ``width+1`` cells apart, so a countdown of
    generated hop states carries each count bit across to its partner; a
    mismatch exits through the not-equal walk-home, and reading marker B in
    the read position means every bit matched.
    """
    width = iteration_window(num_vars).bit_length()
    t = _table("compare", (3,), ())
    for b in BIT_SYMBOLS:
        t.add("cmp_enter", (b,), [rule(1, "cmp_skip", moves={3: +1})])
    t.add("cmp_skip", ("A",), [rule(1, "cmp_read", moves={3: +1})])
    t.add("cmp_read", ("B",), [rule(1, "cmp_eq_home", moves={3: -1})])
    crossing = ("0", "1", "B")
    for b in BIT_SYMBOLS:
        t.add("cmp_read", (b,), [rule(1, f"cmp_hop_{b}_{width}", moves={3: +1})])
        for d in range(width, 0, -1):
            for s in crossing:
                t.add(f"cmp_hop_{b}_{d}", (s,),
                      [rule(1, f"cmp_hop_{b}_{d - 1}", moves={3: +1})])
        back_target = "cmp_read" if width == 1 else f"cmp_back_{width - 1}"
        t.add(f"cmp_hop_{b}_0", (b,), [rule(1, back_target, moves={3: -1})])
        other = "1" if b == "0" else "0"
        t.add(f"cmp_hop_{b}_0", (other,), [rule(1, "cmp_ne_home", moves={3: -1})])
    for d in range(width - 1, 0, -1):
        nxt = "cmp_read" if d == 1 else f"cmp_back_{d - 1}"
        for s in crossing:
            t.add(f"cmp_back_{d}", (s,), [rule(1, nxt, moves={3: -1})])
    for b in BIT_SYMBOLS:
        t.add("cmp_eq_home", (b,), [rule(1, "cmp_eq_home", moves={3: -1})])
    for s in crossing:
        t.add("cmp_ne_home", (s,), [rule(1, "cmp_ne_home", moves={3: -1})])
    t.add("cmp_eq_home", ("A",), [rule(1, "cmp_eq_done", moves={3: -1})])
    t.add("cmp_ne_home", ("A",), [rule(1, "cmp_ne_done", moves={3: -1})])
    return Phase("compare", "bookkeeping", t, "cmp_enter",
                 frozenset({"cmp_eq_done", "cmp_ne_done"}))


# --- the assembled machine -------------------------------------------------

UNITARY_STAGE = ("setup", "dft", "or_eval", "and_eval")
COLLAPSE_STAGE = ("erase", "handoff")
LOOP_STAGE = ("compare", "increment")


@dataclass(frozen=True)
class SatMachine:
    """Phase tables for one variable count, in execution order."""

    num_vars: int
    window: int
    counter_bits: int
    phases: tuple[Phase, ...]

    def phase(self, name: str) -> Phase:
        for p in self.phases:
            if p.name == name:
                return p
        raise KeyError(name)

    def dump(self) -> str:
        from .machine import dump_transition

        return "\n\n".join(dump_transition(p) for p in self.phases)


def sat_machine(num_vars: int) -> SatMachine:
    if num_vars < 1:
        raise ValueError("at least one variable is required")
    window = iteration_window(num_vars)
    return SatMachine(
        num_vars,
        window,
        window.bit_length(),
        (
            phase_setup(num_vars),
            phase_dft(),
            phase_or_eval(),
            phase_and_eval(),
            phase_erase(),
            phase_handoff(),
            phase_increment(),
            phase_compare(num_vars),
        ),
    )


def sat_program(num_vars: int) -> tuple[dict[str, TransitionFunction], tuple[tuple[str, ...], ...]]:
    """Per-phase transition tables plus the stage schedule."""
    machine = sat_machine(num_vars)
    tables = {p.name: p.delta for p in machine.phases}
    return tables, (UNITARY_STAGE, COLLAPSE_STAGE, LOOP_STAGE)


def initial_configuration(machine: SatMachine, inst: SatInstance) -> Configuration:
    symbols = encode_sat_input(inst)
    track0 = {i: s for i, s in enumerate(symbols)}
    return make_configuration(
        machine.phase("setup").entry, [track0, {}, {}, {}], [0, 0, 0, 0]
    )


# --- running ----------------------------------------------------------------

@dataclass(frozen=True)
class GqtmRun:
    """Outcome of a full machine run."""

    decision: str                     # SAT | UNSAT | INCONCLUSIVE
    k_star: int | None
    trace: AmplifierTrace
    q_squared: float                  # dyadic readout r/2^n
    r_estimate: int
    weights_raw: tuple[float, float]  # (result-0 weight, result-1 weight) pre-snap
    branch_count: int
    unitary_steps: int
    machine: SatMachine


class _JsonlWriter:
    def __init__(self, sink: IO[str] | None):
        self.sink = sink

    def row(self, step: int, branch_count: int, norm: float, halting_prob: float):
        if self.sink is None:
            return
        self.sink.write(json.dumps({
            "step": step,
            "branch_count": branch_count,
            "norm": norm,
            "halting_prob": halting_prob,
        }) + "\n")


def _run_stage(psi: ConfigSuperposition, phase: Phase, writer: _JsonlWriter,
               step_offset: int) -> tuple[ConfigSuperposition, int]:
    psi = rebase(psi, phase.entry)

    def emit(step_index: int, cur: ConfigSuperposition, halting_mass: float):
        writer.row(step_index, len(cur), cur.norm_sq(), halting_mass)

    return run_phase(psi, phase, on_step=emit, step_offset=step_offset)


def _workspace_blank(config: Configuration) -> bool:
    return config.tapes[0] == () and config.tapes[1] == () and config.tapes[2] == ()


def run_sat_gqtm(inst: SatInstance, params: LogisticParams = LogisticParams(), *,
                 max_vars: int = DEFAULT_MAX_MACHINE_VARS,
                 jsonl_sink: IO[str] | None = None) -> GqtmRun:
    """Full pipeline: unitary stage, collapse, then the detection loop.

    The collapse measures in the configuration basis (branch weight equals
    squared amplitude), blanks the workspace per component, and merges
    components — leaving one component per result bit whose weight is the
    model fraction. That weight is snapped to the nearest r/2^n (guarded) and
    driven through the logistic map, testing the threshold before each
    iteration, until it crosses (satisfiable) or the counter reaches the
    iteration limit (unsatisfiable when the weight is exactly zero).
    """
    n = inst.num_vars
    if n > max_vars:
        raise GuardExceeded(
            f"machine run with {n} variables exceeds the {max_vars}-variable guard "
            f"(override with max_vars)"
        )
    machine = sat_machine(n)
    writer = _JsonlWriter(jsonl_sink)
    psi = ConfigSuperposition.pure(initial_configuration(machine, inst))

    steps = 0
    for name in UNITARY_STAGE:
        psi, took = _run_stage(psi, machine.phase(name), writer, steps)
        steps += took
    norm = psi.norm_sq()
    if abs(norm - 1.0) > 1e-9:
        raise ArithmeticError(f"norm drifted to {norm!r} during the unitary stage")

    mixed = decohere(psi)
    collapsed = []
    for weight, comp in mixed.components:
        for name in COLLAPSE_STAGE:
            comp, _ = run_phase(rebase(comp, machine.phase(name).entry),
                                machine.phase(name))
        (config,) = comp.branches
        if not _workspace_blank(config):
            raise RuntimeError(
                f"workspace tracks not blank after erasure: {config.tapes[:3]!r}"
            )
        collapsed.append((weight, comp))
    merged = merge_components(MixedConfiguration(tuple(collapsed)))

    loop_psi = None
    w1_raw = 0.0
    w0_raw = 0.0
    for weight, comp in merged.components:
        (config,) = comp.branches
        bit = config.symbol_at(3, 0)
        if bit == "1":
            w1_raw = weight
        elif bit == "0":
            loop_psi, w0_raw = comp, weight
        else:
            raise RuntimeError(f"result cell holds {bit!r}, expected a bit")

    q_squared, r_estimate = snap_dyadic(w1_raw, n)
    bounds = k_bounds(n, r_estimate, params.a) if r_estimate >= 1 else None

    xs = [q_squared]
    w1 = q_squared
    k = 0
    k_star = None
    decision = None
    loop_step = steps
    while True:
        loop_step += 1
        writer.row(loop_step, len(merged.components), 1.0, w1)
        if w1 > params.threshold:
            decision, k_star = "SAT", k
            break
        if loop_psi is None:
            raise RuntimeError("no loop component yet the weight never crossed")
        compare = machine.phase("compare")
        loop_psi, _ = run_phase(rebase(loop_psi, compare.entry), compare)
        (config,) = loop_psi.branches
        if config.state == "cmp_eq_done":
            decision = "UNSAT" if w1 == 0.0 else "INCONCLUSIVE"
            break
        increment = machine.phase("increment")
        loop_psi, _ = run_phase(rebase(loop_psi, increment.entry), increment)
        w1 = logistic_step(w1, params.a)
        xs.append(w1)
        k += 1

    trace = AmplifierTrace(tuple(xs), k_star, decision, bounds, params)
    return GqtmRun(
        decision, k_star, trace, q_squared, r_estimate,
        (w0_raw, w1_raw), len(mixed.components), steps, machine,
    )


def run_classical_branch(inst: SatInstance, bits) -> tuple[tuple[int, ...], int]:
    """Drive one frozen assignment through the OR and AND phases.

    Track 1 is preset to the given bits (no Hadamard stage), the clause bits
    are read off track 2 after the OR phase, and the final AND bit is
    returned alongside them.
    """
    n = inst.num_vars
    bits = tuple(int(b) for b in bits)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError(f"need {n} bits in {{0,1}}, got {bits!r}")
    track0 = {i: s for i, s in enumerate(encode_sat_input(inst))}
    track1 = {i: str(b) for i, b in enumerate(bits)}
    or_phase = phase_or_eval()
    config = make_configuration(or_phase.entry, [track0, track1, {}, {}], [0, 0, 0, 0])
    psi, _ = run_phase(ConfigSuperposition.pure(config), or_phase)
    (config,) = psi.branches
    clause_bits = []
    for j in range(inst.num_clauses):
        sym = config.symbol_at(2, j)
        if sym not in ("0", "1"):
            raise RuntimeError(f"clause cell {j} holds {sym!r} after the OR phase")
        clause_bits.append(int(sym))
    and_phase = phase_and_eval()
    psi, _ = run_phase(rebase(psi, and_phase.entry), and_phase)
    (config,) = psi.branches
    result = config.symbol_at(3, 0)
    if result not in ("0", "1"):
        raise RuntimeError(f"result cell holds {result!r} after the AND phase")
    return tuple(clause_bits), int(result)
