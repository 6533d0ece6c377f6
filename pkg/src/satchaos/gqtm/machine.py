"""Multi-track quantum Turing machine with amplitude-weighted configurations.

A machine configuration is a processor state plus a fixed number of sparse
tapes and per-track head positions. Dynamics come from a transition function
δ(state, read-symbols) → Σ amplitude·(state', writes, moves); superpositions
of configurations evolve by applying δ to every live branch and summing
amplitudes of identical successors, so destructive interference prunes
branches exactly. On top of the pure dynamics sit mixed configurations —
probability-weighted lists of superpositions — which is where measurement
(decoherence) and classical reweighting act.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from ..config import AMPLITUDE_PRUNE_EPS

BLANK = "#"

#: (position, symbol) pairs, sorted by position, blanks omitted.
TapeCells = tuple[tuple[int, str], ...]

_WF_ATOL = 1e-12  # normalization / orthogonality slack in check_wellformed


def freeze_tape(cells: Mapping[int, str]) -> TapeCells:
    return tuple(sorted((p, s) for p, s in cells.items() if s != BLANK))


def tape_read(cells: TapeCells, pos: int) -> str:
    for p, s in cells:
        if p == pos:
            return s
    return BLANK


def tape_write(cells: TapeCells, pos: int, sym: str) -> TapeCells:
    d = dict(cells)
    if sym == BLANK:
        d.pop(pos, None)
    else:
        d[pos] = sym
    return freeze_tape(d)


@dataclass(frozen=True)
class Configuration:
    """One classical snapshot: processor state, tape contents, head positions."""

    state: str
    tapes: tuple[TapeCells, ...]
    heads: tuple[int, ...]

    def __post_init__(self):
        if len(self.tapes) != len(self.heads):
            raise ValueError("one head per track is required")

    @property
    def num_tracks(self) -> int:
        return len(self.tapes)

    def read(self, track: int) -> str:
        return tape_read(self.tapes[track], self.heads[track])

    def symbol_at(self, track: int, pos: int) -> str:
        return tape_read(self.tapes[track], pos)

    def with_state(self, state: str) -> "Configuration":
        return Configuration(state, self.tapes, self.heads)

    def sort_key(self):
        return (self.state, self.heads, self.tapes)


def make_configuration(state: str, tracks: Iterable[Mapping[int, str]],
                       heads: Iterable[int]) -> Configuration:
    return Configuration(state, tuple(freeze_tape(t) for t in tracks), tuple(heads))


@dataclass(frozen=True)
class Rule:
    """One branch of δ for a fixed (state, read-symbols) key."""

    amplitude: complex
    next_state: str
    writes: tuple[tuple[int, str], ...] = ()   # (track, symbol)
    moves: tuple[tuple[int, int], ...] = ()    # (track, -1|0|+1)

    def __post_init__(self):
        for _, step in self.moves:
            if step not in (-1, 0, 1):
                raise ValueError(f"head moves must be -1, 0 or +1, got {step}")


def rule(amp: complex, next_state: str, writes: Mapping[int, str] | None = None,
         moves: Mapping[int, int] | None = None) -> Rule:
    return Rule(
        complex(amp),
        next_state,
        tuple(sorted((writes or {}).items())),
        tuple(sorted((moves or {}).items())),
    )


class StuckConfigurationError(RuntimeError):
    """A live branch read a (state, symbols) pair with no rule."""

    def __init__(self, state: str, symbols: tuple[str, ...], heads: tuple[int, ...]):
        self.state = state
        self.symbols = symbols
        super().__init__(
            f"no rule for state {state!r} reading {symbols!r} at heads {heads!r}"
        )


WILDCARD = "*"


class TransitionFunction:
    """δ as a rule table keyed on (state, symbols read from ``read_tracks``).

    ``alphabets`` lists each read track's non-blank symbols; a ``*`` in a rule
    key expands over exactly that set, so blanks must always be keyed
    explicitly — an unexpected blank stays a loud stuck-configuration error.
    Writes and moves are restricted to the declared tracks at construction
    time, which keeps every phase's footprint honest.
    """

    def __init__(self, name: str, num_tracks: int, read_tracks: tuple[int, ...],
                 write_tracks: tuple[int, ...],
                 alphabets: Mapping[int, tuple[str, ...]]):
        self.name = name
        self.num_tracks = num_tracks
        self.read_tracks = tuple(read_tracks)
        self.write_tracks = tuple(write_tracks)
        self.alphabets = {t: tuple(alphabets[t]) for t in self.read_tracks}
        self.rules: dict[tuple[str, tuple[str, ...]], tuple[Rule, ...]] = {}
        for t in self.read_tracks + self.write_tracks:
            if not 0 <= t < num_tracks:
                raise ValueError(f"track {t} out of range for {num_tracks} tracks")

    def _check_footprint(self, r: Rule):
        movable = set(self.read_tracks) | set(self.write_tracks)
        for track, _ in r.writes:
            if track not in self.write_tracks:
                raise ValueError(
                    f"{self.name}: rule writes track {track}, "
                    f"declared write tracks are {self.write_tracks}"
                )
        for track, _ in r.moves:
            if track not in movable:
                raise ValueError(
                    f"{self.name}: rule moves head {track}, "
                    f"declared tracks are {sorted(movable)}"
                )

    def _expand(self, reads: tuple[str, ...]) -> list[tuple[str, ...]]:
        keys = [()]
        for track, sym in zip(self.read_tracks, reads):
            options = self.alphabets[track] if sym == WILDCARD else (sym,)
            keys = [k + (o,) for k in keys for o in options]
        return keys

    def add(self, state: str, reads: tuple[str, ...], targets: list[Rule]):
        if len(reads) != len(self.read_tracks):
            raise ValueError(
                f"{self.name}: key {reads!r} has {len(reads)} symbols, "
                f"phase reads {len(self.read_tracks)} tracks"
            )
        for r in targets:
            self._check_footprint(r)
        for key_syms in self._expand(reads):
            key = (state, key_syms)
            if key in self.rules:
                raise ValueError(f"{self.name}: duplicate rule for {key!r}")
            self.rules[key] = tuple(targets)

    def lookup(self, config: Configuration) -> tuple[tuple[str, ...], tuple[Rule, ...] | None]:
        symbols = tuple(config.read(t) for t in self.read_tracks)
        return symbols, self.rules.get((config.state, symbols))


class ConfigSuperposition:
    """Sparse map configuration → complex amplitude."""

    def __init__(self, branches: Mapping[Configuration, complex] | None = None):
        self.branches: dict[Configuration, complex] = dict(branches or {})

    @classmethod
    def pure(cls, config: Configuration) -> "ConfigSuperposition":
        return cls({config: 1.0 + 0.0j})

    def __len__(self) -> int:
        return len(self.branches)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self._ordered_amps())

    def _ordered_amps(self):
        return [self.branches[c] for c in sorted(self.branches, key=Configuration.sort_key)]

    def items_sorted(self):
        return sorted(self.branches.items(), key=lambda kv: kv[0].sort_key())

    def state_mass(self, states: frozenset[str] | set[str]) -> float:
        return sum(
            abs(a) ** 2 for c, a in self.items_sorted() if c.state in states
        )


def _apply_rule(config: Configuration, r: Rule) -> Configuration:
    tapes = list(config.tapes)
    heads = list(config.heads)
    for track, sym in r.writes:
        tapes[track] = tape_write(tapes[track], heads[track], sym)
    for track, step in r.moves:
        heads[track] += step
    return Configuration(r.next_state, tuple(tapes), tuple(heads))


def step(psi: ConfigSuperposition, delta: TransitionFunction,
         halting_states: frozenset[str] = frozenset()) -> ConfigSuperposition:
    """One synchronous application of δ to every live branch.

    Branches whose state is halting are absorbed unchanged. Successor
    amplitudes are summed in canonical branch order (so floating-point results
    are reproducible) and branches below the pruning epsilon vanish — exact
    destructive interference therefore removes a branch entirely.
    """
    out: dict[Configuration, complex] = {}
    for config, amp in psi.items_sorted():
        if config.state in halting_states:
            out[config] = out.get(config, 0.0) + amp
            continue
        symbols, targets = delta.lookup(config)
        if targets is None:
            raise StuckConfigurationError(config.state, symbols, config.heads)
        for r in targets:
            succ = _apply_rule(config, r)
            out[succ] = out.get(succ, 0.0) + amp * r.amplitude
    return ConfigSuperposition(
        {c: a for c, a in out.items() if abs(a) >= AMPLITUDE_PRUNE_EPS}
    )


@dataclass(frozen=True)
class Phase:
    """A transition table plus its entry state, final states, and a role tag."""

    name: str
    role: str  # "logic" (algorithm-bearing) or "bookkeeping" (tape plumbing)
    delta: TransitionFunction
    entry: str
    finals: frozenset[str]


def rebase(psi: ConfigSuperposition, entry: str) -> ConfigSuperposition:
    """Relabel every branch's processor state — the glue between phases."""
    return ConfigSuperposition(
        {c.with_state(entry): a for c, a in psi.items_sorted()}
    )


StepCallback = Callable[[int, ConfigSuperposition, float], None]


def run_phase(psi: ConfigSuperposition, phase: Phase, max_steps: int = 100_000,
              on_step: StepCallback | None = None, step_offset: int = 0) -> tuple[ConfigSuperposition, int]:
    """Step until every branch sits in a final state; returns (psi, steps taken)."""
    steps = 0
    while any(c.state not in phase.finals for c in psi.branches):
        if steps >= max_steps:
            raise RuntimeError(
                f"phase {phase.name!r} exceeded {max_steps} steps without halting"
            )
        psi = step(psi, phase.delta, phase.finals)
        steps += 1
        if on_step is not None:
            on_step(step_offset + steps, psi, psi.state_mass(phase.finals))
    return psi, steps


@dataclass(frozen=True)
class MixedConfiguration:
    """Probability mixture of superpositions: Σ weight_k · |ψ_k⟩⟨ψ_k|."""

    components: tuple[tuple[float, ConfigSuperposition], ...]

    def total_weight(self) -> float:
        return sum(w for w, _ in self.components)


def decohere(psi: ConfigSuperposition) -> MixedConfiguration:
    """Measure in the configuration basis: each branch becomes a component
    of weight |amplitude|² holding that single configuration."""
    comps = tuple(
        (abs(a) ** 2, ConfigSuperposition.pure(c)) for c, a in psi.items_sorted()
    )
    return MixedConfiguration(comps)


def merge_components(mixed: MixedConfiguration) -> MixedConfiguration:
    """Add weights of components that hold identical single configurations."""
    acc: dict[Configuration, float] = {}
    order: list[Configuration] = []
    for w, psi in mixed.components:
        if len(psi) != 1:
            raise ValueError("merge expects single-configuration components")
        (config,) = psi.branches
        if config not in acc:
            order.append(config)
        acc[config] = acc.get(config, 0.0) + w
    return MixedConfiguration(
        tuple((acc[c], ConfigSuperposition.pure(c)) for c in order)
    )


def halting_probability(rho: MixedConfiguration, final_states: frozenset[str] | set[str]) -> float:
    """λ-weighted squared-amplitude mass on branches in a final state."""
    return sum(w * psi.state_mass(final_states) for w, psi in rho.components)


# --- well-formedness -------------------------------------------------------

@dataclass(frozen=True)
class WellformedReport:
    """Per-key normalization and pairwise orthogonality defects for one table."""

    name: str
    normalization_defects: tuple[tuple[str, tuple[str, ...], float], ...]
    orthogonality_defects: tuple[tuple[str, tuple[str, ...], str, tuple[str, ...], float], ...]
    unitary: bool
    deterministic: bool

    def summary(self) -> str:
        verdict = []
        if self.unitary:
            verdict.append("UNITARY")
        if self.deterministic:
            verdict.append("DETERMINISTIC")
        if not verdict:
            verdict.append("DEFECTIVE")
        return (
            f"{self.name}: {' '.join(verdict)} "
            f"({len(self.normalization_defects)} normalization, "
            f"{len(self.orthogonality_defects)} orthogonality defects)"
        )


def _effective_target(delta: TransitionFunction, read_syms: tuple[str, ...], r: Rule):
    """Successor identity with implicit writes and moves materialized.

    A rule that leaves a track's symbol alone still *writes* it (the read
    symbol goes back), and an unmoved head moves by 0 — so rules keyed on
    different symbols produce different write vectors even when their
    explicit parts coincide. Tracks that are writable but unread keep a
    sentinel: two keep-rules on such a track may well collide, and the
    sentinel makes that overlap visible instead of hiding it.
    """
    writes = dict(r.writes)
    eff_writes = []
    for i, t in enumerate(delta.read_tracks):
        eff_writes.append((t, writes.get(t, read_syms[i])))
    for t in delta.write_tracks:
        if t not in delta.read_tracks:
            eff_writes.append((t, writes.get(t, ("KEEP", t))))
    moves = dict(r.moves)
    movable = sorted(set(delta.read_tracks) | set(delta.write_tracks))
    eff_moves = tuple((t, moves.get(t, 0)) for t in movable)
    return (r.next_state, tuple(sorted(eff_writes)), eff_moves)


def check_wellformed(delta: TransitionFunction, atol: float = _WF_ATOL) -> WellformedReport:
    """Classify a table: per-key normalization Σ|amp|² = 1, and zero overlap
    between rows whose state *and* read symbols both differ.

    The overlap of two rows is Σ amp·conj(amp') over shared successor targets
    (state, effective writes, moves). Rows that share a state or a symbol
    tuple are not required to be orthogonal here; full unitarity of the
    evolved dynamics is established separately by norm-preservation runs.
    """
    norm_defects = []
    for (state, syms), targets in sorted(delta.rules.items()):
        total = sum(abs(r.amplitude) ** 2 for r in targets)
        if abs(total - 1.0) > atol:
            norm_defects.append((state, syms, total))

    keys = sorted(delta.rules)
    ortho_defects = []
    for i, (q1, a1) in enumerate(keys):
        vec1 = {_effective_target(delta, a1, r): r.amplitude for r in delta.rules[(q1, a1)]}
        for q2, a2 in keys[i + 1:]:
            if q1 == q2 or a1 == a2:
                continue
            vec2 = {_effective_target(delta, a2, r): r.amplitude for r in delta.rules[(q2, a2)]}
            overlap = sum(
                vec1[k] * vec2[k].conjugate() for k in vec1.keys() & vec2.keys()
            )
            if abs(overlap) > atol:
                ortho_defects.append((q1, a1, q2, a2, abs(overlap)))

    deterministic = all(
        len(targets) == 1 and abs(targets[0].amplitude - 1.0) <= atol
        for targets in delta.rules.values()
    )
    unitary = not norm_defects and not ortho_defects
    return WellformedReport(
        delta.name, tuple(norm_defects), tuple(ortho_defects), unitary, deterministic
    )


# --- human-readable dump ---------------------------------------------------

def _fmt_amp(amp: complex) -> str:
    if abs(amp.imag) < 1e-15:
        real = amp.real
        if abs(real - round(real)) < 1e-15:
            return str(int(round(real)))
        return f"{real:.9g}"
    return f"({amp.real:.9g}{amp.imag:+.9g}j)"


def dump_transition(phase: Phase) -> str:
    """Rule listing, one line per (key, target): ``q SYMBOLS -> amp q' WRITES MOVES``."""
    lines = [
        f"# phase {phase.name} [{phase.role}]"
        f" reads={phase.delta.read_tracks} writes={phase.delta.write_tracks}"
        f" entry={phase.entry} finals={sorted(phase.finals)}"
    ]
    for (state, syms), targets in sorted(phase.delta.rules.items()):
        for r in targets:
            writes = ",".join(f"t{t}:{s}" for t, s in r.writes) or "-"
            moves = ",".join(f"t{t}:{m:+d}" for t, m in r.moves) or "-"
            lines.append(
                f"{state} {','.join(syms)} -> {_fmt_amp(r.amplitude)} "
                f"{r.next_state} {writes} {moves}"
            )
    return "\n".join(lines)
