"""Deterministic Turing machines on finitely supported bi-infinite tapes.

The head never moves: it always sits over position 0 and the tape is shifted
underneath it.  A move ``eps = +1`` is a left shift (new ``s_n`` is old
``s_{n+1}``, i.e. the head effectively walks right), ``eps = -1`` a right
shift and ``eps = 0`` leaves the tape in place.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    LoopingMachine,
    MachineError,
    MalformedTape,
    UnknownState,
    WindowTooSmall,
)
from .outcomes import Halted, Unresolved

MOVES = {"L": 1, "S": 0, "R": -1}
MOVE_NAMES = {v: k for k, v in MOVES.items()}


@dataclass(frozen=True)
class Tape:
    """Finitely supported sequence ``(s_n)`` with ``s_n = blank`` off the stored extent.

    ``left`` holds positions -1, -2, ... outward, ``right`` holds 0, 1, ....
    Neither list may end in a blank, so every sequence has exactly one
    representative and dataclass equality is sequence equality.  The same
    class doubles as the symbol sequences acted on by generalized shifts.
    """

    left: tuple = ()
    right: tuple = ()
    blank: str = "0"

    def __post_init__(self):
        if not isinstance(self.left, tuple) or not isinstance(self.right, tuple):
            raise MalformedTape("tape halves must be tuples")
        if (self.left and self.left[-1] == self.blank) or (
            self.right and self.right[-1] == self.blank
        ):
            raise MalformedTape("tape is not normalized (trailing blank stored)")

    @classmethod
    def from_cells(cls, cells: Mapping[int, str] | Iterable[tuple[int, str]], blank="0"):
        items = cells.items() if isinstance(cells, Mapping) else cells
        cells = {n: s for n, s in items if s != blank}
        if not cells:
            return cls((), (), blank)
        lo, hi = min(cells), max(cells)
        left = tuple(cells.get(-k, blank) for k in range(1, -lo + 1)) if lo < 0 else ()
        right = tuple(cells.get(k, blank) for k in range(0, hi + 1)) if hi >= 0 else ()
        return cls(_strip(left, blank), _strip(right, blank), blank)

    @classmethod
    def from_symbols(cls, symbols: Iterable[str], blank="0", start=0):
        return cls.from_cells(((start + i, s) for i, s in enumerate(symbols)), blank)

    @classmethod
    def parse(cls, text: str, blank="0"):
        """Read ``"ab.cd"`` (``b`` at -1, ``c`` at 0) or a plain ``"cd"`` starting at 0.

        Multi-character symbols are written space separated, with ``.`` as its
        own token marking the origin.
        """
        tokens = text.split() if " " in text.strip() else list(text.strip())
        if "." in tokens:
            i = tokens.index(".")
            left, right = tokens[:i], tokens[i + 1:]
            if "." in right:
                raise MalformedTape(f"more than one origin marker in {text!r}")
        else:
            left, right = [], tokens
        return cls.from_symbols(left + right, blank, start=-len(left))

    def __getitem__(self, n: int) -> str:
        if n >= 0:
            return self.right[n] if n < len(self.right) else self.blank
        k = -n - 1
        return self.left[k] if k < len(self.left) else self.blank

    def support(self):
        """``(lo, hi)`` of the non-blank cells, or None for the blank tape."""
        idx = [n for n, _ in self.cells()]
        return (min(idx), max(idx)) if idx else None

    def cells(self):
        out = [(-k - 1, s) for k, s in enumerate(self.left) if s != self.blank]
        out += [(k, s) for k, s in enumerate(self.right) if s != self.blank]
        return sorted(out)

    def symbols(self) -> set:
        return set(self.left) | set(self.right) | {self.blank}

    def window(self, lo: int, hi: int) -> tuple:
        return tuple(self[n] for n in range(lo, hi + 1))

    def write(self, symbol: str) -> "Tape":
        right = (symbol,) + self.right[1:] if self.right else (symbol,)
        return Tape(self.left, _strip(right, self.blank), self.blank)

    def replace(self, start: int, symbols: Iterable[str]) -> "Tape":
        cells = dict(self.cells())
        for i, s in enumerate(symbols):
            cells[start + i] = s
        return Tape.from_cells(cells, self.blank)

    def shift(self, eps: int) -> "Tape":
        """Return the tape ``t'`` with ``t'_n = t_{n+eps}``."""
        if eps == 0:
            return self
        if eps == 1:
            left = (self[0],) + self.left if (self.left or self[0] != self.blank) else ()
            return Tape(left, self.right[1:], self.blank)
        if eps == -1:
            right = (self[-1],) + self.right if (self.right or self[-1] != self.blank) else ()
            return Tape(self.left[1:], right, self.blank)
        return Tape.from_cells(((n - eps, s) for n, s in self.cells()), self.blank)

    def to_string(self) -> str:
        sep = "" if all(len(s) == 1 for s in self.symbols()) else " "
        right = sep.join(self.right)
        if not self.left:
            return right
        return sep.join(reversed(self.left)) + (" . " if sep else ".") + right

    def __str__(self):
        return self.to_string() or "<blank>"


def _strip(cells: tuple, blank: str) -> tuple:
    end = len(cells)
    while end and cells[end - 1] == blank:
        end -= 1
    return cells[:end]


@dataclass(frozen=True)
class Configuration:
    state: str
    tape: Tape

    def __str__(self):
        return f"({self.state}, {self.tape})"


@dataclass(frozen=True)
class HaltedSignal:
    """Returned by :func:`step` when asked to move out of the halting state."""

    tape: Tape


@dataclass(frozen=True, eq=False)
class TuringMachine:
    """Finite control ``(Q, Sigma, delta, q0, q_halt)``.

    ``transitions`` maps ``(state, read)`` to ``(state', write, eps)`` and must
    be total on the non-halting states.  Machines produced by
    ``extend_halt_loop`` carry ``looping=True`` and are total on every state;
    they never halt.
    """

    states: tuple
    alphabet: tuple
    blank: str
    initial: str
    halting: str
    transitions: Mapping = field(repr=False)
    looping: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", MappingProxyType(dict(self.transitions)))
        states, alphabet = set(self.states), set(self.alphabet)
        if len(states) != len(self.states):
            raise MachineError("duplicate state names")
        if len(alphabet) != len(self.alphabet):
            raise MachineError("duplicate alphabet symbols")
        if len(alphabet) < 2:
            raise MachineError("alphabet needs at least two symbols")
        if self.blank not in alphabet:
            raise MachineError(f"blank {self.blank!r} is not in the alphabet")
        for q in (self.initial, self.halting):
            if q not in states:
                raise MachineError(f"state {q!r} is not declared")
        if self.initial == self.halting:
            raise MachineError("initial and halting states must differ")
        for (q, s), (q2, s2, eps) in self.transitions.items():
            rule = f"{q} {s} -> {q2} {s2} {MOVE_NAMES.get(eps, eps)}"
            if q not in states or q2 not in states:
                raise MachineError(f"rule '{rule}' references an undeclared state")
            if s not in alphabet or s2 not in alphabet:
                raise MachineError(f"rule '{rule}' references an undeclared symbol")
            if eps not in (-1, 0, 1):
                raise MachineError(f"rule '{rule}' has an invalid move")
            if q == self.halting and not self.looping:
                raise MachineError(f"rule '{rule}' leaves the halting state")
        for q in self.active_states():
            for s in self.alphabet:
                if (q, s) not in self.transitions:
                    raise MachineError(f"no rule for ({q}, {s})")

    def __eq__(self, other):
        if not isinstance(other, TuringMachine):
            return NotImplemented
        return (
            self.states == other.states
            and self.alphabet == other.alphabet
            and self.blank == other.blank
            and self.initial == other.initial
            and self.halting == other.halting
            and dict(self.transitions) == dict(other.transitions)
            and self.looping == other.looping
        )

    __hash__ = None

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild through the constructor
        return (TuringMachine, (self.states, self.alphabet, self.blank, self.initial, self.halting,
                                dict(self.transitions), self.looping, self.name))

    def active_states(self) -> tuple:
        """States on which the global transition is defined."""
        if self.looping:
            return self.states
        return tuple(q for q in self.states if q != self.halting)

    def rule(self, state: str, symbol: str):
        return self.transitions[state, symbol]

    def incoming(self, state: str) -> list:
        """Rules ``((q, s), (state, s', eps))`` entering ``state``, in table order."""
        return [(src, dst) for src, dst in self.sorted_rules() if dst[0] == state]

    def incoming_shift(self, state: str):
        """The move shared by every rule entering ``state`` (None if none or mixed)."""
        moves = {dst[2] for _, dst in self.incoming(state)}
        return moves.pop() if len(moves) == 1 else None

    def sorted_rules(self) -> list:
        qi = {q: i for i, q in enumerate(self.states)}
        si = {s: i for i, s in enumerate(self.alphabet)}
        return sorted(self.transitions.items(), key=lambda kv: (qi[kv[0][0]], si[kv[0][1]]))

    def start(self, tape: Tape | None = None) -> Configuration:
        return Configuration(self.initial, tape if tape is not None else Tape(blank=self.blank))


def _check_config(machine: TuringMachine, config: Configuration):
    if config.state not in machine.states:
        raise UnknownState(f"state {config.state!r} is not a state of this machine")
    tape = config.tape
    if tape.blank != machine.blank:
        raise MalformedTape(f"tape blank {tape.blank!r} differs from machine blank")
    extra = tape.symbols() - set(machine.alphabet)
    if extra:
        raise MalformedTape(f"tape carries symbols outside the alphabet: {sorted(extra)}")


def step(machine: TuringMachine, config: Configuration):
    """Apply the global transition once.

    Returns the next :class:`Configuration`, or a :class:`HaltedSignal`
    carrying the unchanged tape when ``config`` is in the halting state.
    """
    _check_config(machine, config)
    if config.state == machine.halting and not machine.looping:
        return HaltedSignal(config.tape)
    q2, s2, eps = machine.transitions[config.state, config.tape[0]]
    return Configuration(q2, config.tape.write(s2).shift(eps))


_P = (1 << 61) - 1
_B = 0x5DEECE66D


class Simulator:
    """Mutable fast-path stepping for long runs.

    Keeps the tape in two growable lists indexed by absolute position and a
    polynomial hash of the head-relative sequence, so that :meth:`key` is an
    O(1) fingerprint of the current configuration.  Equal keys are a
    necessary condition for equal configurations; callers confirm with
    :meth:`snapshot`.
    """

    def __init__(self, machine: TuringMachine, config: Configuration):
        _check_config(machine, config)
        self.machine = machine
        self.state = config.state
        self.steps = 0
        self._rules = dict(machine.transitions)
        self._halting = None if machine.looping else machine.halting
        self._blank = machine.blank
        self._code = {s: (i * 0x9E3779B97F4A7C15 + 1) % _P for i, s in enumerate(machine.alphabet)}
        self._code[machine.blank] = 0
        self._pos: list = []
        self._neg: list = []
        self.head = 0
        self._hash = 0
        for n, s in config.tape.cells():
            self._set(n, s)

    def _get(self, a: int) -> str:
        if a >= 0:
            return self._pos[a] if a < len(self._pos) else self._blank
        k = -a - 1
        return self._neg[k] if k < len(self._neg) else self._blank

    def _set(self, a: int, s: str):
        old = self._get(a)
        if old == s:
            return
        self._hash = (self._hash + (self._code[s] - self._code[old]) * pow(_B, a, _P)) % _P
        if a >= 0:
            cells, k = self._pos, a
        else:
            cells, k = self._neg, -a - 1
        if k >= len(cells):
            cells.extend([self._blank] * (k + 1 - len(cells)))
        cells[k] = s

    @property
    def halted(self) -> bool:
        return self.state == self._halting

    def step(self) -> bool:
        """Advance one step; returns False (and does nothing) when halted."""
        if self.state == self._halting:
            return False
        q2, s2, eps = self._rules[self.state, self._get(self.head)]
        self._set(self.head, s2)
        self.head += eps
        self.state = q2
        self.steps += 1
        return True

    def key(self):
        return self.state, self._hash * pow(_B, -self.head, _P) % _P

    def snapshot(self) -> Configuration:
        cells = [(a - self.head, s) for a, s in enumerate(self._pos) if s != self._blank]
        cells += [(-k - 1 - self.head, s) for k, s in enumerate(self._neg) if s != self._blank]
        return Configuration(self.state, Tape.from_cells(cells, self._blank))


def run(machine: TuringMachine, tape: Tape, budget: int):
    """Run from ``(q0, tape)`` for at most ``budget`` steps.

    Returns ``Halted(output_tape, steps)`` or ``Unresolved(budget, last=config)``.
    """
    if machine.looping:
        raise LoopingMachine("machine has a halt-loop extension and never halts")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    sim = Simulator(machine, machine.start(tape))
    while not sim.halted and sim.steps < budget:
        sim.step()
    if sim.halted:
        return Halted(sim.snapshot().tape, sim.steps)
    return Unresolved(budget, last=sim.snapshot())


def trace(machine: TuringMachine, config: Configuration, limit: int) -> list:
    """Configurations visited from ``config`` (inclusive), stopping at halt or ``limit`` steps."""
    out = [config]
    for _ in range(limit):
        nxt = step(machine, out[-1])
        if isinstance(nxt, HaltedSignal):
            break
        out.append(nxt)
    return out


def windowed_tapes(alphabet, blank: str, radius: int):
    """Every tape supported in ``[-radius, radius]``."""
    for cells in itertools.product(alphabet, repeat=2 * radius + 1):
        yield Tape.from_cells(zip(range(-radius, radius + 1), cells), blank)


@dataclass(frozen=True)
class ReversibilityReport:
    reversible: bool
    radius: int
    method: str
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.reversible


def local_collision(machine: TuringMachine):
    """A colliding pair read off the rule table alone, or None.

    Two rules with identical ``(q', write, eps)`` collide on one-cell tapes.
    Two rules entering the same state with different moves also collide:
    each source carries the other's written symbol where the shifts line it
    up, which needs a tape of radius at most 2.  When neither happens the
    global transition is injective.
    """
    seen, entering = {}, {}
    blank = machine.blank
    for (q, s), dst in machine.sorted_rules():
        if dst in seen:
            p, r = seen[dst]
            return (
                Configuration(p, Tape.from_cells({0: r}, blank)),
                Configuration(q, Tape.from_cells({0: s}, blank)),
            )
        seen[dst] = (q, s)
        q2, w, eps = dst
        if q2 in entering and entering[q2][3] != eps:
            p, r, w1, e1 = entering[q2]
            return (
                Configuration(p, Tape.from_cells({0: r, e1 - eps: w}, blank)),
                Configuration(q, Tape.from_cells({0: s, eps - e1: w1}, blank)),
            )
        entering.setdefault(q2, (q, s, w, eps))
    return None


def is_reversible(machine: TuringMachine, radius: int = 1) -> ReversibilityReport:
    """Decide injectivity of the global transition on windowed configurations.

    The rule-table test runs first and is already complete: when it finds
    nothing the map is injective everywhere.  Every configuration whose
    state is active and whose tape is supported in ``[-radius, radius]`` is
    then stepped and the images hashed, as an independent confirmation whose
    window is recorded in the report.
    """
    if radius < 1:
        raise WindowTooSmall(f"radius must be >= 1, got {radius}")
    hit = local_collision(machine)
    if hit is not None:
        return ReversibilityReport(False, radius, "local", hit)
    images = {}
    checked = 0
    for tape in windowed_tapes(machine.alphabet, machine.blank, radius):
        for q in machine.active_states():
            c = Configuration(q, tape)
            img = step(machine, c)
            checked += 1
            if img in images:
                return ReversibilityReport(False, radius, "window", (images[img], c), checked)
            images[img] = c
    return ReversibilityReport(True, radius, "window", None, checked)
