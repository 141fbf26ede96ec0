"""A small corpus of total, reversible machines whose initial state is unreachable.

Each entry pairs a machine with a halting predicate worked out by hand from
the table, so tests can compare simulation against something that never runs
the machine.  All machines use blank ``0``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .formats import parse_machine
from .tm_core import Tape, TuringMachine, windowed_tapes

HALTER = """\
states q0 h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> h 0 S
trans q0 1 -> h 1 S
"""

# Steps onto the cell at -1, flips it and steps back.  On a unary block
# starting at 0 this prepends a 1, so "11" becomes "111" (centred on the
# head) in two steps.
INCREMENTER = """\
states q0 a h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> a 0 R
trans q0 1 -> a 1 R
trans a 0 -> h 1 L
trans a 1 -> h 0 L
"""

SEEK_RIGHT = """\
states q0 a h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> h 0 S
trans q0 1 -> a 1 L
trans a 0 -> a 0 L
trans a 1 -> h 1 S
"""

SEEK_LEFT = """\
states q0 a h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> h 0 S
trans q0 1 -> a 1 R
trans a 0 -> a 0 R
trans a 1 -> h 1 S
"""

# Walks over a block of 1s turning all but the first into 0s, then writes a 1.
ERASER = """\
states q0 a h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> h 0 S
trans q0 1 -> a 1 L
trans a 1 -> a 0 L
trans a 0 -> h 1 S
"""

SEEK_MARK = """\
states q0 a h
alphabet 0 1 2
blank 0
initial q0
halting h
trans q0 0 -> a 0 L
trans q0 1 -> a 1 L
trans q0 2 -> h 2 S
trans a 0 -> a 2 L
trans a 1 -> h 1 S
trans a 2 -> h 0 S
"""

# From a 1 at the origin, walks right to the next 1 and back again.
BOUNCE = """\
states q0 r l h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> h 0 S
trans q0 1 -> r 1 L
trans r 0 -> r 0 L
trans r 1 -> l 1 R
trans l 0 -> l 0 R
trans l 1 -> h 1 S
"""


def _right_has(tape: Tape, pred) -> bool:
    return any(n > 0 and pred(s) for n, s in tape.cells())


def _left_has(tape: Tape, pred) -> bool:
    return any(n < 0 and pred(s) for n, s in tape.cells())


def _bounce_steps(tape: Tape):
    if tape[0] == "0":
        return 1
    if tape[0] == "1" and _right_has(tape, lambda s: s == "1"):
        n = min(n for n, s in tape.cells() if n > 0 and s == "1")
        return 2 * n + 1
    return None


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    halts: Callable[[Tape], bool]
    steps: Callable[[Tape], int | None] | None = None

    @property
    def machine(self) -> TuringMachine:
        return parse_machine(self.text, self.name)


CORPUS = (
    CorpusEntry("halter", HALTER, lambda t: True, lambda t: 1),
    CorpusEntry("incrementer", INCREMENTER, lambda t: True, lambda t: 2),
    CorpusEntry("seek_right", SEEK_RIGHT,
                lambda t: t[0] == "0" or _right_has(t, lambda s: s == "1")),
    CorpusEntry("seek_left", SEEK_LEFT,
                lambda t: t[0] == "0" or _left_has(t, lambda s: s == "1")),
    CorpusEntry("eraser", ERASER, lambda t: True),
    CorpusEntry("seek_mark", SEEK_MARK,
                lambda t: t[0] == "2" or _right_has(t, lambda s: s != "0")),
    CorpusEntry("bounce", BOUNCE,
                lambda t: _bounce_steps(t) is not None, _bounce_steps),
)


def entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


def corpus_inputs(machine: TuringMachine, count: int = 24, radius: int = 2, seed: int = 0, halts=None) -> list:
    """Deterministic sample of tapes supported in ``[-radius, radius]``; always includes blank.

    With a ``halts`` predicate, about a third of the sample is drawn from the
    non-halting tapes (when there are any) so both outcomes are exercised.
    """
    tapes = list(windowed_tapes(machine.alphabet, machine.blank, radius))
    rng = random.Random(seed)
    rest = tapes[1:]
    if halts is None:
        return [tapes[0]] + rng.sample(rest, min(count - 1, len(rest)))
    loops = [t for t in rest if not halts(t)]
    stops = [t for t in rest if halts(t)]
    n_loop = min(len(loops), (count - 1) // 3)
    n_stop = min(len(stops), count - 1 - n_loop)
    n_loop = min(len(loops), count - 1 - n_stop)
    return [tapes[0]] + rng.sample(stops, n_stop) + rng.sample(loops, n_loop)
