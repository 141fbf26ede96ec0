"""Machine-to-machine constructions: inverse machine, restart machine, halt loop.

All three constructions assume a total, reversible machine whose initial state
has no incoming rule.  For such a machine every other state ``q`` receives
exactly one rule per alphabet symbol, all with the same move, written here
``eps(q)``.

Inverse frame
-------------
The inverse machine must undo "write at 0, then shift by eps".  A fused rule
of the inverse can only read at 0, so it works on configurations whose last
shift has already been undone: the configuration ``(q, t)`` of ``T``
corresponds to ``(q, shift(t, -eps(q)))`` of ``T^-1``.  With that convention a
single inverse rule "read the written symbol, restore the old one, undo the
*previous* shift" exists for every forward rule, so the inverse takes exactly
one step per forward step and needs no auxiliary states.
"""
from __future__ import annotations

from .errors import InitialReachable, NotReversible
from .tm_core import Configuration, TuringMachine, is_reversible


def check_initial_unreachable(machine: TuringMachine) -> bool:
    return all(dst[0] != machine.initial for dst in machine.transitions.values())


def _require_invertible(machine: TuringMachine):
    if machine.looping:
        raise NotReversible("halt-loop extended machines are not accepted here")
    if not check_initial_unreachable(machine):
        raise InitialReachable(f"initial state {machine.initial!r} is the target of a rule")
    report = is_reversible(machine, radius=1)
    if not report:
        raise NotReversible("global transition is not injective", witness=report.witness)


def entry_shift(machine: TuringMachine, state: str) -> int:
    """``eps(state)``: the move of every rule entering ``state`` (0 for the initial state)."""
    if state == machine.initial:
        return 0
    eps = machine.incoming_shift(state)
    if eps is None:
        raise NotReversible(f"rules entering {state!r} disagree on the move")
    return eps


def to_inverse_frame(machine: TuringMachine, config: Configuration) -> Configuration:
    return Configuration(config.state, config.tape.shift(-entry_shift(machine, config.state)))


def from_inverse_frame(machine: TuringMachine, config: Configuration) -> Configuration:
    return Configuration(config.state, config.tape.shift(entry_shift(machine, config.state)))


def _reverse_rules(machine: TuringMachine):
    """Yield ``(q, written) -> (p, read, -eps(p))`` for every forward rule ``(p, read) -> (q, written, eps)``."""
    for (p, read), (q, written, _) in machine.sorted_rules():
        yield (q, written), (p, read, -entry_shift(machine, p))


def invert(machine: TuringMachine) -> TuringMachine:
    """Inverse machine, acting on inverse-frame configurations.

    Its initial state is the halting state of ``machine`` and it halts in the
    initial state of ``machine``.  For every active configuration ``c``::

        step(inv, to_inverse_frame(T, step(T, c))) == to_inverse_frame(T, c)
    """
    _require_invertible(machine)
    table = dict(_reverse_rules(machine))
    return TuringMachine(
        states=machine.states,
        alphabet=machine.alphabet,
        blank=machine.blank,
        initial=machine.halting,
        halting=machine.initial,
        transitions=table,
        name=f"inverse({machine.name})" if machine.name else "",
    )


def plus(q: str) -> str:
    return f"{q}+"


def minus(q: str) -> str:
    return f"{q}-"


def restartify(machine: TuringMachine) -> TuringMachine:
    """Restart machine ``T'`` over ``(Q \\ {q0}) x {+,-}`` plus bare ``q0`` and ``q_halt``.

    * forward phase: ``q0`` and ``q+`` copy ``T`` with targets tagged ``+``;
    * turnaround: ``q_halt+`` goes to ``q_halt-`` without writing, undoing the
      move that entered ``q_halt`` (none for the usual ``eps(q_halt) = 0``);
    * reverse phase: ``q-`` runs the inverse machine, tagging targets ``-``,
      except that returning to ``q0`` lands in the bare halting state instead.

    If ``T`` halts on ``(q0, t)`` after ``k`` steps, ``T'`` halts on the same
    input after ``2k + 1`` steps with its tape equal to ``t``; if ``T`` runs
    forever so does ``T'``.
    """
    _require_invertible(machine)
    q0, qh = machine.initial, machine.halting
    others = [q for q in machine.states if q != q0]
    states = (q0,) + tuple(plus(q) for q in others) + tuple(minus(q) for q in others) + (qh,)
    table = {}
    for (q, s), (q2, s2, eps) in machine.sorted_rules():
        src = q0 if q == q0 else plus(q)
        table[src, s] = (plus(q2), s2, eps)
    back = -entry_shift(machine, qh)
    for s in machine.alphabet:
        table[plus(qh), s] = (minus(qh), s, back)
    for (q, written), (p, read, eps) in _reverse_rules(machine):
        table[minus(q), written] = (qh if p == q0 else minus(p), read, eps)
    return TuringMachine(
        states=states,
        alphabet=machine.alphabet,
        blank=machine.blank,
        initial=q0,
        halting=qh,
        transitions=table,
        name=f"restart({machine.name})" if machine.name else "",
    )


def extend_halt_loop(machine: TuringMachine) -> TuringMachine:
    """Add ``delta(q_halt, s) = (q0, s, 0)``; the result is total and never halts."""
    if machine.looping:
        return machine
    table = dict(machine.transitions)
    for s in machine.alphabet:
        table[machine.halting, s] = (machine.initial, s, 0)
    return TuringMachine(
        states=machine.states,
        alphabet=machine.alphabet,
        blank=machine.blank,
        initial=machine.initial,
        halting=machine.halting,
        transitions=table,
        looping=True,
        name=f"loop({machine.name})" if machine.name else "",
    )
