import pytest
from hypothesis import given, strategies as st

from conftest import MERGING, REACHABLE, tapes
from oracles import naive_run, parse_rules
from tmdyn.corpus import CORPUS, entry
from tmdyn.errors import InitialReachable, NotReversible
from tmdyn.formats import parse_machine
from tmdyn.outcomes import Halted, Unresolved
from tmdyn.pipeline import random_configurations
from tmdyn.tm_core import Configuration, HaltedSignal, Tape, is_reversible, run, step, trace, windowed_tapes
from tmdyn.tm_transform import (
    check_initial_unreachable,
    extend_halt_loop,
    from_inverse_frame,
    invert,
    restartify,
    to_inverse_frame,
)

def test_initial_unreachable_examples():
    assert not check_initial_unreachable(parse_machine(REACHABLE))
    assert check_initial_unreachable(entry("incrementer").machine)
    assert all(check_initial_unreachable(restartify(e.machine)) for e in CORPUS)


def test_preconditions_raise():
    with pytest.raises(InitialReachable):
        restartify(parse_machine(REACHABLE))
    with pytest.raises(NotReversible) as err:
        invert(parse_machine(MERGING))
    assert err.value.witness is not None
    with pytest.raises(NotReversible):
        invert(extend_halt_loop(entry("halter").machine))


def test_inverse_of_halter():
    m = entry("halter").machine
    inv = invert(m)
    assert (inv.initial, inv.halting) == (m.halting, m.initial)
    for t in (Tape(), Tape.parse("1"), Tape.parse("1.01")):
        after = step(m, Configuration("q0", t))
        back = step(inv, to_inverse_frame(m, after))
        assert back == Configuration("q0", t)


def test_inverse_round_trip_incrementer_random():
    m = entry("incrementer").machine
    inv = invert(m)
    for c in random_configurations(m, 200, seed=7, radius=5):
        img = step(m, c)
        assert step(inv, to_inverse_frame(m, img)) == to_inverse_frame(m, c)


def test_inverse_exhaustive_radius_four(corpus_entry):
    m = corpus_entry.machine
    inv = invert(m)
    for t in windowed_tapes(m.alphabet, m.blank, 4 if len(m.alphabet) == 2 else 2):
        for q in m.active_states():
            c = Configuration(q, t)
            got = step(inv, to_inverse_frame(m, step(m, c)))
            assert from_inverse_frame(m, got) == c


def test_inverse_is_reversible(corpus_entry):
    assert is_reversible(invert(corpus_entry.machine), 2)


@given(st.data())
def test_inverse_runs_trace_backwards(data):
    e = data.draw(st.sampled_from(CORPUS))
    m = e.machine
    t = data.draw(tapes(m.alphabet, m.blank, 4))
    path = trace(m, m.start(t), 60)
    if path[-1].state != m.halting:
        return
    inv = invert(m)
    out = run(inv, to_inverse_frame(m, path[-1]).tape, 200)
    assert out == Halted(t, len(path) - 1)


def test_restart_states():
    r = restartify(entry("incrementer").machine)
    assert r.states == ("q0", "a+", "h+", "a-", "h-", "h")
    assert r.initial == "q0" and r.halting == "h"


@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.name)
def test_restart_properties(e):
    m = e.machine
    r = restartify(m)
    assert is_reversible(r, 3)
    assert check_initial_unreachable(r)
    rules, blank, q0, qh = parse_rules(e.text)
    for t in [Tape()] + [Tape.from_cells(c) for c in ({0: "1"}, {0: "1", 2: "1"}, {-1: "1", 0: "1"})]:
        ref = naive_run(rules, blank, q0, qh, dict(t.cells()), 500)
        out = run(r, t, 2000)
        if ref is None:
            assert isinstance(out, Unresolved)
            reached = {c.state for c in trace(r, r.start(t), 2000)}
            assert not any(s.endswith("-") for s in reached)
        else:
            assert out == Halted(t, 2 * ref[0] + 1)


def test_restart_step_count_incrementer():
    m = entry("incrementer").machine
    k = run(m, Tape.parse("11"), 100).steps
    assert run(restartify(m), Tape.parse("11"), 100) == Halted(Tape.parse("11"), 2 * k + 1)


@given(st.data())
def test_restart_never_enters_reverse_phase_early(data):
    e = data.draw(st.sampled_from(CORPUS))
    m = e.machine
    r = restartify(m)
    t = data.draw(tapes(m.alphabet, m.blank, 4))
    k = run(m, t, 300)
    for n, c in enumerate(trace(r, r.start(t), 300)):
        if c.state.endswith("-"):
            assert isinstance(k, Halted) and n > k.steps
    if isinstance(k, Halted):
        assert run(r, t, 2 * k.steps + 1) == Halted(t, 2 * k.steps + 1)


def test_halt_loop():
    m = entry("halter").machine
    x = extend_halt_loop(m)
    assert x.looping and x.rule("h", "1") == ("q0", "1", 0)
    assert extend_halt_loop(x) is x
    c = x.start()
    assert step(x, step(x, c)) == c
    assert not isinstance(step(x, Configuration("h", Tape())), HaltedSignal)


def test_halt_loop_period_on_restartified():
    m = entry("incrementer").machine
    x = extend_halt_loop(restartify(m))
    c = x.start(Tape.parse("11"))
    k = run(m, Tape.parse("11"), 100).steps
    path = trace(x, c, 2 * k + 2)
    assert path[-1] == c and c not in path[1:-1]
