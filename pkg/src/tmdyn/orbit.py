"""Orbit analysis with budget-relative verdicts.

Nothing here decides halting or periodicity.  Every answer is either a
certificate found within the budget (``Halted``, ``Periodic``, ``Reached``) or
an honest ``Unresolved`` / ``NotYet``.

Cycle detection is Brent's algorithm on exact states: normalized tapes,
sequences or digit tuples.  ``budget`` counts evaluations of the map by the
leading pointer; a cycle with preperiod ``mu`` and period ``lam`` is always
found once ``budget >= 3 * (mu + lam) + 2``, and earlier in most cases.
"""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cantor import BlockCode, BlockMap, CantorPoint, apply_block_map, encode_point
from .errors import AlphabetMismatch, TypeMismatch
from .gshift import ConfigEncoding, GeneralizedShift, apply, fused_symbol
from .outcomes import Halted, Periodic, Unresolved, verdict_dict
from .tm_core import Configuration, Simulator, Tape, TuringMachine, run
from .tm_transform import extend_halt_loop, restartify


def classify_orbit(system, start, budget: int, halted=None):
    """Classify the orbit of ``start`` under ``system``.

    ``system`` is a :class:`TuringMachine` (start: ``Configuration``), a
    :class:`GeneralizedShift` (start: sequence) or a :class:`BlockMap` (start:
    :class:`CantorPoint`).  Machines halt on their own; for the other two an
    optional ``halted`` predicate marks terminal states.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if isinstance(system, TuringMachine):
        if not isinstance(start, Configuration):
            raise TypeMismatch("a machine orbit starts from a Configuration")
        return _classify_machine(system, start, budget)
    if isinstance(system, GeneralizedShift):
        if not isinstance(start, Tape):
            raise TypeMismatch("a generalized-shift orbit starts from a sequence")
        return _brent(lambda s: apply(system, s), start, budget, halted)
    if isinstance(system, BlockMap):
        if not isinstance(start, CantorPoint):
            raise TypeMismatch("a block-map orbit starts from a CantorPoint")
        return _brent(lambda p: apply_block_map(system, p), start, budget, halted)
    raise TypeMismatch(f"cannot iterate {type(system).__name__}")


def _brent(f, x0, budget, halted=None):
    if halted is not None and halted(x0):
        return Halted(x0, 0)
    if budget == 0:
        return Unresolved(0, x0)
    tortoise, hare, n = x0, f(x0), 1
    power = lam = 1
    while tortoise != hare:
        if halted is not None and halted(hare):
            return Halted(hare, n)
        if n >= budget:
            return Unresolved(budget, hare)
        if power == lam:
            tortoise, power, lam = hare, power * 2, 0
        hare, n, lam = f(hare), n + 1, lam + 1
    a = b = x0
    for _ in range(lam):
        b = f(b)
    mu = 0
    while a != b:
        a, b, mu = f(a), f(b), mu + 1
    return Periodic(lam, mu)


def _same(sim: Simulator, key, snap) -> bool:
    return sim.key() == key and sim.snapshot() == snap


def _classify_machine(machine: TuringMachine, start: Configuration, budget: int):
    hare = Simulator(machine, start)
    if hare.halted:
        return Halted(start.tape, 0)
    if budget == 0:
        return Unresolved(0, start)
    t_key, t_snap = hare.key(), start
    hare.step()
    power = lam = 1
    while not _same(hare, t_key, t_snap):
        if hare.halted:
            return Halted(hare.snapshot().tape, hare.steps)
        if hare.steps >= budget:
            return Unresolved(budget, hare.snapshot())
        if power == lam:
            t_key, t_snap, power, lam = hare.key(), hare.snapshot(), power * 2, 0
        hare.step()
        lam += 1
    a, b = Simulator(machine, start), Simulator(machine, start)
    for _ in range(lam):
        b.step()
    mu = 0
    while not (a.key() == b.key() and a.snapshot() == b.snapshot()):
        a.step()
        b.step()
        mu += 1
    return Periodic(lam, mu)


def periodic_system(machine: TuringMachine) -> TuringMachine:
    """Restart machine with the halt loop: orbits through ``(q0, t)`` close iff ``machine`` halts on ``t``."""
    return extend_halt_loop(restartify(machine))


@dataclass(frozen=True)
class ReachQuery:
    """Target window ``(t*_-k, ..., t*_k)`` for the output tape."""

    k: int
    target: tuple

    def __post_init__(self):
        object.__setattr__(self, "target", tuple(self.target))
        if self.k < 0 or len(self.target) != 2 * self.k + 1:
            raise ValueError(f"target must have {2 * self.k + 1} symbols, got {len(self.target)}")

    @classmethod
    def parse(cls, text: str) -> "ReachQuery":
        """Parse ``"<k>:<window>"``; the window is characters or space separated symbols."""
        k, _, window = text.partition(":")
        syms = window.split() if " " in window.strip() else list(window.strip())
        return cls(int(k), syms)


@dataclass(frozen=True)
class Reached:
    steps: int

    kind = "reached"


@dataclass(frozen=True)
class NotYet:
    budget: int
    halted: bool = False

    kind = "not_yet"


def check_reachability(machine: TuringMachine, tape: Tape, query: ReachQuery, budget: int):
    """``Reached(steps)`` iff the machine halts within budget with ``query.target`` on ``[-k, k]``.

    ``NotYet(halted=True)`` means the machine halted with a different window,
    so no larger budget will help.
    """
    extra = set(query.target) - set(machine.alphabet)
    if extra:
        raise AlphabetMismatch(f"target symbols outside the alphabet: {sorted(extra)}")
    result = run(machine, tape, budget)
    if isinstance(result, Halted):
        if result.output.window(-query.k, query.k) == query.target:
            return Reached(result.steps)
        return NotYet(budget, halted=True)
    return NotYet(budget)


def explicit_point(enc: ConfigEncoding, code: BlockCode, tape: Tape) -> CantorPoint:
    """Cantor point of the encoded input configuration ``(q0, tape)``."""
    return encode_point(code.encode(enc.encode(Configuration(enc.initial, tape))))


def target_cylinder(enc: ConfigEncoding, code: BlockCode, query: ReachQuery | None = None) -> list:
    """Binary cylinders (``{position: bit}``) whose union is the target set.

    Without a query this is the set of points whose decoded state is halting,
    one cylinder per symbol under the head.
    """
    w = code.width
    if query is None:
        windows = [(0, (fused_symbol(enc.halting, s),)) for s in enc.sigma]
    else:
        win = list(query.target)
        win[query.k] = fused_symbol(enc.halting, win[query.k])
        windows = [(-query.k, tuple(win))]
    out = []
    for lo, syms in windows:
        bits = code.encode_window(syms)
        out.append({w * lo + i: b for i, b in enumerate(bits)})
    return out


def in_cylinders(p: CantorPoint, cylinders) -> bool:
    return any(all(p.bit(n) == b for n, b in cyl.items()) for cyl in cylinders)


def reach_via_block_map(bm: BlockMap, p: CantorPoint, cylinders, budget: int):
    """First time the block-map trajectory of ``p`` enters the target cylinders."""
    for n in range(budget + 1):
        if in_cylinders(p, cylinders):
            return Reached(n)
        if n < budget:
            p = apply_block_map(bm, p)
    return NotYet(budget)


def tape_digest(tape: Tape) -> str:
    return hashlib.sha256(f"{tape.blank}|{tape.to_string()}".encode()).hexdigest()[:16]


@dataclass
class CensusReport:
    """Per-input verdicts and counts; every count is a lower bound at this budget."""

    budget: int
    rows: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"periodic": 0, "halted": 0, "unresolved": 0}
        for _, v in self.rows:
            out[v.kind] += 1
        return out

    @property
    def fraction_periodic(self) -> float:
        return self.counts["periodic"] / len(self.rows) if self.rows else 0.0

    def as_dict(self) -> dict:
        return {
            "budget": self.budget,
            "inputs": len(self.rows),
            "counts": self.counts,
            "fraction_periodic_lower_bound": self.fraction_periodic,
            "note": "counts are lower bounds at this budget, not decisions",
            "rows": [
                {"input": t.to_string(), "digest": tape_digest(t), **verdict_dict(v)} for t, v in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        c = self.counts
        return (
            f"{len(self.rows)} inputs at budget {self.budget}: at least {c['periodic']} periodic, "
            f"{c['halted']} halted, {c['unresolved']} unresolved "
            f"(periodic fraction >= {self.fraction_periodic:.3f})"
        )


def _classify_one(args):
    machine, tape, budget = args
    return classify_orbit(machine, machine.start(tape), budget)


def orbit_census(machine: TuringMachine, inputs, budget: int, jobs: int = 1) -> CensusReport:
    """Classify the orbit through ``(q0, t)`` for every ``t`` in ``inputs``, keeping input order."""
    inputs = list(inputs)
    work = [(machine, t, budget) for t in inputs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_classify_one, work))
    else:
        verdicts = [_classify_one(w) for w in work]
    return CensusReport(budget, list(zip(inputs, verdicts)))
