"""Generalized shifts and the compiler from Turing machines.

A generalized shift reads the window ``D_F`` to pick an integer shift, rewrites
the window ``D_G`` through a table, then shifts the whole sequence:
``s''_n = s'_{n + F(s)}``.  Both tables are explicit finite dicts so that
they serialize and so the Cantor block map can be read off them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import AlphabetMismatch, NotInImage, WindowTooSmall
from .tm_core import Configuration, Tape, TuringMachine, windowed_tapes

# Finitely supported sequences share the tape representation.
SymbolSequence = Tape


@dataclass(frozen=True, eq=False)
class GeneralizedShift:
    alphabet: tuple
    default: str
    df_start: int
    df_len: int
    f_table: Mapping = field(repr=False)
    dg_start: int
    dg_len: int
    g_table: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "f_table", MappingProxyType(dict(self.f_table)))
        object.__setattr__(self, "g_table", MappingProxyType(dict(self.g_table)))
        if self.default not in self.alphabet:
            raise AlphabetMismatch(f"default symbol {self.default!r} not in alphabet")
        n = len(self.alphabet)
        if len(self.f_table) != n ** self.df_len or len(self.g_table) != n ** self.dg_len:
            raise ValueError("F and G tables must be total on their windows")
        syms = set(self.alphabet)
        for key, val in self.f_table.items():
            if len(key) != self.df_len or not set(key) <= syms or not isinstance(val, int):
                raise ValueError(f"bad F entry {key!r} -> {val!r}")
        for key, val in self.g_table.items():
            if len(key) != self.dg_len or len(val) != self.dg_len or not set(key) | set(val) <= syms:
                raise ValueError(f"bad G entry {key!r} -> {val!r}")

    def __eq__(self, other):
        if not isinstance(other, GeneralizedShift):
            return NotImplemented
        return (self.alphabet, self.default, self.df_start, self.df_len, self.dg_start, self.dg_len) == (
            other.alphabet, other.default, other.df_start, other.df_len, other.dg_start, other.dg_len
        ) and dict(self.f_table) == dict(other.f_table) and dict(self.g_table) == dict(other.g_table)

    __hash__ = None

    @property
    def shift_bound(self) -> int:
        return max(abs(v) for v in self.f_table.values())

    @property
    def window(self) -> tuple:
        """``D_F`` and ``D_G`` closed to one interval ``(lo, hi)``."""
        lo = min(self.df_start, self.dg_start)
        hi = max(self.df_start + self.df_len, self.dg_start + self.dg_len) - 1
        return lo, hi

    def domain(self, length: int):
        return itertools.product(self.alphabet, repeat=length)


def identity_shift(alphabet, default) -> GeneralizedShift:
    alphabet = tuple(alphabet)
    return GeneralizedShift(
        alphabet, default, 0, 1, {(a,): 0 for a in alphabet}, 0, 1, {(a,): (a,) for a in alphabet}
    )


def pure_shift(alphabet, default, n: int) -> GeneralizedShift:
    gs = identity_shift(alphabet, default)
    return GeneralizedShift(gs.alphabet, default, 0, 1, {k: n for k in gs.f_table}, 0, 1, gs.g_table)


def apply(gs: GeneralizedShift, s: Tape) -> Tape:
    if s.blank != gs.default:
        raise AlphabetMismatch(f"sequence default {s.blank!r} differs from {gs.default!r}")
    extra = s.symbols() - set(gs.alphabet)
    if extra:
        raise AlphabetMismatch(f"symbols outside the alphabet: {sorted(extra)}")
    f = gs.f_table[s.window(gs.df_start, gs.df_start + gs.df_len - 1)]
    g = gs.g_table[s.window(gs.dg_start, gs.dg_start + gs.dg_len - 1)]
    return s.replace(gs.dg_start, g).shift(f)


def fused_symbol(state: str, symbol: str) -> str:
    return f"{state}|{symbol}"


@dataclass(frozen=True)
class ConfigEncoding:
    """Injective map from configurations to sequences over ``Sigma + Q x Sigma``.

    ``(q, t)`` becomes ``t`` with position 0 replaced by the fused symbol
    ``q|t_0``; exactly one fused symbol occurs in any encoded sequence.
    """

    states: tuple
    sigma: tuple
    blank: str
    initial: str
    halting: str
    looping: bool = False

    def __post_init__(self):
        fused = {fused_symbol(q, s): (q, s) for q in self.states for s in self.sigma}
        if set(fused) & set(self.sigma) or len(fused) != len(self.states) * len(self.sigma):
            raise ValueError("fused symbols collide with plain symbols")
        object.__setattr__(self, "_fused", fused)

    @classmethod
    def for_machine(cls, machine: TuringMachine) -> "ConfigEncoding":
        return cls(machine.states, machine.alphabet, machine.blank,
                   machine.initial, machine.halting, machine.looping)

    @property
    def alphabet(self) -> tuple:
        return self.sigma + tuple(fused_symbol(q, s) for q in self.states for s in self.sigma)

    def unfuse(self, symbol: str):
        return self._fused.get(symbol)

    def is_active(self, state: str) -> bool:
        return self.looping or state != self.halting

    def encode(self, config: Configuration) -> Tape:
        return config.tape.replace(0, [fused_symbol(config.state, config.tape[0])])

    def decode(self, seq: Tape) -> Configuration:
        marks = [(n, s) for n, s in seq.cells() if s in self._fused]
        if len(marks) != 1 or marks[0][0] != 0:
            raise NotInImage("sequence does not carry exactly one state marker at position 0")
        if seq.blank != self.blank or not seq.symbols() <= set(self.alphabet):
            raise NotInImage("sequence is not over the encoding alphabet")
        q, s = self._fused[seq[0]]
        return Configuration(q, seq.replace(0, [s]))

    def is_halting(self, seq: Tape) -> bool:
        hit = self._fused.get(seq[0])
        return hit is not None and hit[0] == self.halting and not self.looping

    def admissible(self, window: tuple, lo: int) -> bool:
        """Whether a window starting at position ``lo`` occurs in some encoded active configuration."""
        for n, sym in enumerate(window, lo):
            hit = self._fused.get(sym)
            if n == 0:
                if hit is None or not self.is_active(hit[0]):
                    return False
            elif hit is not None:
                return False
        return lo <= 0 < lo + len(window)

    def configurations(self, radius: int, active_only: bool = True):
        states = [q for q in self.states if self.is_active(q)] if active_only else list(self.states)
        for tape in windowed_tapes(self.sigma, self.blank, radius):
            for q in states:
                yield Configuration(q, tape)


def compile_tm(machine: TuringMachine):
    """Generalized shift conjugate to the global transition of ``machine``.

    ``D_F = D_G = {-1, 0, 1}``.  On a window ``(a, q|s, b)`` with an active
    state, G writes the rule's symbol and moves the marker onto the cell the
    head lands on; F returns the rule's move so the marker comes back to 0.
    Every other window (no marker, marker off-centre, several markers, halting
    marker) is left alone with F = 0, so halting configurations are fixed
    points.
    """
    enc = ConfigEncoding.for_machine(machine)
    alphabet = enc.alphabet
    f_table, g_table = {}, {}
    for win in itertools.product(alphabet, repeat=3):
        f_table[win], g_table[win] = 0, win
        if not enc.admissible(win, -1):
            continue
        a, mid, b = win
        q, s = enc.unfuse(mid)
        q2, s2, eps = machine.transitions[q, s]
        if eps == 1:
            b2 = fused_symbol(q2, b)
            g_table[win] = (a, s2, b2)
        elif eps == -1:
            g_table[win] = (fused_symbol(q2, a), s2, b)
        else:
            g_table[win] = (a, fused_symbol(q2, s2), b)
        f_table[win] = eps
    gs = GeneralizedShift(alphabet, machine.blank, -1, 3, f_table, -1, 3, g_table)
    return gs, enc


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    window: int
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.injective


def is_bijective_on_encoding(gs: GeneralizedShift, enc: ConfigEncoding, window: int) -> InjectivityReport:
    """Exhaustive injectivity of ``apply`` on encoded active configurations of radius ``window``."""
    lo, hi = gs.window
    if window < max(-lo, hi, 1):
        raise WindowTooSmall(f"window {window} narrower than the dependence window {gs.window}")
    images = {}
    checked = 0
    for c in enc.configurations(window):
        img = apply(gs, enc.encode(c))
        checked += 1
        if img in images:
            return InjectivityReport(False, window, (images[img], c), checked)
        images[img] = c
    return InjectivityReport(True, window, None, checked)
