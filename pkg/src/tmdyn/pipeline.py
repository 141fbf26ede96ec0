"""End-to-end compilation: machine -> generalized shift -> binary shift -> block map."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cantor import BlockCode, BlockMap, apply_block_map, audit_block_map, binarize, encode_point, to_block_map
from .gshift import ConfigEncoding, GeneralizedShift, apply, compile_tm, is_bijective_on_encoding
from .tm_core import Configuration, HaltedSignal, Tape, TuringMachine, step


@dataclass
class Compiled:
    machine: TuringMachine
    gshift: GeneralizedShift
    encoding: ConfigEncoding
    binary: GeneralizedShift | None = None
    code: BlockCode | None = None
    blockmap: BlockMap | None = None


def admissible_bits(enc: ConfigEncoding, code: BlockCode, lo: int):
    """Predicate on binary windows starting at symbol position ``lo``."""

    def check(bits):
        win = code.decode_window(bits)
        return win is not None and enc.admissible(win, lo)

    return check


def compile_machine(machine: TuringMachine, blockmap: bool = True, bijective_window: int = 2) -> Compiled:
    gs, enc = compile_tm(machine)
    out = Compiled(machine, gs, enc)
    if blockmap:
        out.binary, out.code = binarize(gs)
        lo = gs.window[0]
        bij = bool(is_bijective_on_encoding(gs, enc, bijective_window))
        out.blockmap = to_block_map(out.binary, admissible_bits(enc, out.code, lo), bijective=bij)
    return out


def blockmap_from_gshift(gs: GeneralizedShift, enc: ConfigEncoding | None, bijective_window: int = 2):
    bgs, code = binarize(gs)
    pred = admissible_bits(enc, code, gs.window[0]) if enc is not None else None
    bij = bool(is_bijective_on_encoding(gs, enc, bijective_window)) if enc is not None else False
    return to_block_map(bgs, pred, bijective=bij), code


def tiling_samples(enc: ConfigEncoding, code: BlockCode, radius: int = 2) -> list:
    """Binary images of every encoded configuration of the given radius."""
    return [code.encode(enc.encode(c)) for c in enc.configurations(radius, active_only=False)]


def audit(c: Compiled, radius: int = 2):
    samples = tiling_samples(c.encoding, c.code, radius) if c.machine.looping else None
    return audit_block_map(c.blockmap, samples)


def random_configurations(machine: TuringMachine, count: int, seed: int, radius: int = 4) -> list:
    rng = random.Random(seed)
    states = list(machine.active_states())
    syms = machine.alphabet
    out = []
    for _ in range(count):
        cells = {n: rng.choice(syms) for n in range(-radius, radius + 1)}
        out.append(Configuration(rng.choice(states), Tape.from_cells(cells, machine.blank)))
    return out


@dataclass
class ConjugacyResult:
    checked: int
    mismatch: tuple | None = None

    def __bool__(self):
        return self.mismatch is None


def conjugacy_selftest(c: Compiled, configs, steps: int) -> ConjugacyResult:
    """Step each configuration ``steps`` times through every representation, comparing exactly."""
    checked = 0
    for start in configs:
        conf = start
        seq = c.encoding.encode(conf)
        point = encode_point(c.code.encode(seq)) if c.blockmap is not None else None
        for k in range(1, steps + 1):
            nxt = step(c.machine, conf)
            seq = apply(c.gshift, seq)
            if isinstance(nxt, HaltedSignal):
                if seq != c.encoding.encode(conf):
                    return ConjugacyResult(checked, (start, k, "halting configuration not fixed"))
            else:
                conf = nxt
                if c.encoding.encode(conf) != seq:
                    return ConjugacyResult(checked, (start, k, "machine vs shift"))
            if point is not None:
                point = apply_block_map(c.blockmap, point)
                if point != encode_point(c.code.encode(seq)):
                    return ConjugacyResult(checked, (start, k, "shift vs block map"))
            checked += 1
    return ConjugacyResult(checked)

