"""Square Cantor set representation of binary generalized shifts.

A binary sequence ``s`` is sent to the point of ``C x C`` whose ternary digits
are ``y_i = 2 s_i`` (i >= 0, ``y = sum y_i 3^-(i+1)``) and ``x_i = 2 s_{-i}``
(i >= 1, ``x = sum x_i 3^-i``).  All arithmetic here is on digit tuples or
``Fraction``; nothing is ever rounded.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoBlockMatches, NonBinaryAlphabet, NotInImage
from .gshift import GeneralizedShift
from .tm_core import Tape

BITS = ("0", "1")


@dataclass(frozen=True)
class BlockCode:
    """Fixed-width code ``A -> {0,1}^width``; the default symbol is all zeros."""

    symbols: tuple
    width: int

    @classmethod
    def for_alphabet(cls, alphabet, default) -> "BlockCode":
        rest = [a for a in alphabet if a != default]
        width = max(1, math.ceil(math.log2(len(rest) + 1)))
        return cls((default, *rest), width)

    def bits(self, symbol) -> tuple:
        i = self.symbols.index(symbol)
        return tuple(format(i, f"0{self.width}b"))

    def symbol(self, bits) -> str:
        i = int("".join(bits), 2)
        if i >= len(self.symbols):
            raise NotInImage(f"{''.join(bits)} is not a codeword")
        return self.symbols[i]

    def is_codeword(self, bits) -> bool:
        return int("".join(bits), 2) < len(self.symbols)

    def encode(self, seq: Tape) -> Tape:
        w = self.width
        cells = {}
        for n, s in seq.cells():
            for j, b in enumerate(self.bits(s)):
                cells[w * n + j] = b
        return Tape.from_cells(cells, "0")

    def decode(self, bseq: Tape) -> Tape:
        w = self.width
        sup = bseq.support()
        if sup is None:
            return Tape(blank=self.symbols[0])
        lo, hi = sup[0] // w, sup[1] // w
        syms = [self.symbol(bseq.window(w * n, w * n + w - 1)) for n in range(lo, hi + 1)]
        return Tape.from_symbols(syms, self.symbols[0], start=lo)

    def encode_window(self, window: tuple) -> tuple:
        return tuple(b for s in window for b in self.bits(s))

    def decode_window(self, bits: tuple):
        w = self.width
        blocks = [bits[i:i + w] for i in range(0, len(bits), w)]
        if not all(self.is_codeword(b) for b in blocks):
            return None
        return tuple(self.symbol(b) for b in blocks)


def _is_binary(gs: GeneralizedShift) -> bool:
    return set(gs.alphabet) == set(BITS) and gs.default == "0"


def binarize(gs: GeneralizedShift):
    """Conjugate ``gs`` to a shift over ``{0, 1}`` through a fixed-width block code.

    Returns ``(binary_shift, code)``.  Both tables of the binary shift depend
    on the dependence window of ``gs`` scaled by the code width; shifts scale
    by the width too.  Windows containing a non-codeword are left unchanged.
    """
    if _is_binary(gs):
        return gs, BlockCode(("0", "1"), 1)
    code = BlockCode.for_alphabet(gs.alphabet, gs.default)
    w = code.width
    lo, hi = gs.window
    f_off, g_off = gs.df_start - lo, gs.dg_start - lo
    length = w * (hi - lo + 1)
    f_table, g_table = {}, {}
    for bits in itertools.product(BITS, repeat=length):
        f_table[bits], g_table[bits] = 0, bits
        win = code.decode_window(bits)
        if win is None:
            continue
        f = gs.f_table[win[f_off:f_off + gs.df_len]]
        g = gs.g_table[win[g_off:g_off + gs.dg_len]]
        new = win[:g_off] + g + win[g_off + gs.dg_len:]
        f_table[bits] = f * w
        g_table[bits] = code.encode_window(new)
    bgs = GeneralizedShift(BITS, "0", w * lo, length, f_table, w * lo, length, g_table)
    return bgs, code


@dataclass(frozen=True)
class CantorPoint:
    """Point of the square Cantor set with finitely many non-zero ternary digits."""

    x_digits: tuple = ()
    y_digits: tuple = ()

    def __post_init__(self):
        for d in self.x_digits + self.y_digits:
            if d not in (0, 2):
                raise ValueError(f"digit {d!r} is not a Cantor digit")
        if (self.x_digits and self.x_digits[-1] == 0) or (self.y_digits and self.y_digits[-1] == 0):
            raise ValueError("point is not normalized (trailing zero digit)")

    @classmethod
    def from_digits(cls, x, y) -> "CantorPoint":
        return cls(_trim(tuple(x)), _trim(tuple(y)))

    def bit(self, n: int) -> str:
        """Symbol ``s_n`` of the encoded sequence."""
        digits, k = (self.y_digits, n) if n >= 0 else (self.x_digits, -n - 1)
        return "1" if k < len(digits) and digits[k] == 2 else "0"

    def to_string(self) -> str:
        x = "".join(map(str, self.x_digits)) or "0"
        y = "".join(map(str, self.y_digits)) or "0"
        return f"x=0.{x} y=0.{y}"

    @classmethod
    def parse(cls, text: str) -> "CantorPoint":
        parts = dict(p.split("=", 1) for p in text.split())
        x = parts["x"].removeprefix("0.")
        y = parts["y"].removeprefix("0.")
        return cls.from_digits([int(c) for c in x], [int(c) for c in y])


def _trim(digits: tuple) -> tuple:
    end = len(digits)
    while end and digits[end - 1] == 0:
        end -= 1
    return digits[:end]


def coords(p: CantorPoint) -> tuple:
    x = sum((Fraction(d, 3 ** k) for k, d in enumerate(p.x_digits, 1)), Fraction(0))
    y = sum((Fraction(d, 3 ** (k + 1)) for k, d in enumerate(p.y_digits)), Fraction(0))
    return x, y


def encode_point(seq: Tape) -> CantorPoint:
    if seq.blank != "0" or not seq.symbols() <= set(BITS):
        raise NonBinaryAlphabet("only sequences over {0, 1} with default 0 have a Cantor point")
    y = tuple(2 if s == "1" else 0 for s in seq.right)
    x = tuple(2 if s == "1" else 0 for s in seq.left)
    return CantorPoint(x, y)


def decode_point(p: CantorPoint) -> Tape:
    left = tuple("1" if d else "0" for d in p.x_digits)
    right = tuple("1" if d else "0" for d in p.y_digits)
    return Tape(left, right, "0")


@dataclass(frozen=True)
class Component:
    """One block: the cylinder ``source`` on positions ``lo..hi``.

    Its digits are rewritten to ``written`` and the point then takes
    ``shift`` Baker steps.  The image cylinder is ``written`` placed on
    positions ``lo - shift .. hi - shift``.
    """

    lo: int
    source: tuple
    written: tuple
    shift: int
    admissible: bool = True

    @property
    def hi(self) -> int:
        return self.lo + len(self.source) - 1

    def source_cylinder(self) -> dict:
        return {self.lo + i: b for i, b in enumerate(self.source)}

    def image_cylinder(self) -> dict:
        return {self.lo - self.shift + i: b for i, b in enumerate(self.written)}

    def affine(self) -> tuple:
        """Exact ``(ax, bx, ay, by)`` with ``x' = ax x + bx`` and ``y' = ay y + by`` on the block.

        ``ax = 3^-shift`` and ``ay = 3^shift``: a translation composed with a
        power of the Baker map, so ``ax * ay = 1``.  Only valid when the
        digits carried across the axis lie inside the window.
        """
        n = self.shift
        moved = range(0, n) if n > 0 else range(n, 0)
        if any(not (self.lo <= k <= self.hi) for k in moved):
            raise ValueError("shift moves digits from outside the window; block is not affine")
        cyl = self.source_cylinder()
        base = CantorPoint.from_digits(
            [2 if cyl.get(-i) == "1" else 0 for i in range(1, max(0, -self.lo) + 1)],
            [2 if cyl.get(i) == "1" else 0 for i in range(0, max(0, self.hi + 1))],
        )
        x0, y0 = coords(base)
        x1, y1 = coords(_apply_component(self, base))
        ay = Fraction(3) ** n
        ax = 1 / ay
        return ax, x1 - ax * x0, ay, y1 - ay * y0


def _apply_component(comp: Component, p: CantorPoint) -> CantorPoint:
    x, y = list(p.x_digits), list(p.y_digits)
    need_y = max(comp.hi + 1, comp.shift, 0)
    need_x = max(-comp.lo, -comp.shift, 0)
    x += [0] * (need_x - len(x))
    y += [0] * (need_y - len(y))
    for i, b in enumerate(comp.written):
        n = comp.lo + i
        d = 2 if b == "1" else 0
        if n >= 0:
            y[n] = d
        else:
            x[-n - 1] = d
    n = comp.shift
    if n > 0:
        x = y[:n][::-1] + x
        y = y[n:]
    elif n < 0:
        m = -n
        y = x[:m][::-1] + y
        x = x[m:]
    return CantorPoint.from_digits(x, y)


@dataclass(frozen=True, eq=False)
class BlockMap:
    lo: int
    hi: int
    components: tuple
    bijective: bool = False
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        index = {}
        for c in self.components:
            if c.lo != self.lo or c.hi != self.hi:
                raise ValueError("component window differs from the map window")
            index.setdefault(c.source, c)
        object.__setattr__(self, "_index", index)

    def component_for(self, p: CantorPoint) -> Component:
        bits = tuple(p.bit(n) for n in range(self.lo, self.hi + 1))
        comp = self._index.get(bits)
        if comp is None:
            raise NoBlockMatches(f"no block has source pattern {''.join(bits)}")
        return comp

    def restricted(self, keep) -> "BlockMap":
        return BlockMap(self.lo, self.hi, [c for c in self.components if keep(c)], self.bijective)


def to_block_map(gs: GeneralizedShift, admissible=None, bijective: bool = False) -> BlockMap:
    """One component per valuation of the dependence window of a binary shift.

    ``admissible(bits)`` marks the valuations that occur on encoded
    configurations; the disjointness audit only looks at those.
    """
    if not _is_binary(gs):
        raise NonBinaryAlphabet("to_block_map needs a shift over {0, 1}; binarize first")
    lo, hi = gs.window
    f_off, g_off = gs.df_start - lo, gs.dg_start - lo
    comps = []
    for bits in itertools.product(BITS, repeat=hi - lo + 1):
        f = gs.f_table[bits[f_off:f_off + gs.df_len]]
        g = gs.g_table[bits[g_off:g_off + gs.dg_len]]
        written = bits[:g_off] + g + bits[g_off + gs.dg_len:]
        ok = True if admissible is None else bool(admissible(bits))
        comps.append(Component(lo, bits, written, f, ok))
    return BlockMap(lo, hi, comps, bijective)


def apply_block_map(bm: BlockMap, p: CantorPoint) -> CantorPoint:
    return _apply_component(bm.component_for(p), p)


def _cylinders_meet(a: dict, b: dict) -> bool:
    return all(a[k] == b[k] for k in a.keys() & b.keys())


@dataclass
class BlockAudit:
    partition: bool
    measure_preserved: bool
    image_disjoint: bool
    overlaps: list = field(default_factory=list)
    tiling: bool | None = None
    components: int = 0
    admissible: int = 0

    @property
    def ok(self) -> bool:
        return self.partition and self.measure_preserved and self.image_disjoint and self.tiling is not False

    def as_dict(self) -> dict:
        return {
            "partition": self.partition,
            "measure_preserved": self.measure_preserved,
            "image_disjoint": self.image_disjoint,
            "tiling": self.tiling,
            "components": self.components,
            "admissible": self.admissible,
            "overlaps": [[list(a), list(b)] for a, b in self.overlaps],
        }


def audit_block_map(bm: BlockMap, samples=None, max_overlaps: int = 5) -> BlockAudit:
    """Combinatorial checks on the blocks.

    * partition: the source patterns are distinct and exhaust ``{0,1}^window``;
    * measure: every source and image cylinder fixes the same number of digits;
    * disjointness: admissible image cylinders pairwise disjoint;
    * tiling (only with ``samples``, binary sequences): each sample lies in
      exactly one admissible image cylinder.
    """
    length = bm.hi - bm.lo + 1
    sources = [c.source for c in bm.components]
    partition = len(set(sources)) == len(sources) == 2 ** length
    measure = all(len(c.source_cylinder()) == len(c.image_cylinder()) == length for c in bm.components)
    adm = [c for c in bm.components if c.admissible]
    overlaps = []
    by_shift = {}
    for c in adm:
        by_shift.setdefault(c.shift, []).append(c)
    for n, group in by_shift.items():
        seen = {}
        for c in group:
            if c.written in seen:
                overlaps.append((seen[c.written].source, c.source))
            seen[c.written] = c
    shifts = sorted(by_shift)
    for i, n in enumerate(shifts):
        for m in shifts[i + 1:]:
            for a in by_shift[n]:
                ia = a.image_cylinder()
                for b in by_shift[m]:
                    if _cylinders_meet(ia, b.image_cylinder()):
                        overlaps.append((a.source, b.source))
            if len(overlaps) >= max_overlaps:
                break
    tiling = None
    if samples is not None:
        images = [c.image_cylinder() for c in adm]
        tiling = all(
            sum(all(seq[k] == v for k, v in cyl.items()) for cyl in images) == 1 for seq in samples
        )
    return BlockAudit(partition, measure, not overlaps, overlaps[:max_overlaps], tiling,
                      len(bm.components), len(adm))
