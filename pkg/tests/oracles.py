"""Independent reference implementations used to check the library.

These deliberately avoid the package's own tape and point types: tapes are
plain dicts indexed by absolute cell, the head moves instead of the tape, and
Cantor coordinates are summed as geometric series straight from the symbols.
"""
from fractions import Fraction
import math

MOVE = {"L": 1, "S": 0, "R": -1}


def parse_rules(text):
    """``{(q, s): (q2, s2, head_delta)}`` plus blank, initial and halting, from machine text."""
    rules, meta = {}, {}
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "trans":
            q, s, _, q2, s2, mv = parts[1:]
            rules[(q, s)] = (q2, s2, MOVE[mv])
        else:
            meta[parts[0]] = parts[1:]
    return rules, meta["blank"][0], meta["initial"][0], meta["halting"][0]


def naive_run(rules, blank, state, halting, cells, budget):
    """Head-moving simulator on an absolute dict tape.

    Returns ``(steps, state, relative_cells)`` on halting, ``None`` if the
    budget runs out.  A left shift of the tape is the head moving to +1.
    """
    tape = dict(cells)
    head = 0
    for n in range(budget + 1):
        if state == halting:
            rel = {i - head: s for i, s in tape.items() if s != blank}
            return n, state, rel
        if n == budget:
            return None
        q2, s2, d = rules[(state, tape.get(head, blank))]
        tape[head] = s2
        head += d
        state = q2
    return None


def naive_step(rules, blank, state, cells):
    """One step; returns ``(state, cells relative to the new head)``."""
    q2, s2, d = rules[(state, cells.get(0, blank))]
    tape = dict(cells)
    tape[0] = s2
    return q2, {i - d: s for i, s in tape.items() if s != blank}


def geometric_point(cells):
    """``(x, y)`` with ``x = sum 2 s_-i 3^-i`` and ``y = sum 2 s_i 3^-(i+1)`` over the 1-cells."""
    x = y = Fraction(0)
    for n, s in cells.items():
        if s != "1":
            continue
        if n >= 0:
            y += Fraction(2, 3 ** (n + 1))
        else:
            x += Fraction(2, 3 ** (-n))
    return x, y


def naive_shift(f_of, g_of, df, dg, default, cells):
    """Moore's three steps on a dict sequence.

    ``df`` and ``dg`` are lists of positions; ``f_of`` and ``g_of`` take the
    tuple of symbols read there.
    """
    read = lambda pos: tuple(cells.get(i, default) for i in pos)  # noqa: E731
    f = f_of(read(df))
    out = dict(cells)
    for i, s in zip(dg, g_of(read(dg))):
        out[i] = s
    return {i - f: s for i, s in out.items() if s != default}


def tau_closed(t, nu, m):
    return m / nu * (1 - math.exp(-nu * t))


def windowed_configs(states, alphabet, blank, radius):
    """All ``(state, cells)`` with support inside ``[-radius, radius]``."""
    import itertools

    for q in states:
        for syms in itertools.product(alphabet, repeat=2 * radius + 1):
            yield q, {i - radius: s for i, s in enumerate(syms) if s != blank}


def collisions(rules, states, alphabet, blank, radius):
    """Pairs of distinct windowed configurations with the same image."""
    seen, out = {}, []
    for q, cells in windowed_configs(states, alphabet, blank, radius):
        img = naive_step(rules, blank, q, cells)
        key = (img[0], tuple(sorted(img[1].items())))
        src = (q, tuple(sorted(cells.items())))
        if key in seen and seen[key] != src:
            out.append((seen[key], src))
        seen.setdefault(key, src)
    return out
