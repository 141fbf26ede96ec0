"""Text and JSON serialization for machines, plus artifact provenance.

Machine text format::

    # provenance: <transform> <source-digest>     (optional, repeatable)
    states q0 a h
    alphabet 0 1
    blank 0
    initial q0
    halting h
    looping                                        (only for halt-loop machines)
    trans q0 1 -> a 1 L

Moves are ``L`` (left shift, eps=+1), ``S`` (eps=0) and ``R`` (eps=-1).
Digests are sha256 over the canonical serialization without comments, so a
file re-written by :func:`dump_machine` keeps its digest.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .cantor import BlockCode, BlockMap, Component
from .errors import FormatError
from .gshift import ConfigEncoding, GeneralizedShift
from .tm_core import MOVE_NAMES, MOVES, TuringMachine

PROVENANCE_TAG = "# provenance:"


@dataclass
class Provenance:
    """Append-only chain of ``(transform, source digest)`` pairs."""

    chain: list = field(default_factory=list)

    def extended(self, transform: str, source_digest: str) -> "Provenance":
        return Provenance(self.chain + [(transform, source_digest)])

    def header(self) -> str:
        return "".join(f"{PROVENANCE_TAG} {t} {d}\n" for t, d in self.chain)

    def as_list(self) -> list:
        return [{"transform": t, "source": d} for t, d in self.chain]

    @classmethod
    def from_text(cls, text: str) -> "Provenance":
        chain = []
        for line in text.splitlines():
            if line.startswith(PROVENANCE_TAG):
                parts = line[len(PROVENANCE_TAG):].split()
                if len(parts) != 2:
                    raise FormatError(f"bad provenance line: {line!r}")
                chain.append(tuple(parts))
        return cls(chain)


def digest(canonical: str) -> str:
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def strip_comments(text: str) -> str:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return "\n".join(lines) + "\n"


def machine_text(machine: TuringMachine) -> str:
    lines = [
        "states " + " ".join(machine.states),
        "alphabet " + " ".join(machine.alphabet),
        f"blank {machine.blank}",
        f"initial {machine.initial}",
        f"halting {machine.halting}",
    ]
    if machine.looping:
        lines.append("looping")
    for (q, s), (q2, s2, eps) in machine.sorted_rules():
        lines.append(f"trans {q} {s} -> {q2} {s2} {MOVE_NAMES[eps]}")
    return "\n".join(lines) + "\n"


def machine_digest(machine: TuringMachine) -> str:
    return digest(machine_text(machine))


def dump_machine(machine: TuringMachine, provenance: Provenance | None = None) -> str:
    return (provenance.header() if provenance else "") + machine_text(machine)


def parse_machine(text: str, name: str = "") -> TuringMachine:
    """Parse the text format, or the JSON mirror when the document starts with ``{``."""
    if text.lstrip().startswith("{"):
        return machine_from_json(text, name)
    fields, rules, looping = {}, {}, False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head in ("states", "alphabet"):
            fields[head] = rest
        elif head in ("blank", "initial", "halting"):
            if len(rest) != 1:
                raise FormatError(f"line {lineno}: '{head}' takes one value")
            fields[head] = rest[0]
        elif head == "looping":
            looping = True
        elif head == "trans":
            if len(rest) != 6 or rest[2] != "->" or rest[5] not in MOVES:
                raise FormatError(f"line {lineno}: expected 'trans q s -> q2 s2 L|S|R', got {raw!r}")
            q, s, _, q2, s2, mv = rest
            if (q, s) in rules:
                raise FormatError(f"line {lineno}: duplicate rule for ({q}, {s})")
            rules[q, s] = (q2, s2, MOVES[mv])
        else:
            raise FormatError(f"line {lineno}: unknown keyword {head!r}")
    return _build(fields, rules, looping, name)


def _build(fields, rules, looping, name):
    missing = [k for k in ("states", "alphabet", "blank", "initial", "halting") if k not in fields]
    if missing:
        raise FormatError(f"missing section(s): {', '.join(missing)}")
    return TuringMachine(
        states=fields["states"],
        alphabet=fields["alphabet"],
        blank=fields["blank"],
        initial=fields["initial"],
        halting=fields["halting"],
        transitions=rules,
        looping=looping,
        name=name,
    )


def machine_to_json(machine: TuringMachine) -> str:
    doc = {
        "states": list(machine.states),
        "alphabet": list(machine.alphabet),
        "blank": machine.blank,
        "initial": machine.initial,
        "halting": machine.halting,
        "looping": machine.looping,
        "transitions": [[q, s, q2, s2, MOVE_NAMES[e]] for (q, s), (q2, s2, e) in machine.sorted_rules()],
    }
    return json.dumps(doc, indent=2) + "\n"


def machine_from_json(text: str, name: str = "") -> TuringMachine:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    rules = {}
    for row in doc.get("transitions", []):
        if len(row) != 5 or row[4] not in MOVES:
            raise FormatError(f"bad transition row {row!r}")
        q, s, q2, s2, mv = row
        rules[q, s] = (q2, s2, MOVES[mv])
    return _build(doc, rules, bool(doc.get("looping", False)), name)


def _encoding_lines(enc) -> list:
    return [
        "enc states " + " ".join(enc.states),
        "enc sigma " + " ".join(enc.sigma),
        f"enc blank {enc.blank}",
        f"enc initial {enc.initial}",
        f"enc halting {enc.halting}",
        f"enc looping {int(enc.looping)}",
    ]


def _parse_encoding(fields: dict):
    if not fields:
        return None
    try:
        return ConfigEncoding(
            tuple(fields["states"]), tuple(fields["sigma"]), fields["blank"][0],
            fields["initial"][0], fields["halting"][0], fields["looping"][0] == "1",
        )
    except KeyError as exc:
        raise FormatError(f"incomplete encoding section: missing {exc}") from exc


def gshift_text(gs, enc=None) -> str:
    """Canonical text of a generalized shift; table rows in lexicographic domain order."""
    lines = [
        "gshift",
        "alphabet " + " ".join(gs.alphabet),
        f"default {gs.default}",
        f"df {gs.df_start} {gs.df_len}",
        f"dg {gs.dg_start} {gs.dg_len}",
    ]
    if enc is not None:
        lines += _encoding_lines(enc)
    for key in gs.domain(gs.df_len):
        lines.append(f"f {' '.join(key)} -> {gs.f_table[key]}")
    for key in gs.domain(gs.dg_len):
        lines.append(f"g {' '.join(key)} -> {' '.join(gs.g_table[key])}")
    return "\n".join(lines) + "\n"


def parse_gshift(text: str):
    """Returns ``(gs, encoding or None)``."""
    head, enc_fields, f_table, g_table = {}, {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "gshift":
            continue
        key, *rest = line.split()
        if key in ("alphabet", "default", "df", "dg"):
            head[key] = rest
        elif key == "enc":
            enc_fields[rest[0]] = rest[1:]
        elif key in ("f", "g"):
            if "->" not in rest:
                raise FormatError(f"line {lineno}: missing '->'")
            i = rest.index("->")
            dom, img = tuple(rest[:i]), rest[i + 1:]
            if key == "f":
                f_table[dom] = int(img[0])
            else:
                g_table[dom] = tuple(img)
        else:
            raise FormatError(f"line {lineno}: unknown keyword {key!r}")
    try:
        gs = GeneralizedShift(
            tuple(head["alphabet"]), head["default"][0], int(head["df"][0]), int(head["df"][1]),
            f_table, int(head["dg"][0]), int(head["dg"][1]), g_table,
        )
    except KeyError as exc:
        raise FormatError(f"missing section {exc}") from exc
    return gs, _parse_encoding(enc_fields)


def blockmap_text(bm, code=None, enc=None) -> str:
    lines = ["blockmap", f"window {bm.lo} {bm.hi}", f"bijective {int(bm.bijective)}"]
    if code is not None:
        lines.append(f"code {code.width} " + " ".join(code.symbols))
    if enc is not None:
        lines += _encoding_lines(enc)
    for c in bm.components:
        flag = "a" if c.admissible else "-"
        lines.append(f"comp {''.join(c.source)} -> {''.join(c.written)} {c.shift} {flag}")
    return "\n".join(lines) + "\n"


def parse_blockmap(text: str):
    """Returns ``(block_map, code or None, encoding or None)``."""
    window, bijective, code, enc_fields, comps = None, False, None, {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "blockmap":
            continue
        key, *rest = line.split()
        if key == "window":
            window = int(rest[0]), int(rest[1])
        elif key == "bijective":
            bijective = rest[0] == "1"
        elif key == "code":
            code = BlockCode(tuple(rest[1:]), int(rest[0]))
        elif key == "enc":
            enc_fields[rest[0]] = rest[1:]
        elif key == "comp":
            if window is None or len(rest) != 5 or rest[1] != "->":
                raise FormatError(f"line {lineno}: bad component line")
            comps.append(Component(window[0], tuple(rest[0]), tuple(rest[2]), int(rest[3]), rest[4] == "a"))
        else:
            raise FormatError(f"line {lineno}: unknown keyword {key!r}")
    if window is None:
        raise FormatError("missing window line")
    return BlockMap(window[0], window[1], comps, bijective), code, _parse_encoding(enc_fields)


@dataclass
class Artifact:
    """A loaded pipeline file: payload plus the context needed to feed it inputs."""

    kind: str
    payload: object
    digest: str
    provenance: Provenance
    encoding: object = None
    code: object = None


def artifact_kind(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("{"):
            return "machine"
        word = s.split()[0]
        return word if word in ("gshift", "blockmap") else "machine"
    raise FormatError("empty document")


def load_artifact(text: str, name: str = "") -> Artifact:
    kind = artifact_kind(text)
    prov = Provenance.from_text(text)
    if kind == "machine":
        m = parse_machine(text, name)
        return Artifact(kind, m, machine_digest(m), prov)
    if kind == "gshift":
        gs, enc = parse_gshift(text)
        return Artifact(kind, gs, digest(gshift_text(gs, enc)), prov, enc)
    bm, code, enc = parse_blockmap(text)
    return Artifact(kind, bm, digest(blockmap_text(bm, code, enc)), prov, enc, code)


def dump_artifact(art: Artifact) -> str:
    if art.kind == "machine":
        body = machine_text(art.payload)
    elif art.kind == "gshift":
        body = gshift_text(art.payload, art.encoding)
    else:
        body = blockmap_text(art.payload, art.code, art.encoding)
    return art.provenance.header() + body
