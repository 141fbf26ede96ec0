import json

import pytest
from hypothesis import given, strategies as st

from tmdyn.corpus import CORPUS, entry
from tmdyn.errors import FormatError, MachineError
from tmdyn.formats import (
    Artifact,
    Provenance,
    dump_artifact,
    dump_machine,
    load_artifact,
    machine_digest,
    machine_from_json,
    machine_to_json,
    parse_blockmap,
    parse_gshift,
    parse_machine,
    blockmap_text,
    gshift_text,
)
from tmdyn.gshift import compile_tm
from tmdyn.pipeline import compile_machine
from tmdyn.tm_transform import extend_halt_loop, restartify


@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.name)
def test_machine_text_round_trip(e):
    m = e.machine
    for x in (m, restartify(m), extend_halt_loop(restartify(m))):
        assert parse_machine(dump_machine(x)) == x
        assert parse_machine(machine_to_json(x)) == x
        assert machine_from_json(machine_to_json(x)) == x


def test_digest_ignores_comments_and_order():
    text = entry("incrementer").text
    lines = text.splitlines()
    shuffled = "\n".join(lines[:5] + lines[5:][::-1]) + "\n# note\n"
    assert machine_digest(parse_machine(text)) == machine_digest(parse_machine(shuffled))
    assert machine_digest(parse_machine(text)) != machine_digest(restartify(parse_machine(text)))


def test_errors_name_the_line():
    with pytest.raises(FormatError, match="line 1"):
        parse_machine("garbage\n")
    bad = entry("halter").text.replace("trans q0 1 -> h 1 S", "trans q0 1 -> zz 1 S")
    with pytest.raises(MachineError, match="q0 1 -> zz 1 S"):
        parse_machine(bad)
    with pytest.raises(FormatError):
        parse_machine(entry("halter").text.replace(" S\n", " X\n", 1))


def test_json_schema():
    doc = json.loads(machine_to_json(entry("halter").machine))
    assert doc["initial"] == "q0" and doc["halting"] == "h"
    with pytest.raises(FormatError):
        machine_from_json("{not json")


def test_provenance_chain():
    p = Provenance().extended("restartify", "sha256:aa").extended("compile_tm", "sha256:bb")
    assert Provenance.from_text(p.header() + "states q\n") == p
    assert p.as_list()[1] == {"transform": "compile_tm", "source": "sha256:bb"}
    with pytest.raises(FormatError):
        Provenance.from_text("# provenance: only-one-field\n")


def test_gshift_round_trip():
    m = restartify(entry("bounce").machine)
    gs, enc = compile_tm(m)
    gs2, enc2 = parse_gshift(gshift_text(gs, enc))
    assert gs2 == gs and enc2 == enc
    assert parse_gshift(gshift_text(gs))[1] is None


def test_blockmap_round_trip():
    c = compile_machine(entry("incrementer").machine)
    bm, code, enc = parse_blockmap(blockmap_text(c.blockmap, c.code, c.encoding))
    assert (code, enc) == (c.code, c.encoding)
    assert bm.components == c.blockmap.components and bm.bijective == c.blockmap.bijective
    with pytest.raises(FormatError):
        parse_blockmap("blockmap\ncomp 0 -> 0 0 a\n")


@pytest.mark.parametrize("kind", ["machine", "gshift", "blockmap"])
def test_artifact_round_trip(kind):
    m = extend_halt_loop(entry("halter").machine)
    prov = Provenance().extended("extend_halt_loop", "sha256:00")
    c = compile_machine(m)
    art = {
        "machine": Artifact("machine", m, machine_digest(m), prov),
        "gshift": Artifact("gshift", c.gshift, "", prov, c.encoding),
        "blockmap": Artifact("blockmap", c.blockmap, "", prov, c.encoding, c.code),
    }[kind]
    text = dump_artifact(art)
    back = load_artifact(text)
    assert back.kind == kind and back.provenance == prov
    assert dump_artifact(back) == text
    assert load_artifact(dump_artifact(back)).digest == back.digest


@given(st.text(alphabet="abc \n#->", max_size=40))
def test_parser_never_crashes_unexpectedly(text):
    try:
        load_artifact(text)
    except (FormatError, MachineError, ValueError):
        pass
