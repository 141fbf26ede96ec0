import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import MERGING, configurations, tapes
from oracles import geometric_point
from tmdyn.cantor import (
    BlockCode,
    CantorPoint,
    apply_block_map,
    audit_block_map,
    binarize,
    coords,
    decode_point,
    encode_point,
    to_block_map,
)
from tmdyn.corpus import CORPUS, entry
from tmdyn.errors import NoBlockMatches, NonBinaryAlphabet, NotInImage
from tmdyn.formats import parse_machine
from tmdyn.gshift import apply, compile_tm, identity_shift, pure_shift
from tmdyn.pipeline import audit, compile_machine, random_configurations, tiling_samples
from tmdyn.tm_core import Tape
from tmdyn.tm_transform import extend_halt_loop, restartify

bits = tapes(("0", "1"), "0", 8)


def points():
    return bits.map(encode_point)


WORKED = [
    (Tape(), (Fraction(0), Fraction(0))),
    (Tape.parse("1"), (Fraction(0), Fraction(2, 3))),
    (Tape.parse("1.11"), (Fraction(2, 3), Fraction(8, 9))),
]


@pytest.mark.parametrize("seq,expected", WORKED, ids=["zero", "origin", "three"])
def test_worked_points(seq, expected):
    assert coords(encode_point(seq)) == expected
    assert geometric_point(dict(seq.cells())) == expected


@given(bits)
def test_coords_match_series(t):
    x, y = coords(encode_point(t))
    assert (x, y) == geometric_point(dict(t.cells()))
    assert 0 <= x <= 1 and 0 <= y <= 1


@given(bits)
def test_decode_inverts(t):
    assert decode_point(encode_point(t)) == t


@given(bits, bits)
def test_encode_injective(a, b):
    assert (encode_point(a) == encode_point(b)) == (a == b)


def test_non_binary_rejected():
    with pytest.raises(NonBinaryAlphabet):
        encode_point(Tape.parse("2"))


@given(points())
def test_point_text_round_trip(p):
    assert CantorPoint.parse(p.to_string()) == p


def test_point_validation():
    with pytest.raises(ValueError):
        CantorPoint((1,), ())
    with pytest.raises(ValueError):
        CantorPoint((), (2, 0))
    assert CantorPoint.from_digits([2, 0], [0]) == CantorPoint((2,), ())


class TestBlockCode:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 9, 17])
    def test_width(self, n):
        syms = [str(i) for i in range(n)]
        code = BlockCode.for_alphabet(syms, "0")
        assert code.width == math.ceil(math.log2(n))
        assert code.bits("0") == ("0",) * code.width

    @given(tapes(("0", "a", "b", "c", "d"), "0", 5))
    def test_round_trip(self, t):
        code = BlockCode.for_alphabet(("0", "a", "b", "c", "d"), "0")
        assert code.decode(code.encode(t)) == t

    def test_non_codeword(self):
        code = BlockCode.for_alphabet(("0", "a", "b"), "0")
        assert code.decode_window(("1", "1")) is None
        with pytest.raises(NotInImage):
            code.symbol(("1", "1"))


class TestBinarize:
    def test_binary_is_identity(self):
        gs = pure_shift(("0", "1"), "0", 1)
        bgs, code = binarize(gs)
        assert bgs is gs and code.width == 1

    def test_shift_scales_with_width(self):
        alpha = ("0", "a", "b", "c")
        bgs, code = binarize(pure_shift(alpha, "0", 1))
        assert code.width == 2
        valid = [k for k in bgs.f_table if code.decode_window(k) is not None]
        assert valid and all(bgs.f_table[k] == 2 for k in valid)

    @given(st.data())
    def test_conjugacy_on_coded_sequences(self, data):
        m = data.draw(st.sampled_from(CORPUS)).machine
        gs, enc = compile_tm(m)
        bgs, code = binarize(gs)
        t = data.draw(tapes(enc.alphabet, m.blank, 3))
        assert code.decode(apply(bgs, code.encode(t))) == apply(gs, t)

    def test_incrementer_steps(self):
        m = entry("incrementer").machine
        gs, enc = compile_tm(m)
        bgs, code = binarize(gs)
        for c in random_configurations(m, 30, seed=11):
            s, b = enc.encode(c), code.encode(enc.encode(c))
            for _ in range(20):
                s, b = apply(gs, s), apply(bgs, b)
                assert code.encode(s) == b


class TestBlockMap:
    def test_identity_components_are_identity(self):
        bm = to_block_map(identity_shift(("0", "1"), "0"))
        assert len(bm.components) == 2
        assert all(c.affine() == (1, 0, 1, 0) for c in bm.components)
        p = encode_point(Tape.parse("1.101"))
        assert apply_block_map(bm, p) == p

    def test_pure_shift_example(self):
        bm = to_block_map(pure_shift(("0", "1"), "0", 1))
        p = encode_point(Tape.parse("1"))
        assert coords(p) == (0, Fraction(2, 3))
        out = apply_block_map(bm, p)
        assert out == encode_point(Tape.from_cells({-1: "1"}))
        assert coords(out) == (Fraction(2, 3), 0)

    @given(points())
    def test_baker_step_formula(self, p):
        bm = to_block_map(pure_shift(("0", "1"), "0", 1))
        x, y = coords(p)
        y0 = Fraction(p.y_digits[0] if p.y_digits else 0)
        assert coords(apply_block_map(bm, p)) == (x / 3 + y0 / 3, 3 * y - y0)

    @given(points(), st.integers(-3, 3))
    def test_pure_shift_commutes(self, p, n):
        gs = pure_shift(("0", "1"), "0", n)
        assert apply_block_map(to_block_map(gs), p) == encode_point(apply(gs, decode_point(p)))

    @given(st.data())
    def test_compiled_map_commutes(self, data):
        m = data.draw(st.sampled_from([e.machine for e in CORPUS if len(e.machine.alphabet) == 2]))
        c = compile_machine(m)
        p = data.draw(points())
        assert apply_block_map(c.blockmap, p) == encode_point(apply(c.binary, decode_point(p)))

    @given(st.data())
    def test_components_are_affine(self, data):
        c = compile_machine(entry("incrementer").machine)
        p = data.draw(points())
        comp = c.blockmap.component_for(p)
        ax, bx, ay, by = comp.affine()
        x, y = coords(p)
        assert ax * ay == 1
        assert coords(apply_block_map(c.blockmap, p)) == (ax * x + bx, ay * y + by)

    def test_needs_binary(self):
        with pytest.raises(NonBinaryAlphabet):
            to_block_map(identity_shift(("0", "a", "b"), "0"))

    def test_missing_block(self):
        bm = to_block_map(identity_shift(("0", "1"), "0")).restricted(lambda c: c.source == ("0",))
        with pytest.raises(NoBlockMatches):
            apply_block_map(bm, encode_point(Tape.parse("1")))
        assert not audit_block_map(bm).partition


class TestAudit:
    @pytest.mark.parametrize("e", CORPUS[:5], ids=lambda e: e.name)
    def test_restartified_blocks_disjoint(self, e):
        c = compile_machine(extend_halt_loop(restartify(e.machine)))
        a = audit(c)
        assert c.blockmap.bijective
        assert a.partition and a.measure_preserved and a.image_disjoint and a.tiling

    def test_collision_shows_overlap(self):
        c = compile_machine(parse_machine(MERGING))
        a = audit_block_map(c.blockmap)
        assert not c.blockmap.bijective
        assert a.partition and a.measure_preserved
        assert not a.image_disjoint and a.overlaps

    def test_tiling_detects_gaps(self):
        c = compile_machine(extend_halt_loop(entry("halter").machine))
        samples = tiling_samples(c.encoding, c.code, 2)
        assert audit_block_map(c.blockmap, samples).tiling
        drop = next(comp for comp in c.blockmap.components if comp.admissible)
        holed = c.blockmap.restricted(lambda comp: comp is not drop)
        assert audit_block_map(holed, samples).tiling is False


@given(st.data())
def test_encoded_configurations_commute(data):
    m = data.draw(st.sampled_from(CORPUS)).machine
    c = compile_machine(m)
    conf = data.draw(configurations(m, 3))
    p = encode_point(c.code.encode(c.encoding.encode(conf)))
    expect = encode_point(c.code.encode(apply(c.gshift, c.encoding.encode(conf))))
    assert apply_block_map(c.blockmap, p) == expect
