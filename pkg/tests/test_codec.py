import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeckmod import codec
from zeckmod.codec import CodewordError, Edit
from zeckmod.module_space import Element, parse_element, preset

from conftest import PRESETS

TABLE1 = ["11", "011", "0011", "1011", "00011", "10011", "01011", "000011", "100011", "010011", "001011", "101011"]

# (a, b) -> codeword for a + b over the Gaussian preset
TABLE2 = {
    (0, 0): "111",
    (1, 0): "0111",
    (2, 0): "0000111",
    (-1, 0): "010111",
    (-2, 0): "110010111",
    (0, 1): "00111",
    (1, 1): "10111",
    (2, 1): "0100111",
    (-1, 1): "10100111",
    (0, -1): "100111",
    (-1, -1): "000111",
    (0, 2): "10000111",
    (-1, 2): "00000111",
    (-1, -2): "110000111",
}


def role_of_positions(words, k):
    roles = []
    for w in words:
        if len(w) == k:
            roles += ["term"] * k
        else:
            roles += ["body"] * (len(w) - k - 1) + ["guard"] + ["term"] * k
    return roles


def test_table1():
    assert [codec.classic_encode(n) for n in range(1, 13)] == TABLE1
    assert [codec.classic_decode(w) for w in TABLE1] == list(range(1, 13))


def test_classic_round_trip():
    for n in range(1, 10**4 + 1):
        w = codec.classic_encode(n)
        assert w.endswith("11") and "11" not in w[:-1]
        assert codec.classic_decode(w) == n


@pytest.mark.parametrize("w", ["", "1", "0110", "11011", "0111"])
def test_classic_decode_rejects(w):
    with pytest.raises(CodewordError):
        codec.classic_decode(w)


def test_classic_rejects_nonpositive():
    with pytest.raises(ValueError):
        codec.classic_encode(0)


@pytest.mark.parametrize("ab, word", sorted(TABLE2.items()))
def test_table2_cells(gaussian, ab, word):
    spec, seq = gaussian
    m = Element(ab)
    assert codec.encode(seq, m) == word
    assert codec.decode(seq, word) == m


@pytest.mark.parametrize("ab", [(2, 2), (1, -2)])
def test_table2_inconsistent_cells_round_trip(gaussian, ab):
    spec, seq = gaussian
    w = codec.encode(seq, Element(ab))
    assert codec.decode(seq, w) == Element(ab)
    assert w != "110000111"


def test_gaussian_paper_example(gaussian):
    spec, seq = gaussian
    m = parse_element(spec, "-2+3i")
    assert codec.encode(seq, m) == "10110000111"
    assert codec.decode(seq, "10110000111") == m


def test_integers_minus_one(integers):
    spec, seq = integers
    assert codec.encode(seq, Element((-1,))) == "0011"
    assert codec.decode(seq, "0011") == Element((-1,))


def test_e8_paper_string_decodes_to_its_own_value():
    spec, seq = preset("e8")
    w = "010000000110111111111"
    assert codec.decode(seq, w) == Element((1, 2, 2, 0, 0, 0, 0, 0))
    assert codec.encode(seq, Element((1, 2, 2, 0, 0, 0, 0, 0))) == w


@pytest.mark.parametrize(
    "w, why",
    [
        ("0101", "does not end"),
        ("1111", "longer than k"),
        ("1110111", "inside"),
        ("01 1x1", None),
    ],
)
def test_decode_rejects(gaussian, w, why):
    _, seq = gaussian
    with pytest.raises(ValueError, match=why):
        codec.decode(seq, w)


def test_decode_ignores_whitespace(gaussian):
    _, seq = gaussian
    assert codec.decode(seq, " 1011 0000\n111") == Element((-2, 3))


@pytest.mark.parametrize("name", PRESETS)
def test_round_trip_and_shape(name):
    spec, seq = preset(name)
    k = seq.order
    shape = re.compile(rf"^(?:[01]*0)?1{{{k}}}$")
    rng = random.Random(name)
    for _ in range(500 if name != "e8" else 150):
        m = Element(tuple(rng.randint(-50, 50) for _ in range(spec.rank)))
        w = codec.encode(seq, m)
        assert shape.match(w)
        assert "1" * k not in w[:-k]
        assert codec.decode(seq, w) == m
        assert codec.encode(seq, m) == w


@pytest.mark.parametrize("name", PRESETS)
def test_framing_shuffled_concatenation(name):
    spec, seq = preset(name)
    rng = random.Random(name + "frames")
    ms = [Element(tuple(rng.randint(-50, 50) for _ in range(spec.rank))) for _ in range(200)]
    ms[5] = spec.zero()
    for _ in range(3):
        rng.shuffle(ms)
        got, trailing = codec.decode_stream(seq, codec.encode_stream(seq, ms))
        assert got == ms and trailing == ""


def test_stream_examples(gaussian):
    spec, seq = gaussian
    assert codec.classic_decode_stream("01011111011") == ([7, 1, 4], "")
    w = "10110000111" + "0111" + "111"
    assert codec.decode_stream(seq, w) == ([Element((-2, 3)), Element((1, 0)), spec.zero()], "")
    assert codec.decode_stream(seq, "") == ([], "")
    assert codec.decode_stream(seq, "0111010") == ([Element((1, 0))], "010")


def test_split_frames():
    assert codec.split_frames("0111" + "111" + "0", 3) == ([(0, 4), (4, 7)], "0")
    assert codec.split_frames("11111", 3) == ([(0, 3)], "11")


def test_bad_frame_is_skipped(gaussian):
    _, seq = gaussian
    res = codec.decode_frames("1111" + "0111", 3, lambda f: codec.decode(seq, f))
    # "111" | "10111": the first frame decodes to 0, the second to 1+i
    assert res.messages == [Element((0, 0)), Element((1, 1))]
    res = codec.decode_frames("0111", 3, lambda f: (_ for _ in ()).throw(CodewordError("x")))
    assert res.messages == [] and res.skipped == [(0, 4, "x")]


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="01", max_size=70), st.integers(0, 40))
def test_pack_round_trip(bits, k):
    data = codec.pack(bits, k)
    assert data[:4] == b"FZC1"
    assert len(data) == 13 + (len(bits) + 7) // 8
    assert codec.unpack(data) == (bits, k)


def test_pack_layout():
    assert codec.pack("101", 3) == b"FZC1" + bytes([3]) + (3).to_bytes(8, "big") + bytes([0b10100000])


@pytest.mark.parametrize("data", [b"", b"XXXX" + bytes(9), codec.pack("1" * 9, 3)[:-1]])
def test_unpack_rejects(data):
    with pytest.raises(ValueError):
        codec.unpack(data)


def test_message_files(gaussian):
    spec, _ = gaussian
    text = "# header\n-2+3i\n\n1  # one\n0\n"
    ms = codec.read_messages(spec, text)
    assert ms == [Element((-2, 3)), Element((1, 0)), Element((0, 0))]
    assert codec.write_messages(spec, ms) == "-2+3i\n1\n0\n"
    with pytest.raises(ValueError, match="line 2"):
        codec.read_messages(spec, "1\n1+q\n")


@pytest.mark.parametrize(
    "w, edits, out",
    [
        ("111", [Edit("delete", 0)], "11"),
        ("0111", [Edit("flip", 0)], "1111"),
        ("1111", [Edit("insert", 2, "0")], "11011"),
        ("0000", [Edit("insert", 4, "1"), Edit("delete", 0)], "0001"),
    ],
)
def test_corrupt(w, edits, out):
    assert codec.corrupt(w, edits) == out


def test_corrupt_out_of_range():
    with pytest.raises(IndexError):
        codec.corrupt("01", [Edit("delete", 2)])
    with pytest.raises(ValueError):
        Edit("smudge", 0)


def test_edit_distance():
    assert codec.edit_distance([], [1, 2]) == 2
    assert codec.edit_distance([1, 2, 3], [1, 3]) == 1
    assert codec.edit_distance([1, 2, 3], [1, 9, 3]) == 1
    assert codec.edit_distance([1, 2], [2, 1]) == 2


def test_parse_edit_counts():
    assert codec.parse_edit_counts("delete:1,flip:2") == {"delete": 1, "flip": 2}
    assert codec.parse_edit_counts("") == {}
    with pytest.raises(ValueError):
        codec.parse_edit_counts("smudge:1")
    with pytest.raises(ValueError):
        codec.parse_edit_counts("flip:x")


def test_channel_no_edits(gaussian):
    spec, seq = gaussian
    ms = codec.random_elements(random.Random(1), spec, 20)
    rep = codec.channel_trial(seq, ms, [])
    assert rep.affected == 0 and rep.received == ms and rep.suffix_ok


def test_guard_flip_counterexample(gaussian):
    """Flipping the guard of 1+i lets its terminator run on into the next
    codeword, which splits off a spurious zero message."""
    spec, seq = gaussian
    ms = [parse_element(spec, "1+i"), parse_element(spec, "-2")]
    assert codec.encode_stream(seq, ms) == "10111" + "110010111"
    rep = codec.channel_trial(seq, ms, [Edit("flip", 1)])
    assert codec.corrupt("10111110010111", [Edit("flip", 1)]) == "11111110010111"
    assert rep.received == [spec.zero(), spec.zero(), parse_element(spec, "2+2i")]
    assert rep.affected == 3


def single_edit_trials(seq, spec, n, seed):
    for t in range(n):
        rng = random.Random(f"{seed}:{t}")
        ms = codec.random_elements(rng, spec, 20)
        words = [codec.encode(seq, m) for m in ms]
        length = sum(map(len, words))
        kind = rng.choice(["insert", "delete", "flip"])
        pos = rng.randint(0, length) if kind == "insert" else rng.randrange(length)
        e = Edit(kind, pos, rng.choice("01"))
        yield words, e, codec.channel_trial(seq, ms, [e])


def test_body_edits_stay_local(gaussian):
    spec, seq = gaussian
    seen = 0
    for words, e, rep in single_edit_trials(seq, spec, 400, "body"):
        roles = role_of_positions(words, seq.order)
        if e.pos < len(roles) and roles[e.pos] == "body":
            assert rep.affected <= 2
            seen += 1
    assert seen > 100


def test_single_edit_damage_is_bounded(gaussian):
    spec, seq = gaussian
    for _, _, rep in single_edit_trials(seq, spec, 300, "any"):
        assert rep.affected <= 3
        assert rep.suffix_ok


def test_random_edits_are_in_range():
    rng = random.Random(0)
    for _ in range(200):
        edits = codec.random_edits(rng, 30, {"delete": 2, "flip": 1, "insert": 2})
        assert len(codec.corrupt("01" * 15, edits)) == 30
