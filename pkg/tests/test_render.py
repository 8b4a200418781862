import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidc.braid import BraidWord, normalize, text_to_word
from braidc.render import build_diagram, diagram, parse_ascii

W_H = text_to_word("s1^2 s2^2 s1^-2 s2^-2 s1^2 s2^4 s1^-2 s2^2 s1^2 s2^-2 s1^2 s2^-2 s1^4")
SVG = "{http://www.w3.org/2000/svg}"

words = st.lists(st.tuples(st.sampled_from((1, 2)), st.integers(-12, 12)), max_size=10).map(
    lambda fs: normalize(BraidWord(tuple(fs))))
weaves = st.lists(st.sampled_from((-4, -2, 2, 4)), max_size=8).flatmap(
    lambda es: st.sampled_from((1, 2)).map(
        lambda g: BraidWord(tuple((g if k % 2 == 0 else 3 - g, e) for k, e in enumerate(es)))))


def test_empty_word_is_three_straight_lines():
    lines = diagram(BraidWord()).splitlines()
    strands = [l for l in lines if l.strip()]
    assert len(strands) == 3
    assert all(set(l.split()[1]) == {"-"} for l in strands)
    assert [l.split()[0] for l in strands] == ["a", "b", "c"]


def test_single_pair_weave():
    text = diagram(text_to_word("s1^2"))
    lines = text.splitlines()
    assert lines[1].count("x") == 2
    assert "x" not in lines[3]
    assert set(lines[4].split()[1]) == {"-"}
    d = build_diagram(text_to_word("s1^2"))
    assert d.strands[2] == (2, 2, 2)
    assert d.strands[0] == (0, 1, 0) and d.strands[1] == (1, 0, 1)


def test_orientation_glyphs():
    pos, neg = diagram(text_to_word("s1")).splitlines(), diagram(text_to_word("s1^-1")).splitlines()
    # positive: the upward strand (ending top-right) is broken
    assert pos[0][2:7] == "-\\  -" and pos[2][2:7] == "-/ \\-"
    assert neg[0][2:7] == "-\\ /-" and neg[2][2:7] == "-/  -"


def test_deterministic_bytes():
    assert diagram(W_H) == diagram(W_H)
    assert diagram(W_H, "svg") == diagram(W_H, "svg")


def test_paper_weave_has_thirty_crossings():
    text = diagram(W_H)
    assert sum(l.count("x") for l in text.splitlines()) == 30
    assert len(build_diagram(W_H).crossings) == W_H.length == 30
    assert build_diagram(W_H).mobile_strands() == {1}


@given(words)
def test_ascii_round_trip(w):
    assert parse_ascii(diagram(w)) == w


@given(words)
def test_crossing_count(w):
    assert len(build_diagram(w).crossings) == w.length


@given(weaves)
def test_weave_has_one_mobile_strand(w):
    d = build_diagram(w)
    if d.crossings:
        assert 1 in d.mobile_strands()
    if {g for g, _ in w} == {1, 2}:
        assert d.mobile_strands() == {1}
    assert all(t[-1] == t[0] for t in d.strands)


def test_width_linear():
    widths = [len(diagram(BraidWord(((1, k),))).splitlines()[0]) for k in range(1, 8)]
    steps = {b - a for a, b in zip(widths, widths[1:])}
    assert steps == {4}


def test_svg_valid_and_restricted():
    doc = diagram(W_H, "svg")
    root = ET.fromstring(doc.encode())
    assert root.tag == f"{SVG}svg"
    assert root.get("height") == "300"
    tags = {el.tag for el in root.iter()} - {f"{SVG}svg"}
    assert tags <= {f"{SVG}line", f"{SVG}path"}
    ys = {el.get("y1") for el in root.iter(f"{SVG}line")}
    assert ys <= {"50", "150", "250"}
    assert len(root.findall(f"{SVG}path")) == 30  # one broken under-strand per crossing


def test_svg_empty_word():
    root = ET.fromstring(diagram(BraidWord(), "svg").encode())
    lines = root.findall(f"{SVG}line")
    assert {l.get("y1") for l in lines} == {l.get("y2") for l in lines} == {"50", "150", "250"}


def test_unknown_format():
    with pytest.raises(ValueError):
        diagram(BraidWord(), "png")
