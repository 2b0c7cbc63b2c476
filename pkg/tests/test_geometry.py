import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pslab.constructions import two_thirds_line_construction
from pslab.errors import DegeneracyError, MalformedInputError, ParallelLinesError
from pslab.geometry import (
    RationalLine,
    format_lines,
    intersection,
    lines_to_polylines,
    parse_lines,
    signotope_from_lines,
    signotope_from_polylines,
)
from pslab.signotope import triples
from pslab.wiring import from_wiring, to_wiring

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=7)


@st.composite
def generic_lines(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    lines = draw(st.lists(st.builds(RationalLine, rationals, rationals), min_size=n, max_size=n,
                          unique_by=lambda ln: ln.slope))
    try:
        signotope_from_lines(lines)
    except DegeneracyError:
        assume(False)
    return lines


def test_examples():
    s, order = signotope_from_lines([RationalLine(-1, 0), RationalLine(0, 1), RationalLine(1, 0)])
    assert s.signs == "-" and order == [1, 2, 3]
    s, _ = signotope_from_lines([RationalLine(1, 0), RationalLine(0, -1), RationalLine(-1, 0)])
    assert s.signs == "+"


def test_relabeling_by_slope():
    lines = [RationalLine(3, 0), RationalLine(-2, 1), RationalLine(0, 5), RationalLine(1, -7)]
    _, order = signotope_from_lines(lines)
    assert order == [2, 3, 4, 1]


def test_errors():
    with pytest.raises(ParallelLinesError):
        signotope_from_lines([RationalLine(1, 0), RationalLine(1, 1), RationalLine(0, 0)])
    with pytest.raises(DegeneracyError):
        signotope_from_lines([RationalLine(-1, 0), RationalLine(0, 0), RationalLine(1, 0)])
    with pytest.raises(ParallelLinesError):
        intersection(RationalLine(2, 0), RationalLine(2, 3))


def test_intersection_exact():
    x, y = intersection(RationalLine(F(1, 3), 0), RationalLine(F(-1, 7), 1))
    assert (x, y) == (F(21, 10), F(7, 10))


def test_lines_file_roundtrip():
    lines = [RationalLine(F(-3, 2), F(5)), RationalLine(F(0), F(-1, 4))]
    text = format_lines(lines)
    assert text == "-3 2 5 1\n0 1 -1 4\n"
    assert parse_lines("# comment\n\n" + text) == lines
    for bad in ("1 2 3\n", "1 0 2 1\n", "1 2 x 1\n", "", "# only\n"):
        with pytest.raises(MalformedInputError):
            parse_lines(bad)


def test_two_thirds_instances_roundtrip():
    for k in range(2, 6):
        lines, _ = two_thirds_line_construction(k)
        s, _ = signotope_from_lines(lines)
        assert from_wiring(to_wiring(s)) == s


def test_polylines_agree_with_lines():
    rng = random.Random(5)
    checked = 0
    while checked < 20:
        lines = [RationalLine(F(rng.randint(-30, 30), rng.randint(1, 4)), F(rng.randint(-30, 30))) for _ in range(6)]
        try:
            s, order = signotope_from_lines(lines)
        except (DegeneracyError, ParallelLinesError):
            continue
        t, order2 = signotope_from_polylines(lines_to_polylines(lines))
        assert (t, order2) == (s, order)
        checked += 1


def test_polyline_rejects_double_crossing():
    a = [(-10, 0), (0, 0), (10, 0)]
    b = [(-10, -1), (-5, 1), (5, 1), (10, -1)]
    c = [(-10, 5), (10, -5)]
    with pytest.raises(DegeneracyError):
        signotope_from_polylines([a, b, c])


@settings(max_examples=60, deadline=None)
@given(generic_lines(), rationals)
def test_vertical_translation_invariance(lines, c):
    s, order = signotope_from_lines(lines)
    moved = [RationalLine(ln.slope, ln.intercept + c) for ln in lines]
    assert signotope_from_lines(moved) == (s, order)


@settings(max_examples=60, deadline=None)
@given(generic_lines())
def test_reflections(lines):
    s, _ = signotope_from_lines(lines)
    n = s.n
    # x -> -x reverses the labels and keeps every sign
    r, _ = signotope_from_lines([RationalLine(-ln.slope, ln.intercept) for ln in lines])
    assert all(r.sign(n + 1 - k, n + 1 - j, n + 1 - i) == s.sign(i, j, k) for i, j, k in triples(n))
    # y -> -y reverses the labels and negates every sign
    m, _ = signotope_from_lines([RationalLine(-ln.slope, -ln.intercept) for ln in lines])
    assert all(m.sign(n + 1 - k, n + 1 - j, n + 1 - i) != s.sign(i, j, k) for i, j, k in triples(n))


@settings(max_examples=40, deadline=None)
@given(generic_lines())
def test_line_signotopes_are_valid(lines):
    s, _ = signotope_from_lines(lines)
    assert s.valid
    assert from_wiring(to_wiring(s)) == s
