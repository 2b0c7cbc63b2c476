import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pslab.coloring import (
    Coloring,
    bichromatic_tri_or_quad,
    bichromatic_triangle,
    block_size,
    block_witness,
    check_bichromatic_triangles,
    check_few_red_lines,
    check_block_colorings,
    check_triangle_or_quadrangle,
    coloring_masks,
    extremal_lines,
    extremal_signotopes,
    face_line_cycle,
    is_block_bicolored,
    quadrangle_pattern,
    block_coloring_failures,
)
from pslab.errors import ColoringError, MalformedInputError
from pslab.signotope import cyclic, flip_path
from pslab.wiring import quadrangles, to_wiring

from _util import all_sigs, signotopes


def all_colorings(n):
    for bits in itertools.product("RB", repeat=n):
        c = Coloring("".join(bits))
        if c.bicolored:
            yield c


def test_coloring_basics():
    c = Coloring("RBRB")
    assert c.n == 4 and c.reds == {1, 3} and c.blues == {2, 4}
    assert c.bicolored and not Coloring("RRR").bicolored
    assert Coloring.from_mask(4, 0b0101) == c
    assert Coloring.from_sets(4, [1, 3]) == c
    assert Coloring.parse("RBRB\n") == c
    with pytest.raises(MalformedInputError):
        Coloring.parse("RXB")


def test_bichromatic_triangle_examples():
    f = bichromatic_triangle(cyclic(3), Coloring("RRB"))
    assert f.support == {1, 2, 3}
    with pytest.raises(ColoringError):
        bichromatic_triangle(cyclic(3), Coloring("RRR"))
    with pytest.raises(ColoringError):
        bichromatic_triangle(cyclic(3), Coloring("RB"))


def test_cyclic_always_has_bichromatic_triangle():
    for n in range(3, 9):
        w = to_wiring(cyclic(n))
        for c in all_colorings(n):
            f = bichromatic_triangle(w, c)
            assert f is not None and len({c.color(x) for x in f.support}) == 2


def test_tri_or_quad_on_cyclic_uses_triangle():
    for n in range(3, 7):
        w = to_wiring(cyclic(n))
        for c in all_colorings(n):
            assert bichromatic_tri_or_quad(w, c).kind == "triangle"


def test_quadrangle_pattern_on_cyclic4():
    w = to_wiring(cyclic(4))
    (q,) = quadrangles(w)
    assert face_line_cycle(w, q) == [1, 4, 2, 3]
    assert quadrangle_pattern(w, q, Coloring("RRBB")) == "RBRB"
    assert quadrangle_pattern(w, q, Coloring("RBRB")) == "RRBB"


def test_tri_or_quad_quadrangle_branch(monkeypatch):
    # force the fallback by hiding triangles
    import pslab.coloring as col

    monkeypatch.setattr(col, "bichromatic_triangle", lambda w, c: None)
    res = col.bichromatic_tri_or_quad(cyclic(4), Coloring("RBRB"))
    assert res.kind == "quadrangle" and res.pattern == "RRBB"
    assert col.bichromatic_tri_or_quad(cyclic(3), Coloring("RBB")) is None


def test_quadrangle_branch_never_needed_small():
    for n in (4, 5):
        for s in all_sigs(n):
            for c in all_colorings(n):
                assert bichromatic_tri_or_quad(s, c).kind == "triangle"


def test_coloring_masks():
    masks = list(coloring_masks(4))
    assert len(masks) == 2 ** 3 - 1
    assert all(m & 1 == 0 for m in masks)
    assert len(list(coloring_masks(12, max_red=5))) < 2 ** 11 - 1


def test_check_bichromatic_triangles_small():
    for n in range(3, 7):
        assert check_bichromatic_triangles(n) == []


def test_check_few_red_and_tri_or_quad_small():
    assert check_few_red_lines(6) == []
    assert check_triangle_or_quadrangle(6) == []


def test_checkers_limit_guard():
    from pslab.errors import ResourceGuardError

    with pytest.raises(ResourceGuardError):
        check_bichromatic_triangles(8)


def test_block_size():
    assert block_size(Coloring("RRBB")) == 2
    assert block_size(Coloring("BBRR")) is None
    assert block_size(Coloring("RBRB")) is None


def test_extremal_signotopes_example():
    lo, hi = extremal_signotopes(cyclic(4), Coloring("RRBB"))
    assert lo == cyclic(4, "-") and hi == cyclic(4, "+")
    with pytest.raises(ColoringError):
        extremal_signotopes(cyclic(4), Coloring("RBRB"))


def test_block_witness_example():
    s = cyclic(4)
    wit = block_witness(s, Coloring("RRBB"))
    assert wit.minus == flip_path(s, cyclic(4, "+")).steps[0]
    assert wit.plus is None
    assert len(wit.faces) == 1


def test_block_colorings_exhaustive_small():
    for n in range(3, 6):
        assert check_block_colorings(n) == []


def test_block_strictly_between_has_both_orientations():
    for s in all_sigs(5):
        for r in range(1, 5):
            c = Coloring("R" * r + "B" * (5 - r))
            lo, hi = extremal_signotopes(s, c)
            if s in (lo, hi):
                continue
            wit = block_witness(s, c)
            assert s.sign(*wit.minus) == "-" and s.sign(*wit.plus) == "+"
            assert block_coloring_failures(s, c) == []


def test_is_block_bicolored():
    assert is_block_bicolored(cyclic(4), Coloring("RRBB"))
    assert not is_block_bicolored(cyclic(4), Coloring("RBRB"))
    for n in range(3, 7):
        for start in range(n):
            for r in range(1, n):
                reds = {(start + i) % n + 1 for i in range(r)}
                c = Coloring.from_sets(n, sorted(reds))
                assert is_block_bicolored(cyclic(n), c)


def test_five_line_extremal_free():
    free = [s for s in all_sigs(5) if not extremal_lines(s)]
    assert len(free) == 2


@settings(max_examples=40, deadline=None)
@given(signotopes(min_n=4, max_n=9), st.integers(0, 2 ** 32 - 1))
def test_random_bicolorings_have_witness(s, seed):
    rng = random.Random(seed)
    colors = [rng.choice("RB") for _ in range(s.n)]
    colors[0], colors[-1] = "R", "B"
    c = Coloring("".join(colors))
    res = bichromatic_tri_or_quad(s, c)
    assert res is not None


@settings(max_examples=30, deadline=None)
@given(signotopes(min_n=4, max_n=8), st.data())
def test_random_block_colorings(s, data):
    r = data.draw(st.integers(1, s.n - 1))
    c = Coloring("R" * r + "B" * (s.n - r))
    lo, hi = extremal_signotopes(s, c)
    assert lo.valid and hi.valid
    assert block_coloring_failures(s, c) == []
