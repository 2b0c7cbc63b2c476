import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pslab.constructions import V3KM1, staircase_construction
from pslab.errors import MalformedInputError, UnsatisfiableError
from pslab.hypergraph import (
    TRIANGLE,
    Hypergraph,
    check_incidence_connectivity,
    chromatic_number,
    incidence_graph_connected,
    independence_number,
    line_face_hypergraph,
    line_triangle_hypergraph,
    max_alpha_over_arrangements,
    oneface_check,
    two_thirds_bound,
    upper_bound_inequality,
)
from pslab.signotope import cyclic, flip, flippable_triples
from pslab.wiring import to_wiring

from _util import all_sigs, signotopes


@st.composite
def hypergraphs(draw, max_n=15):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.frozensets(st.integers(1, n), min_size=1, max_size=4), max_size=25))
    return Hypergraph(n, frozenset(edges))


def brute_chi(h):
    for k in range(1, h.n + 1):
        for col in itertools.product(range(k), repeat=h.n):
            if all(len({col[x - 1] for x in e}) > 1 for e in h.edges):
                return k
    return None


def test_line_face_examples():
    assert line_face_hypergraph(cyclic(2)).edges == {frozenset({1, 2})}
    e3 = line_face_hypergraph(cyclic(3)).edges
    assert {frozenset(p) for p in ({1, 2}, {1, 3}, {2, 3}, {1, 2, 3})} <= e3


def test_line_triangle_subset_of_face():
    for s in all_sigs(5):
        w = to_wiring(s)
        assert line_triangle_hypergraph(w).edges <= line_face_hypergraph(w).edges


def test_hypergraph_json_roundtrip():
    h = Hypergraph(4, frozenset({frozenset({1, 2}), frozenset({2, 3, 4})}))
    assert Hypergraph.from_json(h.to_json()) == h
    with pytest.raises(MalformedInputError):
        Hypergraph(3, frozenset({frozenset({4})}))
    with pytest.raises(MalformedInputError):
        Hypergraph.from_json("{}")


def test_independence_examples():
    assert independence_number(Hypergraph(2, frozenset({frozenset({1, 2})})))[0] == 1
    assert independence_number(Hypergraph(5))[0] == 5
    pairs = frozenset(frozenset(p) for p in itertools.combinations(range(1, 5), 2))
    assert independence_number(Hypergraph(4, pairs))[0] == 1


def test_chromatic_examples():
    pairs = frozenset(frozenset(p) for p in itertools.combinations(range(1, 5), 2))
    k, col = chromatic_number(Hypergraph(4, pairs))
    assert k == 4 and len(set(col)) == 4
    assert chromatic_number(Hypergraph(3))[0] == 1
    with pytest.raises(UnsatisfiableError):
        chromatic_number(Hypergraph(3, frozenset({frozenset({2})})))


def test_chromatic_of_cyclic_line_face():
    # unbounded two-line faces form an odd cycle for odd n
    for n in range(3, 8):
        assert chromatic_number(line_face_hypergraph(cyclic(n)))[0] == (2 if n % 2 == 0 else 3)


@settings(max_examples=80, deadline=None)
@given(hypergraphs())
def test_alpha_matches_brute_force(h):
    a, wit = independence_number(h)
    assert h.is_independent(wit) and len(wit) == a
    assert a == independence_number(h, brute_force=True)[0]


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=6))
def test_chi_matches_brute_force(h):
    if any(len(e) == 1 for e in h.edges):
        with pytest.raises(UnsatisfiableError):
            chromatic_number(h)
        return
    k, col = chromatic_number(h)
    assert all(len({col[x - 1] for x in e}) > 1 for e in h.edges)
    assert k == brute_chi(h)


def test_max_alpha_small():
    assert [max_alpha_over_arrangements(n)[0] for n in range(3, 7)] == [1, 2, 3, 3]
    a, s, wit = max_alpha_over_arrangements(6, TRIANGLE)
    assert a == 4 and line_triangle_hypergraph(s).is_independent(wit)
    for n in range(3, 7):
        assert max_alpha_over_arrangements(n)[0] <= max_alpha_over_arrangements(n, TRIANGLE)[0]
    with pytest.raises(MalformedInputError):
        max_alpha_over_arrangements(4, "edge")


def test_bounds():
    assert [two_thirds_bound(n) for n in range(3, 10)] == [1, 2, 3, 3, 4, 5, 5]
    for n in range(3, 30):
        s = two_thirds_bound(n)
        assert upper_bound_inequality(n, s)
    assert not upper_bound_inequality(6, 5)


def test_incidence_connectivity():
    for n in range(3, 7):
        assert check_incidence_connectivity(n) == []
    assert incidence_graph_connected(cyclic(5))
    # two lines bound no triangle at all
    assert not incidence_graph_connected(cyclic(2))
    assert not incidence_graph_connected(cyclic(2), include_unbounded=True)
    assert incidence_graph_connected(cyclic(4), include_unbounded=True)


def test_oneface_staircase():
    for k in range(2, 5):
        s, c = staircase_construction(k, V3KM1)
        rep = oneface_check(s, sorted(c.blues))
        assert rep.ok and rep.common_cell is not None
        assert sum(rep.crossings_per_cell) == rep.cell_count - 1 + len(c.reds)
    assert oneface_check(cyclic(2), [1]).ok


def test_oneface_rejects_perturbed_instance():
    s, c = staircase_construction(3, V3KM1)
    blue = sorted(c.blues)
    broken = None
    for t in sorted(flippable_triples(s)):
        f = flip(s, t)
        if not line_face_hypergraph(f).is_independent(blue):
            broken = f
            break
    assert broken is not None
    with pytest.raises(MalformedInputError):
        oneface_check(broken, blue)
    with pytest.raises(MalformedInputError):
        oneface_check(cyclic(4), [1])
    with pytest.raises(MalformedInputError):
        oneface_check(s, blue[:-1])


def test_every_largest_independent_set_has_one_face_structure():
    # exhaustive at n=5, and every independent (2k-1)-set of the staircase instances
    cases = [(s, 2) for s in all_sigs(5)]
    cases += [(staircase_construction(k, V3KM1)[0], k) for k in (3, 4)]
    count = 0
    for s, k in cases:
        h = line_face_hypergraph(s)
        for bl in itertools.combinations(range(1, s.n + 1), 2 * k - 1):
            if h.is_independent(bl):
                assert oneface_check(s, bl).ok
                count += 1
    assert count > 20


@settings(max_examples=30, deadline=None)
@given(signotopes(max_n=9))
def test_random_alpha_respects_counting_bound(s):
    a, wit = independence_number(line_face_hypergraph(s))
    assert upper_bound_inequality(s.n, a)
    assert a <= two_thirds_bound(s.n)
