import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pslab.errors import (
    DimensionError,
    FlipRejectedError,
    InvalidSignotopeError,
    MalformedInputError,
    OrderError,
    ResourceGuardError,
)
from pslab.signotope import (
    Signotope,
    cyclic,
    enumerate_all,
    extensions,
    flip,
    flip_path,
    flippable_triples,
    is_valid,
    leq_inclusion,
    max_same_sign_subset,
    max_same_sign_subset_brute,
    parse_signotope,
    prefixes,
    random_signotope,
    restrict,
    triples,
)

from _util import all_sigs, signotopes, sigs_upto


def brute_valid(n, signs):
    """Direct transcription of the 4-subset condition, no index tables."""
    s = dict(zip(itertools.combinations(range(1, n + 1), 3), signs))
    for q in itertools.combinations(range(1, n + 1), 4):
        seq = [s[tuple(x for x in q if x != q[i])] for i in range(4)]
        if sum(a != b for a, b in zip(seq, seq[1:])) > 1:
            return False
    return True


def test_is_valid_examples():
    assert is_valid("----", 4)
    assert not is_valid("-+-+", 4)
    assert is_valid("--++", 4)
    assert is_valid("", 2) and is_valid("+", 3)


def test_is_valid_mapping_input():
    m = {(1, 2, 3): "-", (1, 2, 4): "-", (1, 3, 4): "+", (2, 3, 4): "+"}
    assert is_valid(m, 4)
    with pytest.raises(MalformedInputError):
        is_valid({(1, 2, 3): "-"}, 4)
    with pytest.raises(MalformedInputError):
        is_valid({**m, (1, 2, 5): "+"}, 4)


def test_is_valid_matches_direct_definition_n5():
    for bits in itertools.product("-+", repeat=10):
        s = "".join(bits)
        assert is_valid(s, 5) == brute_valid(5, s)


def test_cyclic():
    assert cyclic(3, "-").signs == "-"
    assert cyclic(8, "+").signs == "+" * 56
    for n in range(1, 11):
        for s in "-+":
            assert cyclic(n, s).valid


def test_flippable_examples():
    assert flippable_triples(cyclic(3)) == {(1, 2, 3)}
    assert flippable_triples(cyclic(4)) == {(1, 2, 3), (2, 3, 4)}


def test_every_signotope_has_a_flip():
    for s in sigs_upto(6, start=3):
        assert flippable_triples(s)


def test_flip_examples():
    assert flip(cyclic(3), (1, 2, 3)) == cyclic(3, "+")
    f = flip(cyclic(4), (1, 2, 3))
    assert f.signs == "+---" and f.valid
    with pytest.raises(FlipRejectedError):
        flip(cyclic(4), (1, 2, 4))


def test_flip_involution_and_symmetry_exhaustive():
    for s in sigs_upto(6, start=3):
        for t in flippable_triples(s):
            f = flip(s, t)
            assert f.valid
            assert t in flippable_triples(f)
            assert flip(f, t) == s


def test_leq_inclusion():
    s = all_sigs(5)[17]
    assert leq_inclusion(cyclic(5, "-"), s)
    assert leq_inclusion(s, s)
    assert not leq_inclusion(cyclic(4, "+"), cyclic(4, "-"))
    with pytest.raises(DimensionError):
        leq_inclusion(cyclic(4), cyclic(5))


def test_flip_path_examples():
    assert len(flip_path(cyclic(3, "-"), cyclic(3, "+"))) == 1
    for n in range(3, 7):
        p = flip_path(cyclic(n, "-"), cyclic(n, "+"))
        assert len(p) == len(triples(n))
    with pytest.raises(OrderError):
        flip_path(cyclic(4, "+"), cyclic(4, "-"))


def test_flip_path_intermediates_valid():
    low, high = cyclic(6, "-"), cyclic(6, "+")
    p = flip_path(low, high)
    seq = list(p.signotopes())
    assert seq[0] == low and seq[-1] == high
    assert all(x.valid for x in seq)


def test_restrict():
    s = all_sigs(6)[300]
    assert restrict(s, range(1, 7)) == s
    assert restrict(cyclic(6, "+"), {1, 3, 5}) == cyclic(3, "+")
    with pytest.raises(MalformedInputError):
        restrict(s, [0, 1, 2])


def test_restriction_hereditary_exhaustive_n5():
    for s in sigs_upto(5):
        for r in range(1, s.n + 1):
            for sub in itertools.combinations(range(1, s.n + 1), r):
                assert restrict(s, sub).valid


def test_extensions_examples():
    assert len(extensions(cyclic(1), 1)) == 1
    two = cyclic(2)
    got = {e for p in (1, 2, 3) for e in extensions(two, p)}
    assert got == {cyclic(3, "-"), cyclic(3, "+")}
    with pytest.raises(MalformedInputError):
        extensions(two, 4)


def test_extensions_cover_n5():
    got = {e for s in all_sigs(4) for p in range(1, 6) for e in extensions(s, p)}
    assert len(got) == 62 == len(all_sigs(5))


def test_extensions_restrict_back():
    s = all_sigs(5)[40]
    for p in range(1, 7):
        keep = [x for x in range(1, 7) if x != p]
        for e in extensions(s, p):
            assert e.valid and restrict(e, keep) == s


def test_enumeration_counts_and_order():
    assert [len(all_sigs(n)) for n in range(1, 7)] == [1, 1, 2, 8, 62, 908]
    for n in (4, 5):
        sigs = all_sigs(n)
        keys = [s.signs.replace("-", "0").replace("+", "1") for s in sigs]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(brute_valid(n, s.signs) for s in sigs)


def test_enumeration_limit(monkeypatch):
    with pytest.raises(ResourceGuardError):
        next(enumerate_all(8))
    monkeypatch.setenv("PSLAB_ENUM_LIMIT", "3")
    with pytest.raises(ResourceGuardError):
        next(enumerate_all(4))
    assert len(list(enumerate_all(4, limit=4))) == 8


def test_prefix_partition_is_ordered_cover():
    parts = prefixes(6, 5)
    joined = [s for p in parts for s in enumerate_all(6, prefix=p)]
    assert joined == list(all_sigs(6))


def test_max_same_sign_examples():
    for n in range(3, 9):
        assert len(max_same_sign_subset(cyclic(n, "+"), "+")) == n
        assert len(max_same_sign_subset(cyclic(n, "+"), "-")) == 2


def test_max_same_sign_random_n8():
    rng = random.Random(8)
    for _ in range(20):
        s = random_signotope(8, rng)
        for sign in "-+":
            got = max_same_sign_subset(s, sign)
            assert len(got) == len(max_same_sign_subset_brute(s, sign))
            assert set(restrict(s, got).signs) <= {sign}


def test_text_format_roundtrip_and_strictness():
    s = all_sigs(5)[10]
    assert parse_signotope(s.to_text()) == s
    assert parse_signotope("n=2\n") == cyclic(2)
    for bad in ("n=4\n---\n", "m=4\n----\n", "n=4\n--x-\n", "n=4\n----\nextra\n", ""):
        with pytest.raises(MalformedInputError):
            parse_signotope(bad)


def test_checked_constructor():
    with pytest.raises(InvalidSignotopeError):
        Signotope.checked(4, "-+-+")
    with pytest.raises(InvalidSignotopeError):
        flippable_triples(Signotope(4, "-+-+"))


@settings(max_examples=60, deadline=None)
@given(signotopes(max_n=9))
def test_random_walk_signotopes_are_valid(s):
    assert s.valid
    assert brute_valid(s.n, s.signs)


@settings(max_examples=40, deadline=None)
@given(signotopes(max_n=8), st.data())
def test_flip_path_between_random_comparable(s, data):
    # walk downward by random flips to get a comparable lower signotope
    low = s
    for _ in range(data.draw(st.integers(0, 15))):
        down = sorted(t for t in flippable_triples(low) if low.sign(*t) == "+")
        if not down:
            break
        low = flip(low, data.draw(st.sampled_from(down)))
    p = flip_path(low, s)
    assert len(p) == sum(a != b for a, b in zip(low.signs, s.signs))
    assert list(p.signotopes())[-1] == s
