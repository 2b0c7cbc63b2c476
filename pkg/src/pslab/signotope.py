"""Rank-3 signotopes: sign maps on the triples of [n].

A signotope on n elements assigns '-' or '+' to every triple i<j<k. It is
valid when, for every 4-subset {a<b<c<d}, the sequence
sign(bcd), sign(acd), sign(abd), sign(abc) changes sign at most once.
Valid signotopes encode marked simple pseudoline arrangements: sign(i,j,k)
is '-' iff line j passes above the crossing of lines i and k.

Signs are stored as a string over {'-','+'} in lexicographic triple order.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import (
    DimensionError,
    FlipRejectedError,
    InvalidSignotopeError,
    MalformedInputError,
    OrderError,
    ResourceGuardError,
)

MINUS = "-"
PLUS = "+"
SIGNS = (MINUS, PLUS)

Triple = tuple[int, int, int]

DEFAULT_ENUM_LIMIT = 7
ENUM_LIMIT_ENV = "PSLAB_ENUM_LIMIT"

# Patterns (bit 3 = first entry of the removal sequence) with <= 1 sign change.
_VALID_PATTERNS = frozenset({0b0000, 0b1111, 0b0001, 0b0011, 0b0111, 0b1000, 0b1100, 0b1110})
_VALID_TABLE = tuple(p in _VALID_PATTERNS for p in range(16))


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[Triple, ...]:
    """All triples of [n] in lexicographic order."""
    return tuple(itertools.combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[Triple, int]:
    return {t: i for i, t in enumerate(triples(n))}


@lru_cache(maxsize=None)
def _quads(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Index quadruples (bcd, acd, abd, abc) for every 4-subset, lex order."""
    idx = triple_index(n)
    out = []
    for a, b, c, d in itertools.combinations(range(1, n + 1), 4):
        out.append((idx[b, c, d], idx[a, c, d], idx[a, b, d], idx[a, b, c]))
    return tuple(out)


@lru_cache(maxsize=None)
def _quads_by_triple(n: int) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
    """For each triple index, the 4-subsets (as index quadruples) containing it."""
    per: list[list[tuple[int, int, int, int]]] = [[] for _ in triples(n)]
    for q in _quads(n):
        for t in q:
            per[t].append(q)
    return tuple(tuple(x) for x in per)


def _quad_ok(bits: Sequence[int], q: tuple[int, int, int, int]) -> bool:
    return _VALID_TABLE[(bits[q[0]] << 3) | (bits[q[1]] << 2) | (bits[q[2]] << 1) | bits[q[3]]]


def _bits(signs: str) -> list[int]:
    return [1 if s == PLUS else 0 for s in signs]


def _signs(bits: Iterable[int]) -> str:
    return "".join(PLUS if b else MINUS for b in bits)


def _valid_bits(n: int, bits: Sequence[int]) -> bool:
    return all(_quad_ok(bits, q) for q in _quads(n))


def _toggle_ok(n: int, bits: list[int], t: int) -> bool:
    """Would toggling triple index t keep a valid sign vector valid?"""
    bits[t] ^= 1
    try:
        return all(_quad_ok(bits, q) for q in _quads_by_triple(n)[t])
    finally:
        bits[t] ^= 1


def _sorted_triple(t: Sequence[int]) -> Triple:
    if len(t) != 3 or len(set(t)) != 3:
        raise MalformedInputError(f"not a triple of distinct lines: {t!r}")
    a, b, c = sorted(int(x) for x in t)
    return (a, b, c)


@dataclass(frozen=True)
class Signotope:
    """Immutable sign vector on the triples of [n] (lexicographic order).

    The constructor checks the format only; use :func:`is_valid` or
    :meth:`checked` for the 4-subset condition.
    """

    n: int
    signs: str

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise MalformedInputError(f"n must be a positive integer, got {self.n!r}")
        expected = len(triples(self.n))
        if len(self.signs) != expected:
            raise MalformedInputError(
                f"n={self.n} needs {expected} signs, got {len(self.signs)}")
        bad = set(self.signs) - set(SIGNS)
        if bad:
            raise MalformedInputError(f"illegal sign characters: {sorted(bad)}")

    @classmethod
    def checked(cls, n: int, signs: str) -> "Signotope":
        s = cls(n, signs)
        if not s.valid:
            raise InvalidSignotopeError(f"sign string violates the 4-subset condition (n={n})")
        return s

    @classmethod
    def from_mapping(cls, n: int, signs: Mapping[Sequence[int], str]) -> "Signotope":
        return cls(n, _signs_from_mapping(n, signs))

    @cached_property
    def bits(self) -> tuple[int, ...]:
        return tuple(_bits(self.signs))

    @cached_property
    def valid(self) -> bool:
        return _valid_bits(self.n, self.bits)

    def sign(self, i: int, j: int, k: int) -> str:
        """Sign of the triple {i,j,k} (any order of arguments)."""
        return self.signs[triple_index(self.n)[_sorted_triple((i, j, k))]]

    def as_dict(self) -> dict[Triple, str]:
        return dict(zip(triples(self.n), self.signs))

    def plus_set(self) -> frozenset[Triple]:
        return frozenset(t for t, s in zip(triples(self.n), self.signs) if s == PLUS)

    def to_text(self) -> str:
        return f"n={self.n}\n{self.signs}\n"

    @classmethod
    def from_text(cls, text: str) -> "Signotope":
        return parse_signotope(text)

    def __str__(self) -> str:
        return f"n={self.n} {self.signs}"


def _signs_from_mapping(n: int, signs: Mapping[Sequence[int], str]) -> str:
    idx = triple_index(n)
    out = [""] * len(idx)
    for key, val in signs.items():
        t = tuple(key)
        if t not in idx:
            raise MalformedInputError(f"unexpected triple key {key!r} for n={n}")
        if val not in SIGNS:
            raise MalformedInputError(f"illegal sign {val!r} at {key!r}")
        out[idx[t]] = val
    missing = [t for t, s in zip(triples(n), out) if not s]
    if missing:
        raise MalformedInputError(f"missing signs for {len(missing)} triples, e.g. {missing[0]}")
    return "".join(out)


def parse_signotope(text: str) -> Signotope:
    """Parse the two-line text format ``n=<int>`` / sign string (strict)."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedInputError("empty signotope text")
    head = lines[0].strip()
    if not head.startswith("n="):
        raise MalformedInputError(f"first line must be 'n=<int>', got {head!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise MalformedInputError(f"bad count in {head!r}") from None
    if len(lines) > 2:
        raise MalformedInputError("trailing content after sign string")
    body = lines[1].strip() if len(lines) == 2 else ""
    return Signotope(n, body)


def is_valid(signs: Union[str, Mapping[Sequence[int], str], Signotope], n: Optional[int] = None) -> bool:
    """True iff every 4-subset removal sequence has at most one sign change."""
    if isinstance(signs, Signotope):
        return signs.valid
    if n is None:
        raise MalformedInputError("n is required")
    if isinstance(signs, str):
        return Signotope(n, signs).valid
    return Signotope(n, _signs_from_mapping(n, signs)).valid


def require_valid(sigma: Signotope) -> None:
    if not sigma.valid:
        raise InvalidSignotopeError(f"signotope is not valid: {sigma}")


def cyclic(n: int, sign: str = MINUS) -> Signotope:
    """The constant signotope (cyclic arrangement)."""
    if sign not in SIGNS:
        raise MalformedInputError(f"sign must be '-' or '+', got {sign!r}")
    return Signotope(n, sign * len(triples(n)))


def flippable_triples(sigma: Signotope) -> frozenset[Triple]:
    """Triples whose toggle keeps the signotope valid."""
    require_valid(sigma)
    bits = list(sigma.bits)
    ts = triples(sigma.n)
    return frozenset(ts[t] for t in range(len(ts)) if _toggle_ok(sigma.n, bits, t))


def is_flippable(sigma: Signotope, t: Sequence[int]) -> bool:
    ti = triple_index(sigma.n).get(_sorted_triple(t))
    if ti is None:
        raise MalformedInputError(f"triple {t!r} out of range for n={sigma.n}")
    return _toggle_ok(sigma.n, list(sigma.bits), ti)


def _toggled(sigma: Signotope, ti: int) -> Signotope:
    s = sigma.signs
    return Signotope(sigma.n, s[:ti] + (PLUS if s[ti] == MINUS else MINUS) + s[ti + 1:])


def flip(sigma: Signotope, t: Sequence[int]) -> Signotope:
    """Toggle the sign of a flippable triple."""
    require_valid(sigma)
    triple = _sorted_triple(t)
    ti = triple_index(sigma.n).get(triple)
    if ti is None:
        raise MalformedInputError(f"triple {t!r} out of range for n={sigma.n}")
    if not _toggle_ok(sigma.n, list(sigma.bits), ti):
        raise FlipRejectedError(f"triple {triple} is not flippable")
    return _toggled(sigma, ti)


def leq_inclusion(s1: Signotope, s2: Signotope) -> bool:
    """True iff every '+' triple of s1 is '+' in s2."""
    if s1.n != s2.n:
        raise DimensionError(f"n mismatch: {s1.n} vs {s2.n}")
    return all(b <= c for b, c in zip(s1.bits, s2.bits))


@dataclass(frozen=True)
class FlipPath:
    start: Signotope
    end: Signotope
    steps: tuple[Triple, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.steps)

    def signotopes(self) -> Iterator[Signotope]:
        """The start, every intermediate signotope and the end."""
        cur = self.start
        yield cur
        for t in self.steps:
            cur = flip(cur, t)
            yield cur


def flip_path(low: Signotope, high: Signotope) -> FlipPath:
    """A path of '-' to '+' flips from ``low`` up to ``high``.

    Greedy: always flip the lexicographically smallest flippable triple that
    still differs. Every step is a valid signotope.
    """
    require_valid(low)
    require_valid(high)
    if not leq_inclusion(low, high):
        raise OrderError("start is not below end in the inclusion order")
    n = low.n
    bits = list(low.bits)
    todo = [i for i, (a, b) in enumerate(zip(low.bits, high.bits)) if a != b]
    steps = []
    ts = triples(n)
    while todo:
        for pos, ti in enumerate(todo):
            if _toggle_ok(n, bits, ti):
                bits[ti] = 1
                steps.append(ts[ti])
                del todo[pos]
                break
        else:  # pragma: no cover - would contradict the order equivalence
            raise RuntimeError("no flippable triple in the difference set")
    return FlipPath(low, high, tuple(steps))


def restrict(sigma: Signotope, subset: Iterable[int]) -> Signotope:
    """Subarrangement on ``subset``, relabeled order-preservingly."""
    s = sorted(subset)
    if len(set(s)) != len(s) or any(not (1 <= x <= sigma.n) for x in s):
        raise MalformedInputError(f"subset {s} is not a subset of [1..{sigma.n}]")
    if not s:
        raise MalformedInputError("subset must be nonempty")
    idx = triple_index(sigma.n)
    signs = "".join(sigma.signs[idx[(s[a - 1], s[b - 1], s[c - 1])]] for a, b, c in triples(len(s)))
    return Signotope(len(s), signs)


def _complete(n: int, fixed: Sequence[Optional[int]]) -> Iterator[tuple[int, ...]]:
    """All valid completions of a partial sign vector, in lexicographic order.

    Free positions are assigned in increasing triple order, '-' before '+';
    each 4-subset is checked as soon as its last free triple is assigned.
    """
    vals = list(fixed)
    free = [i for i, v in enumerate(vals) if v is None]
    slot = {t: k for k, t in enumerate(free)}
    checks: list[list[tuple[int, int, int, int]]] = [[] for _ in free]
    for q in _quads(n):
        fr = [slot[x] for x in q if x in slot]
        if fr:
            checks[max(fr)].append(q)
        elif not _quad_ok(vals, q):
            return
    if not free:
        yield tuple(vals)
        return
    last = len(free) - 1
    choice = [-1] * len(free)
    k = 0
    while k >= 0:
        if choice[k] == 1:
            choice[k] = -1
            vals[free[k]] = None
            k -= 1
            continue
        choice[k] += 1
        vals[free[k]] = choice[k]
        if all(_quad_ok(vals, q) for q in checks[k]):
            if k == last:
                yield tuple(vals)
            else:
                k += 1


def extensions(sigma: Signotope, p: int) -> list[Signotope]:
    """All valid one-element extensions with the new line at position p."""
    require_valid(sigma)
    n = sigma.n
    if not (1 <= p <= n + 1):
        raise MalformedInputError(f"insertion position {p} outside 1..{n + 1}")
    old_idx = triple_index(n)

    def back(x: int) -> int:
        return x if x < p else x - 1

    fixed: list[Optional[int]] = []
    for t in triples(n + 1):
        if p in t:
            fixed.append(None)
        else:
            fixed.append(sigma.bits[old_idx[tuple(back(x) for x in t)]])
    return [Signotope(n + 1, _signs(v)) for v in _complete(n + 1, fixed)]


def enum_limit(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENUM_LIMIT_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise MalformedInputError(f"{ENUM_LIMIT_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_ENUM_LIMIT


def check_limit(n: int, limit: Optional[int] = None) -> None:
    lim = enum_limit(limit)
    if n > lim:
        raise ResourceGuardError(
            f"n={n} exceeds the enumeration limit {lim}; raise it with --limit-n or {ENUM_LIMIT_ENV}")


def enumerate_all(n: int, limit: Optional[int] = None, prefix: str = "") -> Iterator[Signotope]:
    """Every valid signotope on n elements, once each, in lexicographic order
    of the sign string with '-' ordered before '+'.

    ``prefix`` restricts the stream to sign strings starting with it, which
    gives a deterministic partition of the search tree.
    """
    check_limit(n, limit)
    m = len(triples(n))
    if len(prefix) > m or set(prefix) - set(SIGNS):
        raise MalformedInputError(f"bad prefix {prefix!r}")
    fixed: list[Optional[int]] = _bits(prefix) + [None] * (m - len(prefix))
    for v in _complete(n, fixed):
        yield Signotope(n, _signs(v))


def prefixes(n: int, length: int) -> list[str]:
    """Prefixes of the given length that extend to at least one valid signotope
    on n elements; partitions enumerate_all(n) in order."""
    m = len(triples(n))
    length = min(length, m)
    out = []
    k = length
    # prefixes of valid signotopes on n elements: complete the first k triples
    # under the checks local to them, then keep those with a completion
    for p in itertools.product((0, 1), repeat=k):
        pre = _signs(p)
        if next(_complete(n, list(p) + [None] * (m - k)), None) is not None:
            out.append(pre)
    return out


def _good_triples(sigma: Signotope, sign: str) -> set[Triple]:
    return {t for t, s in zip(triples(sigma.n), sigma.signs) if s == sign}


def max_same_sign_subset(sigma: Signotope, sign: str, brute_force: bool = False) -> tuple[int, ...]:
    """A largest set of lines all of whose triples carry ``sign``.

    Exact branch-and-bound over lines in index order; the bound is the
    current size plus the number of still-compatible candidates.
    ``brute_force`` switches to the all-subsets oracle.
    """
    require_valid(sigma)
    if sign not in SIGNS:
        raise MalformedInputError(f"sign must be '-' or '+', got {sign!r}")
    if brute_force:
        return max_same_sign_subset_brute(sigma, sign)
    n = sigma.n
    if n <= 2:
        return tuple(range(1, n + 1))
    good = _good_triples(sigma, sign)
    best: list[tuple[int, ...]] = [(1, 2)]

    def search(cur: tuple[int, ...], cand: list[int]) -> None:
        if len(cur) > len(best[0]):
            best[0] = cur
        for pos, v in enumerate(cand):
            if len(cur) + len(cand) - pos <= len(best[0]):
                return
            nxt = [w for w in cand[pos + 1:] if all((a, v, w) in good for a in cur)]
            search(cur + (v,), nxt)

    search((), list(range(1, n + 1)))
    return best[0]


def max_same_sign_subset_brute(sigma: Signotope, sign: str) -> tuple[int, ...]:
    """Oracle: try all subsets from the largest size down."""
    n = sigma.n
    good = _good_triples(sigma, sign)
    for size in range(n, 2, -1):
        for s in itertools.combinations(range(1, n + 1), size):
            if all(t in good for t in itertools.combinations(s, 3)):
                return s
    return tuple(range(1, min(n, 2) + 1))


def random_signotope(n: int, rng: random.Random, steps: Optional[int] = None) -> Signotope:
    """Random valid signotope from a random walk of flips started at cyclic(n,'-')."""
    sigma = cyclic(n, MINUS)
    if n < 3:
        return sigma
    bits = list(sigma.bits)
    m = len(bits)
    steps = steps if steps is not None else 4 * m
    for _ in range(steps):
        cand = [t for t in range(m) if _toggle_ok(n, bits, t)]
        t = rng.choice(cand)
        bits[t] ^= 1
    return Signotope(n, _signs(bits))
