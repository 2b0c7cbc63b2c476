"""Wiring diagrams: the combinatorial picture of a marked arrangement.

Wires 1..n start at rows 1..n (row 1 on top) at the left. Each letter r of
the word swaps the wires currently at rows r and r+1. Faces are found by
sweeping the word left to right and tracking one open face per gap between
consecutive rows (gap g lies between rows g and g+1, gaps 0 and n are the
top and bottom faces).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .errors import InvalidSignotopeError, MalformedInputError
from .signotope import MINUS, PLUS, Signotope, require_valid, triple_index, triples

ABOVE = "above"
BELOW = "below"


@dataclass(frozen=True)
class Crossing:
    pair: tuple[int, int]
    position: int


@dataclass(frozen=True)
class Face:
    """A cell of the arrangement.

    ``boundary`` lists crossing positions (indices into the word) in cyclic
    order; ``None`` marks the stretch of boundary at infinity.
    """

    id: int
    support: frozenset[int]
    bounded: bool
    boundary: tuple[Optional[int], ...]
    gap: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(x for x in self.boundary if x is not None)


@dataclass(frozen=True)
class Edge:
    """A wire segment between consecutive crossings, with its two faces."""

    wire: int
    above: int
    below: int


@dataclass
class _Sweep:
    crossings: list[Crossing]
    faces: list[Face]
    edges: list[Edge]
    rows_before: list[tuple[int, ...]]  # wire order before each step


@dataclass(frozen=True)
class WiringDiagram:
    """A word of adjacent swaps.

    With ``complete=True`` (the default) every pair of wires crosses exactly
    once. Partial diagrams, where some pairs never cross, are accepted with
    ``complete=False``; no pair may cross twice in either case.
    """

    n: int
    word: tuple[int, ...]
    complete: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", tuple(int(r) for r in self.word))
        if self.n < 1:
            raise MalformedInputError("a wiring diagram needs at least one wire")
        rows = list(range(1, self.n + 1))
        seen: set[tuple[int, int]] = set()
        for r in self.word:
            if not (1 <= r <= self.n - 1):
                raise MalformedInputError(f"swap row {r} outside 1..{self.n - 1}")
            a, b = rows[r - 1], rows[r]
            pair = (min(a, b), max(a, b))
            if pair in seen:
                raise MalformedInputError(f"wires {pair} cross twice")
            seen.add(pair)
            rows[r - 1], rows[r] = b, a
        if self.complete and len(seen) != self.n * (self.n - 1) // 2:
            raise MalformedInputError("not every pair of wires crosses")

    @cached_property
    def sweep(self) -> _Sweep:
        return _sweep(self.n, self.word)

    @property
    def crossings(self) -> list[Crossing]:
        return self.sweep.crossings

    def crossing_of(self, i: int, j: int) -> Crossing:
        pair = (min(i, j), max(i, j))
        for c in self.sweep.crossings:
            if c.pair == pair:
                return c
        raise MalformedInputError(f"wires {pair} do not cross")

    def to_text(self) -> str:
        return f"n={self.n}\n{' '.join(map(str, self.word))}\n"


def _sweep(n: int, word: Sequence[int]) -> _Sweep:
    rows = list(range(1, n + 1))
    # per face: [gap, start, end, lower crossings, upper crossings]
    recs: list[list] = []
    cur = []
    for g in range(n + 1):
        recs.append([g, None, None, [], []])
        cur.append(g)
    edges = [Edge(rows[q - 1], cur[q - 1], cur[q]) for q in range(1, n + 1)]
    crossings = []
    rows_before = []
    for t, r in enumerate(word):
        rows_before.append(tuple(rows))
        a, b = rows[r - 1], rows[r]
        crossings.append(Crossing((min(a, b), max(a, b)), t))
        recs[cur[r]][2] = t
        recs[cur[r - 1]][3].append(t)
        recs[cur[r + 1]][4].append(t)
        rows[r - 1], rows[r] = b, a
        recs.append([r, t, None, [], []])
        cur[r] = len(recs) - 1
        edges.append(Edge(rows[r - 1], cur[r - 1], cur[r]))
        edges.append(Edge(rows[r], cur[r], cur[r + 1]))
    support: list[set[int]] = [set() for _ in recs]
    for e in edges:
        support[e.above].add(e.wire)
        support[e.below].add(e.wire)
    faces = []
    for fid, (gap, start, end, lower, upper) in enumerate(recs):
        cyc = [start] + lower + [end] + upper[::-1]
        bounded = start is not None and end is not None
        faces.append(Face(fid, frozenset(support[fid]), bounded, _collapse_none(cyc), gap))
    return _Sweep(crossings, faces, edges, rows_before)


def _collapse_none(cyc: list[Optional[int]]) -> tuple[Optional[int], ...]:
    """Merge runs of None (cyclically) into a single marker."""
    if None not in cyc:
        return tuple(cyc)
    k = cyc.index(None)
    rot = cyc[k:] + cyc[:k]
    out: list[Optional[int]] = []
    for x in rot:
        if x is None and out and out[-1] is None:
            continue
        out.append(x)
    return tuple(out)


def from_wiring(w: WiringDiagram) -> Signotope:
    """Signotope of a complete diagram: '-' iff {i,j} crosses before {j,k}."""
    if not w.complete:
        raise MalformedInputError("from_wiring needs a complete diagram")
    pos = {c.pair: c.position for c in w.crossings}
    return Signotope(w.n, "".join(
        MINUS if pos[i, j] < pos[j, k] else PLUS for i, j, k in triples(w.n)))


def local_sequences(sigma: Signotope) -> dict[int, list[int]]:
    """Order in which each line meets the others, read off the signs.

    On line j, line i is met before line k (i<k) iff sign({i,j,k}) is '-'.
    """
    n = sigma.n
    idx = triple_index(n)
    bits = sigma.bits

    def before(j: int, i: int, k: int) -> int:
        if i == k:
            return 0
        lo, hi = (i, k) if i < k else (k, i)
        first_lo = bits[idx[tuple(sorted((lo, hi, j)))]] == 0
        return -1 if (first_lo == (i < k)) else 1

    out = {}
    for j in range(1, n + 1):
        others = [x for x in range(1, n + 1) if x != j]
        out[j] = sorted(others, key=functools.cmp_to_key(lambda i, k, j=j: before(j, i, k)))
    return out


def to_wiring(sigma: Signotope) -> WiringDiagram:
    """Canonical wiring diagram: always perform the admissible swap with the
    smallest row. A swap of adjacent wires a, b is admissible when each is the
    next crossing partner of the other."""
    require_valid(sigma)
    n = sigma.n
    local = local_sequences(sigma)
    ptr = {j: 0 for j in local}
    rows = list(range(1, n + 1))
    word = []
    total = n * (n - 1) // 2
    while len(word) < total:
        for r in range(1, n):
            a, b = rows[r - 1], rows[r]
            if ptr[a] < n - 1 and ptr[b] < n - 1 and local[a][ptr[a]] == b and local[b][ptr[b]] == a:
                ptr[a] += 1
                ptr[b] += 1
                rows[r - 1], rows[r] = b, a
                word.append(r)
                break
        else:  # pragma: no cover - impossible for valid input
            raise InvalidSignotopeError("no admissible swap; signotope inconsistent")
    return WiringDiagram(n, tuple(word))


def as_wiring(x: Union[WiringDiagram, Signotope]) -> WiringDiagram:
    return x if isinstance(x, WiringDiagram) else to_wiring(x)


def faces(w: WiringDiagram) -> list[Face]:
    """All faces, bounded and unbounded: C(n,2)+n+1 of them for a complete diagram."""
    return list(w.sweep.faces)


def triangles(w: WiringDiagram, include_unbounded: bool = False) -> list[Face]:
    return [f for f in w.sweep.faces if len(f.support) == 3 and (include_unbounded or f.bounded)]


def quadrangles(w: WiringDiagram) -> list[Face]:
    return [f for f in w.sweep.faces if f.bounded and len(f.support) == 4]


def _as_crossing(w: WiringDiagram, x: Union[Crossing, Sequence[int]]) -> Crossing:
    if isinstance(x, Crossing):
        return x
    a, b = x
    return w.crossing_of(a, b)


def side_of(w: WiringDiagram, line: int, x: Union[Crossing, Sequence[int]]) -> str:
    """Side of pseudoline ``line`` on which crossing ``x`` lies."""
    c = _as_crossing(w, x)
    if line in c.pair:
        raise MalformedInputError(f"line {line} passes through crossing {c.pair}")
    rows = w.sweep.rows_before[c.position]
    r = w.word[c.position]
    q = rows.index(line) + 1
    return BELOW if q < r else ABOVE


def sweeping_failures(w: WiringDiagram) -> list[tuple[int, str]]:
    """(line, side) pairs where the side holds a crossing but no bounded
    triangle incident to the line lies there. Expected to be empty."""
    tri = triangles(w)
    fails = []
    for ln in range(1, w.n + 1):
        sides = {side_of(w, ln, c) for c in w.crossings if ln not in c.pair}
        have = set()
        for f in tri:
            if ln in f.support:
                a, b = sorted(f.support - {ln})
                have.add(side_of(w, ln, (a, b)))
        fails.extend((ln, s) for s in sorted(sides - have))
    return fails


def all_markings(w: Union[WiringDiagram, Signotope]) -> list[Signotope]:
    """The 2n signotopes obtained by taking each unbounded face as north.

    Ray ends in circular order are L1..Ln (left, top to bottom) then R1..Rn
    (right, bottom to top). With the north face between ends m-1 and m, the
    new labels follow the ends at positions m..m+n-1, and a triple's sign
    toggles once for each of its six ends among positions 0..m-1.
    Entry m=0 is the given marking.
    """
    sigma = from_wiring(w) if isinstance(w, WiringDiagram) else w
    require_valid(sigma)
    return [remark(sigma, m) for m in range(2 * sigma.n)]


def remark(sigma: Signotope, m: int) -> Signotope:
    """Signotope of the same arrangement with north moved past m ray ends."""
    n = sigma.n
    m %= 2 * n
    label = {}
    for off in range(n):
        p = (m + off) % (2 * n)
        label[p % n + 1] = off + 1
    idx = triple_index(n)
    out = [""] * len(idx)
    for t, s in zip(triples(n), sigma.signs):
        passed = sum(1 for x in t for p in (x - 1, n + x - 1) if p < m)
        if passed % 2:
            s = PLUS if s == MINUS else MINUS
        out[idx[tuple(sorted(label[x] for x in t))]] = s
    return Signotope(n, "".join(out))


def relabeling(n: int, m: int) -> dict[int, int]:
    """Old label -> new label under the marking with north shifted by m ends."""
    m %= 2 * n
    return {(m + off) % (2 * n) % n + 1: off + 1 for off in range(n)}


def faces_json(w: WiringDiagram) -> list[dict]:
    """Faces as plain data: boundary entries are crossing pairs, None at infinity."""
    cr = w.crossings
    return [{
        "support": sorted(f.support),
        "bounded": f.bounded,
        "boundary": [None if x is None else list(cr[x].pair) for x in f.boundary],
    } for f in w.sweep.faces]


RED_HEX = "#d62728"
BLUE_HEX = "#1f77b4"


def render_svg(w: WiringDiagram, coloring=None, dx: int = 30, dy: int = 24) -> str:
    """Deterministic SVG: one polyline per wire, bounded triangles shaded."""
    n = w.n
    colors = None
    if coloring is not None:
        colors = coloring if isinstance(coloring, str) else coloring.colors
        if len(colors) != n:
            raise MalformedInputError("coloring length does not match the diagram")
    steps = len(w.word)
    margin = 30
    width = 2 * margin + dx * (steps + 1)
    height = 2 * margin + dy * (n - 1)

    def X(t: float) -> float:
        return margin + dx * t

    def Y(row: float) -> float:
        return margin + dy * (row - 1)

    paths: dict[int, list[tuple[float, float]]] = {}
    rows = list(range(1, n + 1))
    for q, wire in enumerate(rows, 1):
        paths[wire] = [(X(0), Y(q))]
    for t, r in enumerate(w.word):
        for q, wire in enumerate(rows, 1):
            paths[wire].append((X(t + 0.25), Y(q)))
        rows[r - 1], rows[r] = rows[r], rows[r - 1]
        for q, wire in enumerate(rows, 1):
            paths[wire].append((X(t + 0.75), Y(q)))
    for q, wire in enumerate(rows, 1):
        paths[wire].append((X(steps + 1), Y(q)))

    def cpoint(pos: int) -> tuple[float, float]:
        return (X(pos + 0.5), Y(w.word[pos] + 0.5))

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for f in triangles(w):
        pts = " ".join(f"{x:g},{y:g}" for x, y in map(cpoint, f.vertices))
        label = escape(",".join(map(str, sorted(f.support))))
        out.append(f'<polygon points="{pts}" fill="#cccccc" stroke="none"><title>{label}</title></polygon>')
    for wire in range(1, n + 1):
        stroke = "#000000"
        if colors is not None:
            stroke = RED_HEX if colors[wire - 1] == "R" else BLUE_HEX
        pts = " ".join(f"{x:g},{y:g}" for x, y in paths[wire])
        out.append(f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="2"/>')
        out.append(f'<text x="{X(0) - 20:g}" y="{Y(wire) + 4:g}" font-size="12">{wire}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def enumerate_wiring_words(n: int) -> Iterable[tuple[int, ...]]:
    """All reduced words of the full reversal (every complete diagram).

    Independent of the signotope module; used as an enumeration oracle.
    """
    total = n * (n - 1) // 2
    rows = list(range(1, n + 1))
    word: list[int] = []

    def rec() -> Iterable[tuple[int, ...]]:
        if len(word) == total:
            yield tuple(word)
            return
        for r in range(1, n):
            if rows[r - 1] < rows[r]:
                rows[r - 1], rows[r] = rows[r], rows[r - 1]
                word.append(r)
                yield from rec()
                word.pop()
                rows[r - 1], rows[r] = rows[r], rows[r - 1]

    yield from rec()


def count_via_wiring_oracle(n: int) -> int:
    """Number of distinct signotopes among all wiring diagrams on n wires,
    computed straight from crossing positions (no signotope validity code)."""
    seen = set()
    trip = list(itertools.combinations(range(1, n + 1), 3))
    for word in enumerate_wiring_words(n):
        rows = list(range(1, n + 1))
        pos = {}
        for t, r in enumerate(word):
            a, b = rows[r - 1], rows[r]
            pos[min(a, b), max(a, b)] = t
            rows[r - 1], rows[r] = b, a
        seen.add("".join("-" if pos[i, j] < pos[j, k] else "+" for i, j, k in trip))
    return len(seen)
