"""Line-face and line-triangle hypergraphs with exact alpha and chi."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .errors import MalformedInputError, UnsatisfiableError
from .parallel import map_prefixes
from .signotope import Signotope, enumerate_all, flippable_triples
from .wiring import WiringDiagram, as_wiring, faces, to_wiring, triangles

FACE = "face"
TRIANGLE = "triangle"


def _mask(s: Iterable[int]) -> int:
    return sum(1 << (x - 1) for x in s)


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class Hypergraph:
    """Vertices 1..n; edges are deduplicated nonempty vertex sets."""

    n: int
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        es = frozenset(frozenset(e) for e in self.edges)
        for e in es:
            if not e or any(not (1 <= x <= self.n) for x in e):
                raise MalformedInputError(f"edge {sorted(e)} is not a nonempty subset of 1..{self.n}")
        object.__setattr__(self, "edges", es)

    def sorted_edges(self) -> list[list[int]]:
        return sorted((sorted(e) for e in self.edges), key=lambda e: (len(e), e))

    def is_independent(self, s: Iterable[int]) -> bool:
        m = _mask(s)
        return not any(_mask(e) & ~m == 0 for e in self.edges)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": self.sorted_edges()})

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        try:
            data = json.loads(text)
            n = int(data["n"])
            edges = [frozenset(int(x) for x in e) for e in data["edges"]]
        except (ValueError, KeyError, TypeError) as e:
            raise MalformedInputError(f"bad hypergraph JSON: {e}") from None
        return cls(n, frozenset(edges))


def line_face_hypergraph(w: Union[WiringDiagram, Signotope]) -> Hypergraph:
    """One edge per distinct face support, unbounded faces included."""
    w = as_wiring(w)
    return Hypergraph(w.n, frozenset(f.support for f in faces(w)))


def line_triangle_hypergraph(w: Union[WiringDiagram, Signotope]) -> Hypergraph:
    """Supports of all triangular faces, bounded or not."""
    w = as_wiring(w)
    return Hypergraph(w.n, frozenset(f.support for f in triangles(w, include_unbounded=True)))


def independence_number(h: Hypergraph, brute_force: bool = False) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set containing no edge, with a witness.

    Branch-and-bound: vertices in descending edge-degree order; the bound
    subtracts a greedy packing of edges whose undecided parts are disjoint
    (each needs one more excluded vertex).
    """
    if brute_force:
        return _alpha_brute(h)
    n = h.n
    emasks = [_mask(e) for e in h.edges]
    deg = {v: sum(1 for e in h.edges if v in e) for v in range(1, n + 1)}
    order = sorted(range(1, n + 1), key=lambda v: (-deg[v], v))
    by_vertex = {v: [e for e in emasks if e >> (v - 1) & 1] for v in order}
    best = [0, 0]  # size, mask

    def bound(cur: int, rest: int) -> int:
        used = 0
        pack = 0
        for e in emasks:
            if e & ~(cur | rest):
                continue  # already contains an excluded vertex
            part = e & rest
            if part & used == 0:
                used |= part
                pack += 1
        return bin(cur).count("1") + bin(rest).count("1") - pack

    def rec(i: int, cur: int, rest: int) -> None:
        size = bin(cur).count("1")
        if size > best[0]:
            best[0], best[1] = size, cur
        if i == n or size + (n - i) <= best[0]:
            return
        if bound(cur, rest) <= best[0]:
            return
        v = order[i]
        bit = 1 << (v - 1)
        nxt = rest & ~bit
        new = cur | bit
        if not any(e & ~new == 0 for e in by_vertex[v]):
            rec(i + 1, new, nxt)
        rec(i + 1, cur, nxt)

    rec(0, 0, (1 << n) - 1)
    witness = _members(best[1])
    assert h.is_independent(witness)
    return best[0], witness


def _alpha_brute(h: Hypergraph) -> tuple[int, tuple[int, ...]]:
    for size in range(h.n, -1, -1):
        for s in itertools.combinations(range(1, h.n + 1), size):
            if h.is_independent(s):
                return size, s
    return 0, ()


def chromatic_number(h: Hypergraph) -> tuple[int, tuple[int, ...]]:
    """Fewest colors with no monochromatic edge; colors are 1-based per vertex."""
    if any(len(e) <= 1 for e in h.edges):
        raise UnsatisfiableError("an edge of size at most one can never be bichromatic")
    n = h.n
    if n == 0:
        return 0, ()
    # check each edge when its largest vertex gets colored
    at: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for e in h.edges:
        at[max(e)].append(tuple(sorted(e)))
    for k in range(1, n + 1):
        col = [0] * (n + 1)

        def rec(v: int, used: int) -> bool:
            if v > n:
                return True
            for c in range(1, min(k, used + 1) + 1):
                col[v] = c
                if all(any(col[x] != c for x in e) for e in at[v]):
                    if rec(v + 1, max(used, c)):
                        return True
            col[v] = 0
            return False

        if rec(1, 0):
            return k, tuple(col[1:])
    raise AssertionError("n colors always suffice")  # pragma: no cover


class _DSU:
    def __init__(self, items: Iterable) -> None:
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def _lines_connected(n: int, supports: Iterable[Iterable[int]]) -> bool:
    dsu = _DSU(range(1, n + 1))
    for s in supports:
        s = list(s)
        for x in s[1:]:
            dsu.union(s[0], x)
    return len({dsu.find(x) for x in range(1, n + 1)}) == 1


def incidence_graph_connected(w: Union[WiringDiagram, Signotope], include_unbounded: bool = False) -> bool:
    """Is the bipartite triangle/line incidence graph connected?"""
    w = as_wiring(w)
    return _lines_connected(w.n, (f.support for f in triangles(w, include_unbounded)))


def _connectivity_worker(n: int, prefix: str) -> list[Signotope]:
    return [s for s in enumerate_all(n, limit=n, prefix=prefix)
            if not _lines_connected(n, flippable_triples(s))]


def check_incidence_connectivity(n: int, jobs: Optional[int] = 1, limit: Optional[int] = None) -> list[Signotope]:
    """Arrangements whose triangle/line incidence graph is disconnected.

    Bounded triangles are read off as flippable triples."""
    if n < 3:
        return []
    return map_prefixes(_connectivity_worker, n, jobs, limit)


@dataclass(frozen=True)
class OneFaceReport:
    ok: bool
    cell_count: int
    common_cell: Optional[int]
    crossings_per_cell: tuple[int, ...]
    message: str


def blue_cells(w: WiringDiagram, blue: Iterable[int]) -> tuple[list[int], int]:
    """Map each face of ``w`` to a cell of the blue subarrangement.

    Faces are merged across every edge lying on a non-blue line.
    Returns (cell id per face, number of cells)."""
    bl = set(blue)
    fs = faces(w)
    dsu = _DSU(range(len(fs)))
    for e in w.sweep.edges:
        if e.wire not in bl:
            dsu.union(e.above, e.below)
    roots = sorted({dsu.find(f.id) for f in fs})
    rid = {r: i for i, r in enumerate(roots)}
    return [rid[dsu.find(f.id)] for f in fs], len(roots)


def oneface_check(w: Union[WiringDiagram, Signotope], blue: Iterable[int]) -> OneFaceReport:
    """Check the one-face structure forced on a largest independent blue set
    when n = 3k-1: one unbounded blue cell meets every red line, and every
    other blue cell meets exactly one red line."""
    w = as_wiring(w)
    bl = sorted(set(blue))
    n = w.n
    if (n + 1) % 3:
        raise MalformedInputError(f"n={n} is not of the form 3k-1")
    k = (n + 1) // 3
    if len(bl) != 2 * k - 1 or any(not (1 <= x <= n) for x in bl):
        raise MalformedInputError(f"need {2 * k - 1} blue lines out of {n}")
    if not line_face_hypergraph(w).is_independent(bl):
        raise MalformedInputError("blue set is not independent in the line-face hypergraph")
    reds = [x for x in range(1, n + 1) if x not in bl]
    cell, ncell = blue_cells(w, bl)
    fs = faces(w)
    unbounded_cells = {cell[f.id] for f in fs if not f.bounded}
    crossed: dict[int, set[int]] = {r: set() for r in reds}
    for e in w.sweep.edges:
        if e.wire in crossed:
            crossed[e.wire].add(cell[e.above])
    per = [sum(1 for r in reds if c in crossed[r]) for c in range(ncell)]
    for c in range(ncell):
        if c not in unbounded_cells:
            continue
        if all(c in crossed[r] for r in reds) and all(per[d] == 1 for d in range(ncell) if d != c):
            return OneFaceReport(True, ncell, c, tuple(per), "ok")
    return OneFaceReport(False, ncell, None, tuple(per), "no cell met by every red line with all others met once")


def _alpha_worker(n: int, prefix: str, mode: str) -> list[tuple[int, Signotope, tuple[int, ...]]]:
    best = None
    for s in enumerate_all(n, limit=n, prefix=prefix):
        w = to_wiring(s)
        h = line_face_hypergraph(w) if mode == FACE else line_triangle_hypergraph(w)
        a, wit = independence_number(h)
        if best is None or a > best[0]:
            best = (a, s, wit)
    return [best] if best else []


def max_alpha_over_arrangements(n: int, mode: str = FACE, jobs: Optional[int] = 1,
                                limit: Optional[int] = None) -> tuple[int, Signotope, tuple[int, ...]]:
    """Exact maximum of alpha over all arrangements of n pseudolines,
    with the first maximizing signotope (enumeration order) and its witness."""
    if mode not in (FACE, TRIANGLE):
        raise MalformedInputError(f"mode must be '{FACE}' or '{TRIANGLE}'")
    if n < 2:
        raise MalformedInputError("need n >= 2")
    parts = map_prefixes(_alpha_worker, n, jobs, limit, (mode,))
    best = parts[0]
    for p in parts[1:]:
        if p[0] > best[0]:
            best = p
    return best


def upper_bound_inequality(n: int, s: int) -> bool:
    """Counting inequality every independent set of size s in the line-face
    hypergraph of n pseudolines satisfies: (n-s)(s+1) >= s(s+1)/2 + 1."""
    return 2 * (n - s) * (s + 1) >= s * (s + 1) + 2


def two_thirds_bound(n: int) -> int:
    """ceil(2n/3 - 1)."""
    return -((-(2 * n - 3)) // 3)
