"""Red/blue colorings of arrangements and the bichromatic-face checkers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .errors import ColoringError, MalformedInputError
from .parallel import map_prefixes
from .signotope import (
    MINUS,
    PLUS,
    Signotope,
    Triple,
    enumerate_all,
    flip_path,
    flippable_triples,
    leq_inclusion,
    require_valid,
    triples,
)
from .wiring import (
    Face,
    WiringDiagram,
    as_wiring,
    quadrangles,
    relabeling,
    side_of,
    to_wiring,
    triangles,
)

RED = "R"
BLUE = "B"


@dataclass(frozen=True)
class Coloring:
    """One color per line; ``colors[i-1]`` is the color of line i."""

    colors: str

    def __post_init__(self) -> None:
        if not self.colors or set(self.colors) - {RED, BLUE}:
            raise ColoringError(f"coloring must be a nonempty string over R/B, got {self.colors!r}")

    @property
    def n(self) -> int:
        return len(self.colors)

    def color(self, line: int) -> str:
        return self.colors[line - 1]

    @property
    def reds(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.colors, 1) if c == RED)

    @property
    def blues(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.colors, 1) if c == BLUE)

    @property
    def bicolored(self) -> bool:
        return RED in self.colors and BLUE in self.colors

    def red_mask(self) -> int:
        return sum(1 << (i - 1) for i in self.reds)

    @classmethod
    def from_mask(cls, n: int, red_mask: int) -> "Coloring":
        return cls("".join(RED if red_mask >> i & 1 else BLUE for i in range(n)))

    @classmethod
    def from_sets(cls, n: int, reds: Sequence[int]) -> "Coloring":
        rs = set(reds)
        return cls("".join(RED if i in rs else BLUE for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        lines = [s.strip() for s in text.splitlines() if s.strip()]
        if len(lines) != 1:
            raise MalformedInputError("coloring file must contain exactly one line")
        try:
            return cls(lines[0])
        except ColoringError as e:
            raise MalformedInputError(str(e)) from None

    def count(self, lines) -> tuple[int, int]:
        """(red, blue) counts among the given lines."""
        r = sum(1 for x in lines if self.colors[x - 1] == RED)
        return r, len(lines) - r


def _check(w: WiringDiagram, c: Coloring, need_bicolored: bool = True) -> None:
    if c.n != w.n:
        raise ColoringError(f"coloring has {c.n} entries for {w.n} lines")
    if need_bicolored and not c.bicolored:
        raise ColoringError("coloring is not bicolored")


def is_bichromatic(face: Face, c: Coloring) -> bool:
    return len({c.color(x) for x in face.support}) == 2


def bichromatic_triangle(w: Union[WiringDiagram, Signotope], c: Coloring) -> Optional[Face]:
    """A bounded triangle carrying both colors, or None."""
    w = as_wiring(w)
    _check(w, c)
    for f in triangles(w):
        if is_bichromatic(f, c):
            return f
    return None


def face_line_cycle(w: WiringDiagram, face: Face) -> list[int]:
    """Lines of the boundary edges of a bounded face, in cyclic order."""
    if not face.bounded:
        raise MalformedInputError("face is unbounded")
    cr = w.crossings
    vs = face.vertices
    out = []
    for a, b in zip(vs, vs[1:] + vs[:1]):
        common = set(cr[a].pair) & set(cr[b].pair)
        out.append(common.pop())
    return out


def quadrangle_pattern(w: WiringDiagram, face: Face, c: Coloring) -> str:
    """Cyclic boundary color order of a 2+2 quadrangle: 'RRBB' or 'RBRB'."""
    seq = "".join(c.color(x) for x in face_line_cycle(w, face))
    return "RRBB" if any((seq * 2)[i:i + 4] == "RRBB" for i in range(4)) else "RBRB"


@dataclass(frozen=True)
class TriOrQuad:
    face: Face
    kind: str  # "triangle" or "quadrangle"
    pattern: Optional[str] = None  # cyclic color order for quadrangles


def bichromatic_tri_or_quad(w: Union[WiringDiagram, Signotope], c: Coloring) -> Optional[TriOrQuad]:
    """A bichromatic bounded triangle, else a bounded quadrangle with two red
    and two blue lines. None means neither exists."""
    w = as_wiring(w)
    _check(w, c)
    f = bichromatic_triangle(w, c)
    if f is not None:
        return TriOrQuad(f, "triangle")
    for q in quadrangles(w):
        if c.count(q.support) == (2, 2):
            return TriOrQuad(q, "quadrangle", quadrangle_pattern(w, q, c))
    return None


def block_size(c: Coloring) -> Optional[int]:
    """r if the coloring is R^r B^(n-r) with r, n-r >= 1, else None."""
    r = c.colors.count(RED)
    if 1 <= r < c.n and c.colors == RED * r + BLUE * (c.n - r):
        return r
    return None


def extremal_signotopes(sigma: Signotope, c: Coloring) -> tuple[Signotope, Signotope]:
    """Copies of sigma with every bichromatic triple set to '-' resp. '+'."""
    require_valid(sigma)
    if c.n != sigma.n:
        raise ColoringError("coloring length does not match")
    r = block_size(c)
    if r is None:
        raise ColoringError(f"{c.colors} is not a red prefix block")
    lo, hi = [], []
    for (i, j, k), s in zip(triples(sigma.n), sigma.signs):
        mono = (k <= r) or (i > r)
        lo.append(s if mono else MINUS)
        hi.append(s if mono else PLUS)
    return Signotope(sigma.n, "".join(lo)), Signotope(sigma.n, "".join(hi))


@dataclass(frozen=True)
class BlockWitness:
    """Bichromatic triangles found from flip paths toward the extremal signotopes.

    ``minus`` is a '-' triangle (first flip toward the maximum), ``plus`` a
    '+' triangle (last flip coming up from the minimum).
    """

    minus: Optional[Triple]
    plus: Optional[Triple]
    faces: tuple[Face, ...]


def block_witness(sigma: Signotope, c: Coloring) -> BlockWitness:
    if sigma.n < 3:
        raise MalformedInputError("block witness needs n >= 3")
    lo, hi = extremal_signotopes(sigma, c)
    minus = plus = None
    if sigma != hi:
        minus = flip_path(sigma, hi).steps[0]
    if sigma != lo:
        plus = flip_path(lo, sigma).steps[-1]
    w = to_wiring(sigma)
    wanted = {frozenset(t) for t in (minus, plus) if t is not None}
    found = tuple(f for f in triangles(w) if f.support in wanted)
    return BlockWitness(minus, plus, found)


def is_block_bicolored(w: Union[WiringDiagram, Signotope], c: Coloring) -> bool:
    """True iff some choice of north face makes the reds a prefix of the numbering."""
    w = as_wiring(w)
    _check(w, c)
    n = w.n
    for m in range(2 * n):
        lab = relabeling(n, m)
        new = [""] * n
        for old, nw in lab.items():
            new[nw - 1] = c.colors[old - 1]
        if block_size(Coloring("".join(new))) is not None:
            return True
    return False


def extremal_line(w: Union[WiringDiagram, Signotope], line: int) -> bool:
    """True iff every crossing off ``line`` lies on the same side of it."""
    w = as_wiring(w)
    sides = {side_of(w, line, x) for x in w.crossings if line not in x.pair}
    return len(sides) <= 1


def extremal_lines(w: Union[WiringDiagram, Signotope]) -> list[int]:
    w = as_wiring(w)
    return [ln for ln in range(1, w.n + 1) if extremal_line(w, ln)]


# --- exhaustive checkers ---------------------------------------------------


def coloring_masks(n: int, max_red: Optional[int] = None) -> Iterator[int]:
    """Red masks of all nontrivial colorings up to swapping the two colors
    (line 1 is always blue). ``max_red`` keeps classes that contain a
    coloring with at most that many reds."""
    full = (1 << n) - 1
    for mask in range(2, full, 2):
        if max_red is not None:
            r = bin(mask).count("1")
            if min(r, n - r) > max_red:
                continue
        yield mask


def _tri_masks(sigma: Signotope) -> list[int]:
    return sorted(sum(1 << (x - 1) for x in t) for t in flippable_triples(sigma))


def _has_bichromatic(tri: list[int], red: int) -> bool:
    for t in tri:
        x = t & red
        if x and x != t:
            return True
    return False


@dataclass(frozen=True)
class Counterexample:
    sigma: Signotope
    coloring: Coloring

    def as_dict(self) -> dict:
        return {"n": self.sigma.n, "signs": self.sigma.signs, "coloring": self.coloring.colors}


def _bichromatic_worker(n: int, prefix: str, max_red: Optional[int]) -> list[Counterexample]:
    out = []
    masks = list(coloring_masks(n, max_red))
    for sigma in enumerate_all(n, limit=n, prefix=prefix):
        tri = _tri_masks(sigma)
        for m in masks:
            if not _has_bichromatic(tri, m):
                out.append(Counterexample(sigma, Coloring.from_mask(n, m)))
    return out


def _tri_quad_worker(n: int, prefix: str) -> list[Counterexample]:
    out = []
    masks = list(coloring_masks(n))
    for sigma in enumerate_all(n, limit=n, prefix=prefix):
        tri = _tri_masks(sigma)
        quads = None
        for m in masks:
            if _has_bichromatic(tri, m):
                continue
            if quads is None:
                quads = [sum(1 << (x - 1) for x in q.support) for q in quadrangles(to_wiring(sigma))]
            if not any(bin(q & m).count("1") == 2 for q in quads):
                out.append(Counterexample(sigma, Coloring.from_mask(n, m)))
    return out


def check_bichromatic_triangles(n: int, jobs: Optional[int] = 1, limit: Optional[int] = None) -> list[Counterexample]:
    """All (arrangement, coloring) pairs without a bichromatic bounded triangle."""
    if n < 3:
        return []
    return map_prefixes(_bichromatic_worker, n, jobs, limit, (None,))


def check_few_red_lines(n: int, jobs: Optional[int] = 1, limit: Optional[int] = None) -> list[Counterexample]:
    """As check_bichromatic_triangles, restricted to colorings with at most 5 red lines
    (up to swapping colors)."""
    if n < 3:
        return []
    return map_prefixes(_bichromatic_worker, n, jobs, limit, (5,))


def check_triangle_or_quadrangle(n: int, jobs: Optional[int] = 1, limit: Optional[int] = None) -> list[Counterexample]:
    """Pairs with neither a bichromatic triangle nor a 2+2 quadrangle."""
    if n < 3:
        return []
    return map_prefixes(_tri_quad_worker, n, jobs, limit)


def block_coloring_failures(sigma: Signotope, c: Coloring) -> list[str]:
    """Problems with the extremal-signotope argument for one block coloring."""
    probs = []
    lo, hi = extremal_signotopes(sigma, c)
    if not (lo.valid and hi.valid):
        return ["extremal signotope invalid"]
    if not (leq_inclusion(lo, sigma) and leq_inclusion(sigma, hi)):
        probs.append("sigma not between the extremal signotopes")
    wit = block_witness(sigma, c)
    flips = flippable_triples(sigma)
    for t, sign in ((wit.minus, MINUS), (wit.plus, PLUS)):
        if t is None:
            continue
        if t not in flips or sigma.sign(*t) != sign or len({c.color(x) for x in t}) != 2:
            probs.append(f"bad {sign} witness {t}")
    if wit.minus is None and wit.plus is None:
        probs.append("no witness")
    if sigma != lo and sigma != hi and (wit.minus is None or wit.plus is None):
        probs.append("strictly between but missing a witness")
    if len(wit.faces) != len({t for t in (wit.minus, wit.plus) if t is not None}):
        probs.append("witness triple is not a face")
    return probs


def _block_worker(n: int, prefix: str) -> list[tuple[Counterexample, list[str]]]:
    out = []
    for sigma in enumerate_all(n, limit=n, prefix=prefix):
        for r in range(1, n):
            c = Coloring(RED * r + BLUE * (n - r))
            p = block_coloring_failures(sigma, c)
            if p:
                out.append((Counterexample(sigma, c), p))
    return out


def check_block_colorings(n: int, jobs: Optional[int] = 1, limit: Optional[int] = None) -> list[Counterexample]:
    """Block colorings R^r B^(n-r) of every signotope where the extremal
    signotope argument breaks down. Every block-bicolored pair appears here
    since every marking of an arrangement is itself enumerated."""
    if n < 3:
        return []
    return [ce for ce, _ in map_prefixes(_block_worker, n, jobs, limit)]
