"""Named arrangements, each paired with a check of the properties it must have."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .coloring import BLUE, RED, Coloring, bichromatic_triangle, extremal_lines
from .errors import ColoringError, DegeneracyError, MalformedInputError, ParallelLinesError
from .geometry import (
    RationalLine,
    intersection,
    parse_lines,
    signotope_from_lines,
    signotope_from_polylines,
)
from .hypergraph import blue_cells
from .signotope import (
    Signotope,
    cyclic,
    extensions,
    flippable_triples,
    parse_signotope,
)
from .wiring import WiringDiagram, from_wiring, to_wiring, triangles

V3K1 = "3k+1"
V3K = "3k"
V3KM1 = "3k-1"
STAIRCASE_VARIANTS = (V3K1, V3K, V3KM1)

WITH_BLUE = "with_blue_crossings"
WITHOUT_BLUE = "without_blue_crossings"

MAX_TWO_THIRDS_K = 8


def _fixture(name: str) -> str:
    return resources.files("pslab").joinpath("fixtures", name).read_text()


# --- five-star ---------------------------------------------------------------


def five_star() -> Signotope:
    """The arrangement of five pseudolines without an extremal line."""
    s = parse_signotope(_fixture("five_star.sig"))
    if not s.valid or extremal_lines(s):
        raise AssertionError("five-star fixture fails its check")
    return s


# --- staircase ---------------------------------------------------------------


def _staircase_curves(k: int, variant: str) -> tuple[list[list[tuple[Fraction, Fraction]]], str]:
    """Polygonal curves in the plane for the staircase design.

    Blue q (q = 1..2k) is the L-shape (-inf, q) -> (q, q) -> (q, +inf); the
    blue cell of a point (u, v) is the interval of q with u < q < v.
    Red r (r = 0..k-1) is a Z-shape around x = k - r; the reds meet pairwise
    in the cell above the staircase and together with the extra red line
    cross every other blue cell. North is the direction (1, -1).
    """
    m = 2 * k
    big = Fraction(10 * m + 10)
    h = Fraction(1, 2)
    curves: list[list[tuple[Fraction, Fraction]]] = []
    colors = []
    for q in range(1, m + 1):
        if q == m and variant != V3K1:
            continue
        fq = Fraction(q)
        curves.append([(-big, fq), (fq, fq), (fq, big)])
        colors.append(BLUE)
    for r in range(k):
        x = Fraction(k - r)
        curves.append([(-big, x + k - h), (x - h, x + k - h), (x - h, x + h),
                       (x + k - h, x + h), (x + k - h, big)])
        colors.append(RED)
    if variant != V3KM1:
        y = m + Fraction(3, 4)
        curves.append([(-big, y), (m + h, y), (m + h, big)])
        colors.append(RED)
    return curves, "".join(colors)


def staircase_construction(k: int, variant: str = V3K1) -> tuple[Signotope, Coloring]:
    """2k (or 2k-1) blue pseudolines in staircase position plus red
    pseudolines meeting every blue cell, on 3k+1, 3k or 3k-1 lines."""
    if k < 1:
        raise MalformedInputError("k must be at least 1")
    if variant not in STAIRCASE_VARIANTS:
        raise MalformedInputError(f"variant must be one of {STAIRCASE_VARIANTS}")
    curves, colors = _staircase_curves(k, variant)
    sigma, order = signotope_from_polylines(curves, north=(1, -1))
    c = Coloring("".join(colors[i - 1] for i in order))
    return sigma, c


# --- straight-line constructions ---------------------------------------------


def _rat(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10 ** 12)


def _two_thirds_lines(k: int, eps: Fraction) -> tuple[list[RationalLine], str]:
    # blue: sides of a regular 2k-gon, normals at pi*j/k + pi/(4k) so no side
    # is vertical; opposite sides p.u = 1 and p.u = -1 share the exact normal
    blue: list[RationalLine] = []
    for j in range(k):
        a = math.pi * j / k + math.pi / (4 * k)
        c, s = _rat(math.cos(a)), _rat(math.sin(a))
        near = RationalLine(-c / s, 1 / s)
        far = RationalLine(-c / s, -1 / s)
        # tilt one of each parallel pair so the pair meets far to the left
        tau = eps * (1 + Fraction(j, 7))
        if near.intercept - far.intercept > 0:
            tau = -tau
        blue.extend([near, RationalLine(far.slope + tau, far.intercept)])
    # red: lines through the centre towards edge midpoints (k odd) or
    # polygon vertices (k even), rotated by eps and shifted by eps^2
    red: list[RationalLine] = []
    shift = 0.0 if k % 2 else math.pi / (2 * k)
    for j in range(k):
        a = math.pi * j / k + math.pi / (4 * k) + shift + float(eps)
        if abs(math.cos(a)) < 1e-9:
            raise DegeneracyError("red line would be vertical")
        red.append(RationalLine(_rat(math.tan(a)), eps * eps * Fraction(j + 1, 3)))
    # steep red line left of every blue-blue crossing (stands in for a vertical one)
    pts = [intersection(a, b) for a, b in itertools.combinations(blue, 2)]
    steep = Fraction(10 ** 6)
    ymax = max(abs(y) for _, y in pts) + 1
    x0 = min(x for x, _ in pts) - 1 - ymax / steep
    red.append(RationalLine(steep, -steep * x0))
    return blue + red, BLUE * len(blue) + RED * len(red)


def blue_cells_covered(sigma: Signotope, c: Coloring) -> bool:
    """Does every cell of the blue subarrangement contain a piece of a red line?

    Equivalent to the blue lines being independent in the line-face hypergraph."""
    w = to_wiring(sigma)
    cell, ncell = blue_cells(w, c.blues)
    hit = {cell[e.above] for e in w.sweep.edges if c.color(e.wire) == RED}
    return len(hit) == ncell


def colored_signotope(lines: list[RationalLine], c: Coloring) -> tuple[Signotope, Coloring]:
    """Convert lines and a coloring in input order to the marked signotope
    and the coloring in its numbering."""
    if len(lines) != c.n:
        raise ColoringError("coloring length does not match the number of lines")
    sigma, order = signotope_from_lines(lines)
    return sigma, Coloring("".join(c.colors[i - 1] for i in order))


def two_thirds_line_construction(k: int, variant: str = V3K1) -> tuple[list[RationalLine], Coloring]:
    """Straight lines: 2k blue sides of a regular 2k-gon, k red lines through
    its centre and one steep red line; 3k+1 lines with 2k independent blue.
    The 3k and 3k-1 variants drop one or two blue lines."""
    if not (2 <= k <= MAX_TWO_THIRDS_K):
        raise MalformedInputError(f"k must be in 2..{MAX_TWO_THIRDS_K}")
    if variant not in STAIRCASE_VARIANTS:
        raise MalformedInputError(f"variant must be one of {STAIRCASE_VARIANTS}")
    drop = {V3K1: 0, V3K: 1, V3KM1: 2}[variant]
    eps = Fraction(1, 10 ** 6)
    for _ in range(6):
        try:
            lines, colors = _two_thirds_lines(k, eps)
            nb = 2 * k - drop
            lines = lines[:nb] + lines[2 * k:]
            colors = colors[:nb] + colors[2 * k:]
            c = Coloring(colors)
            if blue_cells_covered(*colored_signotope(lines, c)):
                return lines, c
        except (DegeneracyError, ParallelLinesError):
            pass
        eps /= 10
    raise DegeneracyError(f"two-thirds construction failed for k={k}")


def small_matching_constructions(k: int) -> tuple[list[RationalLine], Coloring]:
    """Straight-line arrangements of 3k-1 lines with 2k-1 independent blue
    lines, for k = 3 (8 lines) and k = 4 (11 lines)."""
    if k not in (3, 4):
        raise MalformedInputError("k must be 3 or 4")
    lines = parse_lines(_fixture(f"matching_k{k}.lines"))
    c = Coloring.parse(_fixture(f"matching_k{k}.col"))
    if len(lines) != 3 * k - 1 or len(c.blues) != 2 * k - 1:
        raise AssertionError("matching fixture has the wrong size")
    if not blue_cells_covered(*colored_signotope(lines, c)):
        raise AssertionError("matching fixture fails its independence check")
    return lines, c


# --- recursive construction without red triangles ----------------------------


@dataclass(frozen=True)
class LogConstruction:
    """Labels: 1..d are the blue lines (newest first), d+1..n the red lines."""

    d: int
    variant: str
    wiring: WiringDiagram
    coloring: Coloring

    @property
    def n(self) -> int:
        return self.wiring.n

    @property
    def signotope(self) -> Optional[Signotope]:
        return from_wiring(self.wiring) if self.wiring.complete else None

    @property
    def red(self) -> tuple[int, ...]:
        return tuple(sorted(self.coloring.reds))

    @property
    def blue(self) -> tuple[int, ...]:
        return tuple(sorted(self.coloring.blues))


def _bundle(r: int) -> list[int]:
    """Swaps crossing a block of r wires with the block of r wires below it."""
    out = []
    for j in range(r):
        out.extend(range(r + j, j, -1))
    return out


def _log_tokens(d: int) -> tuple[int, list[tuple[str, int]]]:
    """Red count and token list for level d.

    Tokens are ('s', row) red-red swaps (rows counted within the red block)
    and ('b', j) for blue line j descending through the whole red block.
    """
    reds, toks = 1, [("b", 1)]
    for level in range(2, d + 1):
        segs: list[list[tuple[str, int]]] = [[]]
        blues = []
        for t in toks:
            if t[0] == "b":
                blues.append(t)
                segs.append([])
            else:
                segs[-1].append(t)
        new: list[tuple[str, int]] = []
        for i, seg in enumerate(segs):
            # the two copies run in parallel, aligned at the blue lines
            new += seg + [("s", r + reds) for _, r in seg]
            if i < len(blues):
                new.append(blues[i])
        new += [("s", r) for r in _bundle(reds)]
        new.append(("b", level))
        reds, toks = 2 * reds, new
    return reds, toks


def log_construction(d: int, variant: str = WITH_BLUE) -> LogConstruction:
    """d blue and 2^(d-1) red pseudolines with no all-red triangular face.

    Level d stacks two copies of level d-1 (sharing the blue lines), crosses
    the two red blocks, and adds one blue line through the red-red triangles
    that creates. Blue lines enter above all reds and descend through them;
    in the with-variant each then continues below the older blue lines, so
    every pair crosses. In the without-variant blue lines never cross.
    """
    if d < 1:
        raise MalformedInputError("d must be at least 1")
    if variant not in (WITH_BLUE, WITHOUT_BLUE):
        raise MalformedInputError(f"variant must be {WITH_BLUE} or {WITHOUT_BLUE}")
    reds, toks = _log_tokens(d)
    n = d + reds
    above = d
    word: list[int] = []
    for kind, val in toks:
        if kind == "s":
            word.append(val + above)
        else:
            word.extend(range(above, above + reds))
            above -= 1
            if variant == WITH_BLUE:
                word.extend(range(above + reds + 1, n))
    w = WiringDiagram(n, tuple(word), complete=(variant == WITH_BLUE))
    return LogConstruction(d, variant, w, Coloring(BLUE * d + RED * reds))


def red_triangle_faces(w: WiringDiagram, c: Coloring) -> list:
    """Triangular faces (bounded or not) supported by red lines only."""
    return [f for f in triangles(w, include_unbounded=True) if all(c.color(x) == RED for x in f.support)]


def boundary_color_changes(w: WiringDiagram, c: Coloring) -> int:
    """Color changes along the circular sequence of the 2n line ends."""
    rows = list(range(1, w.n + 1))
    for r in w.word:
        rows[r - 1], rows[r] = rows[r], rows[r - 1]
    seq = [c.color(x) for x in range(1, w.n + 1)] + [c.color(x) for x in reversed(rows)]
    return sum(1 for a, b in zip(seq, seq[1:] + seq[:1]) if a != b)


def blue_blue_crossings(w: WiringDiagram, c: Coloring) -> int:
    return sum(1 for x in w.crossings if all(c.color(y) == BLUE for y in x.pair))


def cyclic_extension_destroyed(m: int) -> int:
    """Largest number of bounded triangles of cyclic(m) that a single added
    pseudoline destroys, over all one-element extensions."""
    sigma = cyclic(m)
    tris = flippable_triples(sigma)
    worst = 0
    for p in range(1, m + 2):
        def up(x: int) -> int:
            return x if x < p else x + 1
        mapped = [tuple(up(x) for x in t) for t in tris]
        for ext in extensions(sigma, p):
            alive = flippable_triples(ext)
            worst = max(worst, sum(1 for t in mapped if t not in alive))
    return worst


# --- six-line open case ------------------------------------------------------


def six_line_open_case() -> Signotope:
    """An arrangement of six pseudolines without an extremal line."""
    s = parse_signotope(_fixture("six_lines.sig"))
    if s.n != 6 or not s.valid or extremal_lines(s):
        raise AssertionError("six-line fixture fails its check")
    return s


@dataclass(frozen=True)
class OpenCaseResult:
    depth: int
    arrangements: int  # distinct colored extensions examined at the last depth
    without_bichromatic: tuple[tuple[Signotope, Coloring], ...]


def open_case_search(depth: int, sigma: Optional[Signotope] = None,
                     coloring: Optional[Coloring] = None) -> OpenCaseResult:
    """Add ``depth`` blue pseudolines in every possible way to a red
    arrangement and report extensions lacking a bichromatic triangle."""
    if depth < 0:
        raise MalformedInputError("depth must be nonnegative")
    sigma = six_line_open_case() if sigma is None else sigma
    coloring = Coloring(RED * sigma.n) if coloring is None else coloring
    level = {(sigma, coloring)}
    for _ in range(depth):
        nxt = set()
        for s, c in level:
            for p in range(1, s.n + 2):
                cc = Coloring(c.colors[:p - 1] + BLUE + c.colors[p - 1:])
                for e in extensions(s, p):
                    nxt.add((e, cc))
        level = nxt
    ordered = sorted(level, key=lambda sc: (sc[0].signs, sc[1].colors))
    if any(not c.bicolored for _, c in ordered):
        raise ColoringError("arrangement is not bicolored; add at least one blue line")
    bad = tuple((s, c) for s, c in ordered if bichromatic_triangle(s, c) is None)
    return OpenCaseResult(depth, len(ordered), bad)
