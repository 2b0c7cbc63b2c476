"""Exact rational geometry: straight lines and polygonal pseudolines to signotopes.

All predicates use :class:`fractions.Fraction`; degenerate input is detected
and reported, never rounded away.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DegeneracyError, MalformedInputError, ParallelLinesError
from .signotope import MINUS, PLUS, Signotope, triples

Number = Union[int, Fraction]
Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RationalLine:
    """The non-vertical line y = slope * x + intercept."""

    slope: Fraction
    intercept: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    def at(self, x: Number) -> Fraction:
        return self.slope * x + self.intercept

    def to_text(self) -> str:
        s, b = self.slope, self.intercept
        return f"{s.numerator} {s.denominator} {b.numerator} {b.denominator}"

    @classmethod
    def through(cls, p: Point, q: Point) -> "RationalLine":
        (x1, y1), (x2, y2) = p, q
        if x1 == x2:
            raise MalformedInputError("vertical lines are not representable")
        s = Fraction(y2 - y1) / (x2 - x1)
        return cls(s, y1 - s * x1)


def intersection(a: RationalLine, b: RationalLine) -> Point:
    if a.slope == b.slope:
        raise ParallelLinesError(f"parallel lines: slope {a.slope}")
    x = (b.intercept - a.intercept) / (a.slope - b.slope)
    return (x, a.at(x))


def signotope_from_lines(lines: Sequence[RationalLine]) -> tuple[Signotope, list[int]]:
    """Signotope of a generic line arrangement.

    Lines are renumbered 1..n by increasing slope; the returned list maps each
    new label (position) to the 1-based index of the input line.
    sign(i,j,k) is '-' iff line j passes strictly above the crossing of i and k.
    """
    n = len(lines)
    if n == 0:
        raise MalformedInputError("no lines given")
    order = sorted(range(n), key=lambda i: lines[i].slope)
    ls = [lines[i] for i in order]
    for a, b in zip(ls, ls[1:]):
        if a.slope == b.slope:
            raise ParallelLinesError(f"two lines with slope {a.slope}")
    out = []
    for i, j, k in triples(n):
        x, y = intersection(ls[i - 1], ls[k - 1])
        yj = ls[j - 1].at(x)
        if yj == y:
            raise DegeneracyError(f"lines {order[i-1]+1}, {order[j-1]+1}, {order[k-1]+1} are concurrent")
        out.append(MINUS if yj > y else PLUS)
    return Signotope(n, "".join(out)), [i + 1 for i in order]


def parse_lines(text: str) -> list[RationalLine]:
    """Lines file: four integers per line, slope and intercept as fractions.
    Blank lines and lines starting with '#' are ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 4:
            raise MalformedInputError(f"line {lineno}: expected 4 integers, got {len(parts)} fields")
        try:
            sn, sd, bn, bd = (int(p) for p in parts)
        except ValueError:
            raise MalformedInputError(f"line {lineno}: non-integer field") from None
        if sd == 0 or bd == 0:
            raise MalformedInputError(f"line {lineno}: zero denominator")
        out.append(RationalLine(Fraction(sn, sd), Fraction(bn, bd)))
    if not out:
        raise MalformedInputError("lines file is empty")
    return out


def format_lines(lines: Iterable[RationalLine]) -> str:
    return "".join(line.to_text() + "\n" for line in lines)


# --- polygonal pseudolines -------------------------------------------------


def _cross(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _segment_hit(p1: Point, p2: Point, q1: Point, q2: Point) -> Optional[tuple[Fraction, Fraction]]:
    """Parameters (s, t) of a transversal crossing of two segments, if any.

    Raises on touching, collinear overlap, or crossings at segment endpoints
    (which would make the crossing order ambiguous).
    """
    r = _sub(p2, p1)
    s = _sub(q2, q1)
    den = _cross(r, s)
    qp = _sub(q1, p1)
    if den == 0:
        if _cross(qp, r) == 0:
            # collinear: overlap check along r
            rr = r[0] * r[0] + r[1] * r[1]
            t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
            t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
            if max(t0, t1) >= 0 and min(t0, t1) <= 1:
                raise DegeneracyError("collinear overlapping segments")
        return None
    t = _cross(qp, s) / den
    u = _cross(qp, r) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        if t in (0, 1) or u in (0, 1):
            raise DegeneracyError("curves meet at a polyline vertex")
        return t, u
    return None


def _half(d: Point, north: Point) -> int:
    """0 if direction d is in [north, north rotated by 180 deg), else 1 (ccw)."""
    c = _cross(north, d)
    if c > 0:
        return 0
    if c < 0:
        return 1
    dot = north[0] * d[0] + north[1] * d[1]
    return 0 if dot > 0 else 1


def signotope_from_polylines(curves: Sequence[Sequence[tuple[Number, Number]]],
                             north: tuple[Number, Number] = (0, 1)) -> tuple[Signotope, list[int]]:
    """Signotope of an arrangement of polygonal pseudolines.

    Each curve is a point list whose first and last segments are read as
    rays. ``north`` is a direction pointing into the unbounded face chosen as
    north; it must not be parallel to any ray. Curves are numbered by the
    counterclockwise order of their ends starting from north, and each curve
    is traversed from that first end. Returns the signotope and, per new
    label, the 1-based index of the input curve.
    """
    n = len(curves)
    pts = []
    for c in curves:
        cur: list[Point] = []
        for x, y in c:
            q = (Fraction(x), Fraction(y))
            if not cur or cur[-1] != q:  # drop zero-length segments
                cur.append(q)
        pts.append(cur)
    if any(len(c) < 2 for c in pts):
        raise MalformedInputError("every curve needs at least two points")
    nvec = (Fraction(north[0]), Fraction(north[1]))
    # crossings: hits[a][b] = parameter of the crossing with b along a
    hits: list[dict[int, tuple[int, Fraction]]] = [dict() for _ in range(n)]
    for a, b in itertools.combinations(range(n), 2):
        found = []
        for i in range(len(pts[a]) - 1):
            for j in range(len(pts[b]) - 1):
                h = _segment_hit(pts[a][i], pts[a][i + 1], pts[b][j], pts[b][j + 1])
                if h is not None:
                    found.append(((i, h[0]), (j, h[1])))
        if len(found) != 1:
            raise DegeneracyError(f"curves {a + 1} and {b + 1} cross {len(found)} times")
        hits[a][b], hits[b][a] = found[0]
    ends = []  # (curve, is_last_end, point, direction)
    for c, p in enumerate(pts):
        ends.append((c, False, p[0], _sub(p[0], p[1])))
        ends.append((c, True, p[-1], _sub(p[-1], p[-2])))
    for e in ends:
        if _cross(nvec, e[3]) == 0 and nvec[0] * e[3][0] + nvec[1] * e[3][1] > 0:
            raise DegeneracyError("north direction coincides with a ray direction")

    def cmp(e1, e2) -> int:
        d1, d2 = e1[3], e2[3]
        h1, h2 = _half(d1, nvec), _half(d2, nvec)
        if h1 != h2:
            return h1 - h2
        c = _cross(d1, d2)
        if c != 0:
            return -1 if c > 0 else 1
        # parallel rays: order by offset along the left normal of the direction
        nrm = (-d1[1], d1[0])
        o1 = e1[2][0] * nrm[0] + e1[2][1] * nrm[1]
        o2 = e2[2][0] * nrm[0] + e2[2][1] * nrm[1]
        if o1 == o2:
            raise DegeneracyError("two rays share a supporting line")
        return -1 if o1 < o2 else 1

    ordered = sorted(ends, key=functools.cmp_to_key(cmp))
    first = ordered[:n]
    if len({e[0] for e in first}) != n:
        raise DegeneracyError("ray ends are not antipodally interleaved")
    label = {e[0]: k + 1 for k, e in enumerate(first)}
    from_last = {e[0]: e[1] for e in first}
    seq: dict[int, list[int]] = {}
    for c in range(n):
        keyed = sorted(hits[c].items(), key=lambda kv: kv[1], reverse=from_last[c])
        seq[label[c]] = [label[b] for b, _ in keyed]
    rank = {j: {x: p for p, x in enumerate(s)} for j, s in seq.items()}
    out = "".join(MINUS if rank[j][i] < rank[j][k] else PLUS for i, j, k in triples(n))
    sigma = Signotope(n, out)
    if not sigma.valid:
        raise DegeneracyError("curves do not form a pseudoline arrangement")
    inverse = {v: c + 1 for c, v in label.items()}
    return sigma, [inverse[k] for k in range(1, n + 1)]


def lines_to_polylines(lines: Sequence[RationalLine]) -> list[list[Point]]:
    """Clip lines to a box containing every crossing, as two-point curves."""
    xs = [abs(intersection(a, b)[0]) for a, b in itertools.combinations(lines, 2)]
    X = (max(xs) if xs else Fraction(0)) + 1
    return [[(-X, ln.at(-X)), (X, ln.at(X))] for ln in lines]
