"""Command-line interface: ``pslab <subcommand> ...``.

Exit codes: 0 success, 1 domain error (bad file content, failed check),
2 usage error (argparse).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import coloring as col
from . import constructions as cons
from . import hypergraph as hg
from .errors import MalformedInputError, PslabError
from .geometry import parse_lines, signotope_from_lines
from .parallel import default_jobs
from .signotope import (
    MINUS,
    Signotope,
    cyclic,
    enumerate_all,
    extensions,
    flip_path,
    parse_signotope,
    random_signotope,
    require_valid,
)
from .wiring import (
    WiringDiagram,
    all_markings,
    faces_json,
    quadrangles,
    render_svg,
    to_wiring,
    triangles,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None


def _load_sig(path: str) -> Signotope:
    s = parse_signotope(_read(path))
    require_valid(s)
    return s


def _load_coloring(path: Optional[str], n: int) -> Optional[col.Coloring]:
    if path is None:
        return None
    c = col.Coloring.parse(_read(path))
    if c.n != n:
        raise MalformedInputError(f"coloring has {c.n} entries for {n} lines")
    return c


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _face_rows(w: WiringDiagram, fs) -> list[dict]:
    cr = w.crossings
    return [{"support": sorted(f.support), "bounded": f.bounded,
             "boundary": [None if x is None else list(cr[x].pair) for x in f.boundary]} for f in fs]


def _face_table(rows: list[dict]) -> str:
    lines = []
    for r in rows:
        b = " ".join("inf" if x is None else f"{x[0]}-{x[1]}" for x in r["boundary"])
        kind = "bounded" if r["bounded"] else "unbounded"
        lines.append(f"{{{','.join(map(str, r['support']))}}}\t{kind}\t{b}")
    return "\n".join(lines)


# --- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    s = parse_signotope(_read(args.file))
    if s.valid:
        _emit(args, {"n": s.n, "valid": True}, f"valid signotope, n={s.n}")
        return 0
    _emit(args, {"n": s.n, "valid": False}, f"invalid signotope, n={s.n}")
    return 1


def cmd_gen(args) -> int:
    c = None
    kind = args.kind
    if kind == "cyclic":
        s = cyclic(_need(args.n, "--n"), args.sign)
    elif kind == "random":
        s = random_signotope(_need(args.n, "--n"), random.Random(args.seed))
    elif kind == "five-star":
        s = cons.five_star()
    elif kind == "six-lines":
        s = cons.six_line_open_case()
    elif kind == "staircase":
        s, c = cons.staircase_construction(_need(args.k, "--k"), args.variant or cons.V3K1)
    elif kind == "two-thirds":
        lines, c0 = cons.two_thirds_line_construction(_need(args.k, "--k"), args.variant or cons.V3K1)
        s, c = cons.colored_signotope(lines, c0)
    elif kind == "matching":
        lines, c0 = cons.small_matching_constructions(_need(args.k, "--k"))
        s, c = cons.colored_signotope(lines, c0)
    elif kind == "log":
        lc = cons.log_construction(_need(args.d, "--d"), cons.WITH_BLUE)
        s, c = lc.signotope, lc.coloring
    else:  # pragma: no cover - argparse restricts choices
        raise MalformedInputError(kind)
    require_valid(s)
    if c is not None and args.coloring_out:
        with open(args.coloring_out, "w", encoding="utf-8") as fh:
            fh.write(c.colors + "\n")
    data = {"n": s.n, "signs": s.signs}
    if c is not None:
        data["coloring"] = c.colors
    _emit(args, data, s.to_text().rstrip("\n"))
    return 0


def _need(v, flag: str):
    if v is None:
        raise MalformedInputError(f"{flag} is required for this generator")
    return v


def cmd_faces(args) -> int:
    w = to_wiring(_load_sig(args.file))
    rows = faces_json(w)
    _emit(args, rows, _face_table(rows))
    return 0


def cmd_triangles(args) -> int:
    w = to_wiring(_load_sig(args.file))
    rows = _face_rows(w, triangles(w, args.unbounded))
    _emit(args, rows, f"{len(rows)} triangles\n" + _face_table(rows))
    return 0


def cmd_quads(args) -> int:
    w = to_wiring(_load_sig(args.file))
    rows = _face_rows(w, quadrangles(w))
    _emit(args, rows, f"{len(rows)} quadrangles\n" + _face_table(rows))
    return 0


def cmd_flip_path(args) -> int:
    p = flip_path(_load_sig(args.low), _load_sig(args.high))
    steps = [list(t) for t in p.steps]
    _emit(args, {"length": len(steps), "steps": steps},
          f"{len(steps)} flips\n" + "\n".join(" ".join(map(str, t)) for t in steps))
    return 0


def cmd_extensions(args) -> int:
    s = _load_sig(args.file)
    exts = extensions(s, args.p)
    _emit(args, [{"n": e.n, "signs": e.signs} for e in exts],
          f"{len(exts)} extensions\n" + "\n".join(e.signs for e in exts))
    return 0


def cmd_markings(args) -> int:
    s = _load_sig(args.file)
    ms = all_markings(s)
    _emit(args, [{"north": m, "signs": x.signs} for m, x in enumerate(ms)],
          "\n".join(f"{m}\t{x.signs}" for m, x in enumerate(ms)))
    return 0


def cmd_lines2sig(args) -> int:
    lines = parse_lines(_read(args.file))
    s, order = signotope_from_lines(lines)
    data = {"n": s.n, "signs": s.signs, "relabeling": order}
    if args.coloring:
        c = _load_coloring(args.coloring, len(lines))
        data["coloring"] = "".join(c.colors[i - 1] for i in order)
    _emit(args, data, s.to_text().rstrip("\n"))
    return 0


def cmd_color_check(args) -> int:
    s = _load_sig(args.file)
    c = _load_coloring(args.coloring, s.n)
    w = to_wiring(s)
    data: dict = {"n": s.n, "coloring": c.colors, "bicolored": c.bicolored,
                  "extremal_lines": col.extremal_lines(w)}
    if c.bicolored:
        tri = col.bichromatic_triangle(w, c)
        toq = col.bichromatic_tri_or_quad(w, c)
        data["bichromatic_triangle"] = sorted(tri.support) if tri else None
        data["tri_or_quad"] = None if toq is None else {
            "kind": toq.kind, "support": sorted(toq.face.support), "pattern": toq.pattern}
        data["block_bicolored"] = col.is_block_bicolored(w, c)
    text = "\n".join(f"{k}: {v}" for k, v in sorted(data.items()))
    _emit(args, data, text)
    return 0


CHECKS = ("bichromatic", "connectivity", "few-red", "block", "tri-or-quad")


def cmd_check(args) -> int:
    n, jobs, lim = args.n, args.jobs, args.limit_n
    if args.which == "bichromatic":
        bad = [x.as_dict() for x in col.check_bichromatic_triangles(n, jobs, lim)]
    elif args.which == "few-red":
        bad = [x.as_dict() for x in col.check_few_red_lines(n, jobs, lim)]
    elif args.which == "tri-or-quad":
        bad = [x.as_dict() for x in col.check_triangle_or_quadrangle(n, jobs, lim)]
    elif args.which == "block":
        bad = [x.as_dict() for x in col.check_block_colorings(n, jobs, lim)]
    else:
        bad = [{"n": s.n, "signs": s.signs} for s in hg.check_incidence_connectivity(n, jobs, lim)]
    total = sum(1 for _ in enumerate_all(n, limit=lim))
    _emit(args, {"check": args.which, "n": n, "arrangements": total, "counterexamples": bad},
          f"{len(bad)} counterexamples / {total} arrangements")
    return 0 if not bad else 1


def _hypergraph(args) -> hg.Hypergraph:
    if args.hypergraph:
        return hg.Hypergraph.from_json(_read(args.hypergraph))
    if not args.file:
        raise MalformedInputError("give a signotope file or --hypergraph")
    w = to_wiring(_load_sig(args.file))
    return hg.line_face_hypergraph(w) if args.mode == hg.FACE else hg.line_triangle_hypergraph(w)


def cmd_alpha(args) -> int:
    h = _hypergraph(args)
    a, wit = hg.independence_number(h)
    _emit(args, {"alpha": a, "witness": list(wit), "n": h.n}, f"alpha = {a}\nwitness: {' '.join(map(str, wit))}")
    return 0


def cmd_chi(args) -> int:
    h = _hypergraph(args)
    k, colors = hg.chromatic_number(h)
    _emit(args, {"chi": k, "coloring": list(colors), "n": h.n}, f"chi = {k}\ncoloring: {' '.join(map(str, colors))}")
    return 0


def cmd_max_alpha(args) -> int:
    a, s, wit = hg.max_alpha_over_arrangements(args.n, args.mode, args.jobs, args.limit_n)
    _emit(args, {"n": args.n, "mode": args.mode, "alpha": a, "signs": s.signs, "witness": list(wit)},
          f"max alpha = {a}\nwitness arrangement: {s.signs}\nwitness set: {' '.join(map(str, wit))}")
    return 0


def cmd_oneface(args) -> int:
    s = _load_sig(args.file)
    if args.coloring:
        blue = sorted(_load_coloring(args.coloring, s.n).blues)
    elif args.blue:
        try:
            blue = sorted(int(x) for x in args.blue.split(","))
        except ValueError:
            raise MalformedInputError("--blue must be a comma-separated list of integers") from None
    else:
        raise MalformedInputError("give --blue or --coloring")
    rep = hg.oneface_check(to_wiring(s), blue)
    _emit(args, {"ok": rep.ok, "cells": rep.cell_count, "common_cell": rep.common_cell,
                 "crossings_per_cell": list(rep.crossings_per_cell), "message": rep.message},
          f"{'ok' if rep.ok else 'FAILED'}: {rep.message} ({rep.cell_count} blue cells)")
    return 0 if rep.ok else 1


def cmd_open_case(args) -> int:
    s = _load_sig(args.file) if args.file else cons.six_line_open_case()
    c = _load_coloring(args.coloring, s.n)
    r = cons.open_case_search(args.depth, s, c)
    bad = [{"signs": x.signs, "coloring": y.colors} for x, y in r.without_bichromatic]
    _emit(args, {"depth": r.depth, "arrangements": r.arrangements, "without_bichromatic": bad},
          f"depth {r.depth}: {r.arrangements} colored extensions, {len(bad)} without a bichromatic triangle")
    return 0


def cmd_render(args) -> int:
    s = _load_sig(args.file)
    c = _load_coloring(args.coloring, s.n)
    svg = render_svg(to_wiring(s), c)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pslab", description="Pseudoline arrangements as signotopes.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file_arg=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if file_arg:
            sp.add_argument("file", help="signotope file ('-' for stdin)")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the 4-subset condition")
    g = add("gen", cmd_gen, "generate a signotope", file_arg=False)
    g.add_argument("kind", choices=["cyclic", "random", "five-star", "six-lines", "staircase",
                                    "two-thirds", "matching", "log"])
    g.add_argument("--n", type=int)
    g.add_argument("--sign", choices=["-", "+"], default=MINUS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--variant", choices=list(cons.STAIRCASE_VARIANTS))
    g.add_argument("--coloring-out", help="write the construction's coloring here")
    add("faces", cmd_faces, "list all faces")
    t = add("triangles", cmd_triangles, "list triangular faces")
    t.add_argument("--unbounded", action="store_true", help="include unbounded triangles")
    add("quads", cmd_quads, "list bounded quadrangles")
    fp = add("flip-path", cmd_flip_path, "flip sequence between comparable signotopes", file_arg=False)
    fp.add_argument("low")
    fp.add_argument("high")
    e = add("extensions", cmd_extensions, "one-element extensions")
    e.add_argument("--p", type=int, required=True, help="insertion position 1..n+1")
    add("markings", cmd_markings, "all 2n markings")
    l2 = add("lines2sig", cmd_lines2sig, "convert a lines file")
    l2.add_argument("--coloring")
    cc = add("color-check", cmd_color_check, "bichromatic queries for a coloring")
    cc.add_argument("coloring")
    ch = sub.add_parser("check", help="exhaustive checks")
    ch.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    ch.add_argument("which", choices=CHECKS)
    ch.add_argument("--n", type=int, required=True)
    ch.add_argument("--jobs", type=int, default=default_jobs())
    ch.add_argument("--limit-n", type=int)
    ch.set_defaults(func=cmd_check)
    for name, func in (("alpha", cmd_alpha), ("chi", cmd_chi)):
        a = sub.add_parser(name, help=f"exact {name} of a hypergraph")
        a.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        a.add_argument("file", nargs="?")
        a.add_argument("--mode", choices=[hg.FACE, hg.TRIANGLE], default=hg.FACE)
        a.add_argument("--hypergraph", help="hypergraph JSON file instead of a signotope")
        a.set_defaults(func=func)
    ma = sub.add_parser("max-alpha", help="maximum alpha over all arrangements")
    ma.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    ma.add_argument("--n", type=int, required=True)
    ma.add_argument("--mode", choices=[hg.FACE, hg.TRIANGLE], default=hg.FACE)
    ma.add_argument("--jobs", type=int, default=default_jobs())
    ma.add_argument("--limit-n", type=int)
    ma.set_defaults(func=cmd_max_alpha)
    of = add("oneface", cmd_oneface, "one-cell structure for n = 3k-1")
    of.add_argument("--blue", help="comma-separated blue lines")
    of.add_argument("--coloring")
    oc = sub.add_parser("open-case", help="add blue lines to a red arrangement")
    oc.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    oc.add_argument("file", nargs="?", help="red arrangement (default: the six-line case)")
    oc.add_argument("--coloring")
    oc.add_argument("--depth", type=int, default=1)
    oc.set_defaults(func=cmd_open_case)
    r = add("render", cmd_render, "SVG wiring diagram")
    r.add_argument("--coloring")
    r.add_argument("-o", "--output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PslabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point returning the exit code (argparse usage errors give 2)."""
    try:
        return main(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
