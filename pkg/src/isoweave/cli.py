"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 no feasible colouring.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import colouring as col
from . import lattice, render, surfaces
from .fabric import (
    Design,
    DesignError,
    double,
    enumerate_one_per_order,
    hangs_together,
    make_satin,
    make_twill,
    parse_design,
    serialize_design,
    twillin_611,
)
from .symmetry import (
    NotApplicable,
    NotIsonemal,
    PeriodBoundError,
    classify_species,
    enumerate_symmetries,
    is_isonemal,
    lattice_unit_of,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def split_pattern_text(text: str) -> tuple[str, list[str]]:
    """Separate ``stripe ...`` lines from design rows, keeping line numbers for errors."""
    design_lines, stripes = [], []
    for line in text.splitlines():
        if line.strip().startswith("stripe"):
            stripes.append(line.strip())
            design_lines.append("%")
        else:
            design_lines.append(line)
    return "\n".join(design_lines), stripes


def read_pattern(path: str) -> tuple[Design, list[col.Striping]]:
    design_text, stripes = split_pattern_text(_read(path))
    return parse_design(design_text), [col.parse_striping(s) for s in stripes]


def _square(d: Design) -> Design:
    if d.rows != d.cols:
        raise UsageError(f"an order-n command needs a square design, got {d.rows}x{d.cols}")
    return d


# -- subcommands ------------------------------------------------------------------------


def cmd_generate(args, out) -> int:
    kind = args.kind
    if kind == "twill":
        if len(args.params) not in (1, 2):
            raise UsageError("usage: generate twill <order> [<shift>]")
        d = make_twill(*args.params)
    elif kind == "satin":
        if len(args.params) != 2:
            raise UsageError("usage: generate satin <n> <s>")
        d = make_satin(*args.params)
    elif kind == "twillin":
        if args.params and args.params != [6]:
            raise UsageError("only the order-6 twillin 6-1-1 is available")
        d = twillin_611()
    else:  # double
        if args.source is None:
            raise UsageError("usage: generate double --from <design>")
        src, _ = read_pattern(args.source)
        d = double(src)
    out.write(serialize_design(d))
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    d, _ = read_pattern(args.design)
    g = enumerate_symmetries(d)
    report = {
        "rows": d.rows,
        "cols": d.cols,
        "hangs_together": hangs_together(d),
        "isonemal": is_isonemal(d),
        "group": g.to_dict(),
        "species": None,
        "lattice_unit": None,
    }
    try:
        sp = classify_species(d)
        report["species"] = sp.to_dict()
    except NotIsonemal:
        pass
    try:
        report["lattice_unit"] = lattice_unit_of(g).to_dict()
    except NotApplicable:
        pass
    json.dump(report, out, indent=2, ensure_ascii=False, sort_keys=True)
    out.write("\n")
    return EXIT_OK


def _emit_colourings(out, d: Design, found, header: str) -> None:
    out.write(serialize_design(d))
    out.write(f"% {header}\n")
    for c in found:
        out.write(f"% anchor={c.anchor[0]},{c.anchor[1]} base={c.base} orientation={c.orientation}\n")
        out.write(c.striping.to_descriptor() + "\n")


def cmd_colour(args, out) -> int:
    d = _square(read_pattern(args.design)[0])
    try:
        if args.scheme == "satin-thin":
            scan = col.satin_anchor_scan(d)
            if args.all_anchors:
                for c in scan:
                    out.write(f"% anchor={c.anchor[0]},{c.anchor[1]} base={c.base} "
                              f"subgroup={c.subgroup} perfect={c.perfect}\n")
            found = [c for c in scan if c.subgroup and c.perfect]
        elif args.scheme == "satin-thick":
            fam_a, fam_b = col.thick_satin_colourings(d)
            found = fam_a + fam_b
        else:
            ok, why = col.twillin_admissible(enumerate_symmetries(d))
            if not ok:
                raise col.Rejected(why)
            found = col.twillin_colourings(d)
    except col.Rejected as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    if not found:
        sys.stderr.write(f"infeasible: no {args.scheme} colouring is perfect on this design\n")
        return EXIT_INFEASIBLE
    _emit_colourings(out, d, found, f"{len(found)} perfect {args.scheme} colouring(s)")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    d, stripes = read_pattern(args.design)
    if args.striping is not None:
        text = args.striping
        if not text.strip().startswith("stripe"):
            _, stripes = split_pattern_text(_read(text))
            stripes = [col.parse_striping(s) for s in stripes]
        else:
            stripes = [col.parse_striping(text)]
    if not stripes:
        raise UsageError("no striping given: pass a descriptor or a file containing 'stripe ...' lines")
    status = EXIT_OK
    g = enumerate_symmetries(d)
    for s in stripes:
        result = col.is_perfect(col.Pattern(d, s), g)
        out.write(f"{s.to_descriptor()}\n{result.to_text()}")
        if not result.passed:
            status = EXIT_FAIL
    return status


def cmd_enumerate(args, out) -> int:
    if args.family != "one-per-order":
        raise UsageError(f"unknown family {args.family!r}")
    designs = enumerate_one_per_order(args.order)
    out.write(f"% {len(designs)} isonemal one-per-order design(s) of order {args.order}\n")
    for k, d in enumerate(designs):
        if k:
            out.write("\n")
        out.write(serialize_design(d))
    return EXIT_OK


def cmd_corners(args, out) -> int:
    rows = [c.row() for c in lattice.eligible_corners(args.radius)]
    if args.eligible_only:
        rows = [r for r in rows if r["eligible"]]
    fields = ["x", "y", "eligible", "reasons", "m", "n", "area"]
    if args.csv:
        import csv

        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return EXIT_OK
    out.write(f"{'x':>4} {'y':>4} {'eligible':>8}  {'reasons':<12} {'m':>4} {'n':>4} {'area':>6}\n")
    for r in rows:
        out.write(f"{r['x']:>4} {r['y']:>4} {str(r['eligible']):>8}  {r['reasons'] or '-':<12} "
                  f"{r['m']:>4} {r['n']:>4} {r['area']:>6}\n")
    spectrum = lattice.area_spectrum(args.radius)
    out.write("% eligible areas (orientations): "
              + ", ".join(f"{a}({k})" for a, k in spectrum) + "\n")
    return EXIT_OK


def _pick(stripes, index):
    if not stripes:
        return None
    if not 0 <= index < len(stripes):
        raise UsageError(f"striping index {index} out of range (file has {len(stripes)})")
    return stripes[index]


def cmd_torus(args, out) -> int:
    d, stripes = read_pattern(args.pattern)
    pat = col.Pattern(d, _pick(stripes, args.index))
    if args.oblique is None:
        spec = surfaces.torus_period(pat)
    else:
        try:
            unit = lattice_unit_of(enumerate_symmetries(d))
        except NotApplicable as exc:
            raise UsageError(str(exc)) from exc
        try:
            spec = surfaces.oblique_torus_census(pat, unit, args.oblique)
        except surfaces.MultiplierTooSmall as exc:
            sys.stderr.write(f"infeasible: {exc}\n")
            return EXIT_INFEASIBLE
    out.write(spec.to_csv() if args.csv else spec.to_table())
    return EXIT_OK


def cmd_render(args, out) -> int:
    d, stripes = read_pattern(args.input)
    s = _pick(stripes, args.index)
    if s is not None:
        svg = render.render_pattern(col.Pattern(d, s), args.side)
    else:
        g = enumerate_symmetries(d) if args.markers else None
        svg = render.render_design(d, g)
    if args.output in (None, "-"):
        out.write(svg)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


# -- wiring ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isoweave", description="Isonemal weave designs and perfect colourings.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("generate", help="write a design")
    g.add_argument("kind", choices=["twill", "satin", "double", "twillin"])
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--from", dest="source", metavar="DESIGN", help="design to double ('-' for stdin)")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="symmetry group, isonemality and species as JSON")
    a.add_argument("design")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("colour", aliases=["color"], help="search perfect stripings")
    c.add_argument("design")
    c.add_argument("--scheme", required=True, choices=["satin-thin", "satin-thick", "twillin"])
    c.add_argument("--all-anchors", action="store_true", help="also list every placement tried")
    c.set_defaults(func=cmd_colour)

    v = sub.add_parser("verify", help="check that stripings are perfect colourings")
    v.add_argument("design", help="design or pattern file")
    v.add_argument("striping", nargs="?", help="descriptor or file of 'stripe' lines")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="list designs of a family")
    e.add_argument("family", choices=["one-per-order"])
    e.add_argument("order", type=int)
    e.set_defaults(func=cmd_enumerate)

    k = sub.add_parser("corners", help="candidate level-1 corners on the order-5 satin lattice")
    k.add_argument("--radius", type=int, required=True)
    k.add_argument("--csv", action="store_true")
    k.add_argument("--eligible-only", action="store_true")
    k.set_defaults(func=cmd_corners)

    t = sub.add_parser("torus", help="strand census after identifying a period region")
    t.add_argument("pattern")
    t.add_argument("--oblique", type=int, metavar="K", help="use a K x K square of lattice units")
    t.add_argument("--index", type=int, default=0, help="which stripe line to use")
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_torus)

    r = sub.add_parser("render", help="write SVG")
    r.add_argument("input", help="design or pattern file")
    r.add_argument("--side", choices=["obverse", "reverse"], default="obverse")
    r.add_argument("--markers", action="store_true", help="draw symmetry features on a design")
    r.add_argument("--index", type=int, default=0)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, DesignError, col.StripingError, lattice.HypothesisError,
            render.PaletteError, PeriodBoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
