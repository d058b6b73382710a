"""Command-line surface: JSON in, JSON/SVG out.

Exit codes: 0 success, 1 I/O or malformed-file errors, 2 precondition
violations (including a factorization whose status is not "ok").
Diagnostics go to stderr; data goes to the declared output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import cone, mbm, mukai, render, symplectic, torus
from .errors import PreconditionError
from .lattice import load_lattice
from .rational import frac_str, parse_frac, parse_vector, vector_strs


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(obj, out: str | None):
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _load_point(spec_text: str):
    """A point is either inline coordinates "a,b,c" or a JSON file path."""
    if "," in spec_text:
        return parse_vector(spec_text)
    with open(spec_text, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        return tuple(parse_frac(c) for c in doc["point"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"{spec_text}: expected a 'point' array") from exc


def _named_classes(lattice, path: str | None) -> dict:
    names = {name: tuple(int(i == j) for j in range(lattice.rank))
             for i, name in enumerate(lattice.basis_names)}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        for key, coords in doc.items():
            names[key] = tuple(int(c) for c in coords)
    return names


def _cmd_classify(args) -> int:
    lattice = load_lattice(args.lattice)
    table = mbm.load_table(args.table)
    coords = tuple(int(c) for c in parse_vector(getattr(args, "class")))
    sig = mbm.classify(lattice, table, coords)
    if sig is None:
        _emit_json({"orbit": None}, args.out)
        return 0
    _emit_json({
        "orbit": sig.name,
        "square": sig.square,
        "divisibility": sig.divisibility,
        "codimension": sig.codimension,
    }, args.out)
    return 0


def _cmd_dual_solve(args) -> int:
    lattice = load_lattice(args.lattice)
    names = _named_classes(lattice, args.classes)
    constraints = []
    for pair in args.pair:
        key, _, value = pair.partition("=")
        key = key.strip()
        if not value:
            raise PreconditionError(f"constraint {pair!r} is not of the form NAME=VALUE")
        if key in names:
            cls = names[key]
        elif "," in key:
            cls = tuple(int(c) for c in parse_vector(key))
        else:
            raise PreconditionError(f"unknown class name {key!r}")
        constraints.append((cls, parse_frac(value.strip())))
    x = mbm.dual_solve(lattice, constraints)
    primitive, scale = mbm.primitive_rescale(x)
    _emit_json({
        "vector": vector_strs(x),
        "primitive": list(primitive),
        "scale": frac_str(scale),
    }, args.out)
    return 0


def _cmd_enumerate(args) -> int:
    lattice = load_lattice(args.lattice)
    table = mbm.load_table(args.table)
    base = parse_vector(args.base)
    walls = cone.enumerate_wall_classes(lattice, table, base, parse_frac(args.bound))
    _emit_json({
        "walls": [
            {
                "class": list(x),
                "square": sig.square,
                "divisibility": sig.divisibility,
                "codimension": sig.codimension,
                "orbit": sig.name,
            }
            for x, sig in walls
        ]
    }, args.out)
    return 0


def _cmd_factor_path(args) -> int:
    lattice = load_lattice(args.lattice)
    table = mbm.load_table(args.table)
    a = _load_point(getattr(args, "from"))
    b = _load_point(args.to)
    result = cone.factor_path(lattice, table, a, b, parse_frac(args.bound))
    _emit(cone.report_to_json(result), args.out)
    if result.status != cone.STATUS_OK:
        print(f"factorization status: {result.status}", file=sys.stderr)
        return 2
    return 0


def _cmd_render(args) -> int:
    lattice = load_lattice(args.lattice)
    table = mbm.load_table(args.table)
    base = parse_vector(args.base)
    path = None
    if args.path is not None:
        with open(args.path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        path = cone.FlopFactorization(
            a=tuple(parse_frac(c) for c in doc["a"]),
            b=tuple(parse_frac(c) for c in doc["b"]),
            steps=(), groups=(), status=doc.get("status", "ok"),
            perturbed=bool(doc.get("perturbed", False)),
        )
    markers = []
    for mark in args.mark or ():
        coords_text, _, label = mark.partition(":")
        markers.append((parse_vector(coords_text), label or coords_text))
    cusps = [parse_vector(c) for c in args.cusp or ()]
    scene = render.build_scene(lattice, table, base, parse_frac(args.bound),
                               markers=markers, cusps=cusps, path=path)
    render.render_svg(scene, args.out)
    return 0


def _cmd_mukai_flop(args) -> int:
    u = parse_vector(args.u)
    phi = parse_vector(args.phi)
    if args.k is not None and len(u) != args.k + 1:
        raise PreconditionError(f"u must have k+1 = {args.k + 1} entries")
    point = mukai.make_point(u, phi)
    image = mukai.flop(point)
    _emit_json({
        "phi": vector_strs(image.phi),
        "Astar": [vector_strs(row) for row in image.b],
    }, args.out)
    return 0


def _cmd_symp_rank(args) -> int:
    with open(args.omega, "r", encoding="utf-8") as fh:
        omega_doc = json.load(fh)
    with open(args.basis, "r", encoding="utf-8") as fh:
        basis_doc = json.load(fh)
    space = symplectic.symplectic_space(
        [[parse_frac(c) for c in row] for row in omega_doc["omega"]])
    w = symplectic.subspace(
        [[parse_frac(c) for c in row] for row in basis_doc["basis"]])
    _emit_json({
        "rank": symplectic.restriction_rank(space, w),
        "isotropic": symplectic.is_isotropic(space, w),
        "coisotropic": symplectic.is_coisotropic(space, w),
    }, args.out)
    return 0


_IRRATIONAL = {"sqrt2": math.sqrt(2), "sqrt3": math.sqrt(3), "sqrt5": math.sqrt(5)}


def _torus_point(text: str, real: bool) -> torus.TorusPoint:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise PreconditionError(f"torus points have two coordinates: {text!r}")
    if not real:
        return torus.exact_point(parse_frac(parts[0]), parse_frac(parts[1]))
    coords = []
    irrational = False
    for p in parts:
        if p in _IRRATIONAL:
            coords.append(_IRRATIONAL[p])
            irrational = True
        else:
            coords.append(float(parse_frac(p)))
    return torus.real_point(coords[0], coords[1], irrational=irrational)


def _cmd_sigma_orbit(args) -> int:
    real = args.real
    fiber = torus.MarkedFiber(
        e0=_torus_point(args.e0, real),
        e1=_torus_point(args.e1, real),
        e2=_torus_point(args.e2, real),
    )
    x = _torus_point(args.x, real)
    points = torus.orbit(fiber, x, args.depth)
    gens = torus.generators(fiber)
    if real:
        finite = False if any(g.irrational for g in gens) else None
    else:
        finite = True
    doc = {
        "size": len(points),
        "finite": finite,
        "generators": [
            [frac_str(g.x), frac_str(g.y)] if not real else [repr(float(g.x)), repr(float(g.y))]
            for g in gens
        ],
    }
    if real:
        doc["covering_radius"] = torus.covering_radius(points, args.grid)
    _emit_json(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hkcone",
        description="Exact wall-and-chamber computations on a Picard lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = add("classify", _cmd_classify, help="match a class against an orbit table")
    p.add_argument("--lattice", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--class", required=True, help='integer coordinates "a,b,c"')

    p = add("dual-solve", _cmd_dual_solve, help="solve for a class from intersection numbers")
    p.add_argument("--lattice", required=True)
    p.add_argument("--classes", help="JSON file of named classes")
    p.add_argument("--pair", action="append", required=True,
                   help='constraint "NAME=value"; repeatable')

    p = add("enumerate-walls", _cmd_enumerate, help="list wall classes near a base point")
    p.add_argument("--lattice", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--bound", required=True)

    p = add("factor-path", _cmd_factor_path, help="factor a segment into wall crossings")
    p.add_argument("--lattice", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--from", required=True, help='point file or inline "a,b,c"')
    p.add_argument("--to", required=True)
    p.add_argument("--bound", required=True)

    p = add("render-cone", _cmd_render, help="render the wall arrangement as SVG")
    p.add_argument("--lattice", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--bound", required=True)
    p.add_argument("--path", help="factor-path report JSON to overlay")
    p.add_argument("--mark", action="append", help='marker "a,b,c:LABEL"; repeatable')
    p.add_argument("--cusp", action="append", help='boundary class "a,b,c"; repeatable')

    p = add("mukai-flop", _cmd_mukai_flop, help="flop a point of the local model")
    p.add_argument("--k", type=int)
    p.add_argument("--u", required=True)
    p.add_argument("--phi", required=True)

    p = add("symp-rank", _cmd_symp_rank, help="rank of a symplectic form on a subspace")
    p.add_argument("--omega", required=True)
    p.add_argument("--basis", required=True)

    p = add("sigma-orbit", _cmd_sigma_orbit, help="orbit of the fiber correspondence")
    p.add_argument("--e0", required=True)
    p.add_argument("--e1", required=True)
    p.add_argument("--e2", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--real", action="store_true")
    p.add_argument("--grid", type=int, default=32)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PreconditionError as exc:
        print(f"hkcone: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"hkcone: {exc}", file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        print(f"hkcone: malformed input: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
