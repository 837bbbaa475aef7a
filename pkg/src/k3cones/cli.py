"""Command-line front end.

Exit codes: 0 success, 1 input/usage errors (prefix "input error:" or
"usage error:"), 2 domain errors (prefix "domain error:"). Output is
canonical JSON (sorted keys) unless text or svg is selected, and is
byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import jsonio
from .certify import InconclusiveSearchError, wall_realizability_embedded
from .cones import (
    IrrationalVector,
    dolgachev_comparison,
    fiber_cardinality,
    is_period_generic,
    locate_small_cone,
    rational_h,
    same_small_cone,
    small_cones_rank2,
    surd_h,
    very_irrational,
    wall_candidates_abstract,
)
from .embeddings import (
    embedding_from_json,
    embedding_to_json,
    is_primitive,
    orthogonal_complement,
    saturate,
)
from .lattices import (
    Lattice,
    LatticeError,
    determinant,
    discriminant_group,
    is_unimodular,
    lattice_from_json,
    lattice_to_json,
    make_ADE,
    make_E8,
    make_K3,
    make_pell,
    make_U,
    make_U_scaled,
    signature,
)
from .pell import isometry_report, orbit_count_rank2, pell_fundamental, pell_isometry
from .roots import ade_type, enumerate_roots, weyl_order
from .svg import render_fan_svg


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_BUILTIN = re.compile(
    r"^(U|K3|E8)$|^U\((\d+)\)$|^pell\((\d+),(\d+)\)$|^([ADE]\d+(\+[ADE]\d+)*)$")


def resolve_lattice(spec: str) -> Lattice:
    """A path to a lattice JSON file, or a builtin name like U, U(2), K3,
    E8, pell(1,2), A1+A2."""
    if os.path.exists(spec):
        try:
            with open(spec, encoding="utf-8") as fh:
                return lattice_from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as ex:
            raise InputError(f"cannot read lattice file {spec}: {ex}") from ex
    m = _BUILTIN.match(spec)
    if not m:
        raise InputError(f"no such file and not a builtin lattice: {spec!r}")
    if m.group(1) == "U":
        return make_U()
    if m.group(1) == "K3":
        return make_K3()
    if m.group(1) == "E8":
        return make_E8()
    if m.group(2):
        return make_U_scaled(int(m.group(2)))
    if m.group(3):
        return make_pell(int(m.group(3)), int(m.group(4)))
    return make_ADE(m.group(5))


def load_embedding(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return embedding_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as ex:
        raise InputError(f"cannot read embedding file {path}: {ex}") from ex


_COMPONENT = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\((?P<d>\d+)\))?\s*$")


def parse_h(text: str, lattice: Lattice) -> IrrationalVector:
    """Inline vector syntax: comma-separated components, each
    'p/q', 'p/q+r/s*sqrt(d)' or 'sqrt(d)' (one shared radical)."""
    parts = text.split(",")
    if len(parts) != lattice.rank:
        raise InputError(f"expected {lattice.rank} components, got {len(parts)}")
    rat, surd, d = [], [], None
    for part in parts:
        m = _COMPONENT.match(part)
        if not m or (m.group("a") is None and m.group("d") is None):
            raise InputError(f"cannot parse component {part!r}")
        rat.append(Fraction(m.group("a") or 0))
        if m.group("d") is not None:
            dd = int(m.group("d"))
            if d is not None and dd != d:
                raise InputError("components mix different radicals")
            d = dd
            coeff = Fraction(m.group("b") or 1)
            if m.group("sign") == "-":
                coeff = -coeff
            surd.append(coeff)
        else:
            surd.append(Fraction(0))
    if d is None:
        return rational_h(lattice, rat)
    return surd_h(lattice, rat, surd, d)


def load_h(args, lattice: Lattice, attr="h") -> IrrationalVector:
    inline = getattr(args, attr, None)
    path = getattr(args, f"{attr}_file", None)
    if (inline is None) == (path is None):
        raise UsageError(f"give exactly one of --{attr} or --{attr}-file")
    if inline is not None:
        return parse_h(inline, lattice)
    try:
        with open(path, encoding="utf-8") as fh:
            return jsonio.irrational_from_json(lattice, json.load(fh))
    except (OSError, json.JSONDecodeError) as ex:
        raise InputError(f"cannot read vector file {path}: {ex}") from ex


def parse_region(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        v1 = tuple(Fraction(x) for x in lo.split(","))
        v2 = tuple(Fraction(x) for x in hi.split(","))
    except ValueError as ex:
        raise InputError(f"bad region {text!r}; expected 'x1,y1:x2,y2'") from ex
    return (v1, v2)


def emit(args, payload: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args):
    l = resolve_lattice(args.lattice)
    p, q = signature(l)
    obj = {
        "label": l.label,
        "rank": l.rank,
        "signature": [p, q],
        "determinant": determinant(l),
        "even": True,
        "unimodular": is_unimodular(l) if not l.is_degenerate() else False,
        "degenerate": l.is_degenerate(),
        "discriminant_group": (
            list(discriminant_group(l)) if not l.is_degenerate() else None),
    }
    emit(args, jsonio.dumps_canonical(obj))


def cmd_roots(args):
    l = resolve_lattice(args.lattice)
    rs = enumerate_roots(l)
    emit(args, jsonio.dumps_canonical(
        {"count": len(rs), "roots": [list(r) for r in rs.roots]}))


def cmd_ade(args):
    l = resolve_lattice(args.lattice)
    t = ade_type(enumerate_roots(l))
    emit(args, jsonio.dumps_canonical({"ade": t.symbols()}))


def cmd_weyl_order(args):
    if args.ade:
        t = args.ade
        emit(args, jsonio.dumps_canonical(
            {"ade": t.split("+"), "order": weyl_order(t)}))
        return
    l = resolve_lattice(args.lattice)
    t = ade_type(enumerate_roots(l))
    emit(args, jsonio.dumps_canonical({"ade": t.symbols(), "order": weyl_order(t)}))


def cmd_fiber(args):
    l = resolve_lattice(args.lattice)
    t = ade_type(enumerate_roots(l))
    emit(args, jsonio.dumps_canonical({
        "ade": t.symbols(),
        "order": fiber_cardinality(l),
        "generic": is_period_generic(l),
    }))


def cmd_complement(args):
    e = load_embedding(args.embedding)
    emit(args, jsonio.dumps_canonical(embedding_to_json(orthogonal_complement(e))))


def cmd_primitive(args):
    e = load_embedding(args.embedding)
    prim = is_primitive(e)
    obj = {"primitive": prim}
    if not prim:
        obj["saturation"] = embedding_to_json(saturate(e))
    emit(args, jsonio.dumps_canonical(obj))


def cmd_walls(args):
    l = resolve_lattice(args.lattice)
    region = parse_region(args.region)
    walls = wall_candidates_abstract(l, region=region, bound=args.bound)
    if args.mode == "embedded":
        if not args.embedding:
            raise UsageError("embedded mode requires --embedding")
        e = load_embedding(args.embedding)
        walls = tuple(wall_realizability_embedded(e, w, pos_bound=args.pos_bound)
                      for w in walls)
    emit(args, jsonio.dumps_canonical(
        {"lattice": lattice_to_json(l),
         "walls": [jsonio.wall_to_json(w) for w in walls]}))


def _fan_for(args, l):
    if getattr(args, "fan", None):
        try:
            with open(args.fan, encoding="utf-8") as fh:
                return jsonio.fan_from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as ex:
            raise InputError(f"cannot read fan file {args.fan}: {ex}") from ex
    return small_cones_rank2(l, region=parse_region(getattr(args, "region", None)))


def cmd_fan(args):
    l = resolve_lattice(args.lattice)
    fan = small_cones_rank2(l, region=parse_region(args.region))
    if args.format == "svg":
        emit(args, render_fan_svg(fan))
    else:
        emit(args, jsonio.dumps_canonical(jsonio.fan_to_json(fan)))


def cmd_locate(args):
    l = resolve_lattice(args.lattice)
    fan = _fan_for(args, l)
    h = load_h(args, fan.lattice)
    idx = locate_small_cone(h, fan)
    emit(args, jsonio.dumps_canonical({"cone": idx, "cones": fan.cone_count}))


def cmd_same_cone(args):
    l = resolve_lattice(args.lattice)
    fan = _fan_for(args, l)
    h1 = load_h(args, fan.lattice, "h1")
    h2 = load_h(args, fan.lattice, "h2")
    emit(args, jsonio.dumps_canonical({"same": same_small_cone(h1, h2, fan)}))


def cmd_pell(args):
    u = pell_fundamental(args.d)
    obj = {"d": u.d, "x": u.x, "y": u.y}
    if args.n:
        l = make_pell(args.n, args.d)
        m = pell_isometry(l, u)
        obj["isometry"] = [list(r) for r in m]
        obj["report"] = {k: v for k, v in sorted(isometry_report(l, m).items())}
    emit(args, jsonio.dumps_canonical(obj))


def cmd_orbit_count(args):
    l = resolve_lattice(args.lattice)
    g = l.gram
    if l.rank != 2 or g[0][1] != 0 or g[0][0] <= 0 or g[1][1] >= 0:
        raise LatticeError("orbit-count expects a diag(2n,-2nd) Pell lattice")
    n = g[0][0] // 2
    d = -g[1][1] // g[0][0]
    u = pell_fundamental(d)
    gens = [pell_isometry(l, u)]
    if args.with_flip:
        gens.append(((1, 0), (0, -1)))
    base = None
    if args.base_ray:
        base = tuple(int(x) for x in args.base_ray.split(","))
    oc = orbit_count_rank2(l, gens, base_ray=base)
    emit(args, jsonio.dumps_canonical({
        "wall_orbits": oc.wall_orbits,
        "cone_orbits": oc.cone_orbits,
        "base_ray": list(oc.base_ray),
        "translated_base": list(oc.translated_base),
        "interval_walls": [jsonio.wall_to_json(w) for w in oc.interval_walls],
    }))


def cmd_irrational(args):
    l = resolve_lattice(args.lattice)
    h = load_h(args, l)
    emit(args, jsonio.dumps_canonical({"very_irrational": very_irrational(h)}))


def cmd_compare_dolgachev(args):
    l = resolve_lattice(args.lattice)
    fan = small_cones_rank2(l, region=parse_region(args.region))
    rep = dolgachev_comparison(l, fan)
    emit(args, jsonio.dumps_canonical(jsonio.comparison_to_json(rep)))


def build_parser() -> _Parser:
    p = _Parser(prog="k3cones", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write output to this path instead of stdout")
        return sp

    for name, fn in (("info", cmd_info), ("roots", cmd_roots), ("ade", cmd_ade),
                     ("fiber", cmd_fiber)):
        sp = add(name, fn)
        sp.add_argument("--lattice", required=True)

    sp = add("weyl-order", cmd_weyl_order)
    sp.add_argument("--lattice")
    sp.add_argument("--ade", help="direct ADE symbols, e.g. A1+D4")

    for name, fn in (("complement", cmd_complement), ("primitive", cmd_primitive)):
        sp = add(name, fn)
        sp.add_argument("--embedding", required=True)

    sp = add("walls", cmd_walls)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--mode", choices=("abstract", "embedded"), default="abstract")
    sp.add_argument("--embedding")
    sp.add_argument("--region", help="subcone as 'x1,y1:x2,y2'")
    sp.add_argument("--bound", type=int, help="functional coordinate box bound")
    sp.add_argument("--pos-bound", type=int, default=6,
                    help="indefinite residual slice bound (embedded mode)")

    sp = add("fan", cmd_fan)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--region")
    sp.add_argument("--format", choices=("json", "svg"), default="json")

    sp = add("locate", cmd_locate)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--fan", help="fan JSON produced by the fan subcommand")
    sp.add_argument("--region")
    sp.add_argument("--h")
    sp.add_argument("--h-file")

    sp = add("same-cone", cmd_same_cone)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--fan")
    sp.add_argument("--region")
    sp.add_argument("--h1")
    sp.add_argument("--h1-file")
    sp.add_argument("--h2")
    sp.add_argument("--h2-file")

    sp = add("pell", cmd_pell)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, help="also emit the isometry of pell(n,d)")

    sp = add("orbit-count", cmd_orbit_count)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--with-flip", action="store_true",
                    help="include the diag(1,-1) reflection generator")
    sp.add_argument("--base-ray", help="integer base ray 'x,y'")

    sp = add("irrational", cmd_irrational)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--h")
    sp.add_argument("--h-file")

    sp = add("compare-dolgachev", cmd_compare_dolgachev)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--region")
    return p


def run(argv) -> int:
    """Parse and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "weyl-order" and not (args.lattice or args.ade):
            raise UsageError("weyl-order needs --lattice or --ade")
        args.fn(args)
        return 0
    except UsageError as ex:
        print(f"usage error: {ex}", file=sys.stderr)
        return 1
    except InputError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 1
    except InconclusiveSearchError as ex:
        print(f"domain error: inconclusive: {ex}", file=sys.stderr)
        return 2
    except LatticeError as ex:
        print(f"domain error: {ex}", file=sys.stderr)
        return 2
    except OSError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
