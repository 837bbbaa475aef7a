"""Canonical JSON (de)serialization for lattices, embeddings, walls, fans and
vectors. Rationals travel as strings "p/q" so nothing is ever rounded."""

from __future__ import annotations

import json
from fractions import Fraction

from .cones import (
    ChamberComparison,
    ConeError,
    IrrationalVector,
    SmallConeFan,
    Wall,
    classify_normal,
    null_boundary_rays,
    positive_cone_vector,
    sort_walls,
    _with_trace,
)
from .lattices import Lattice, LatticeError, lattice_from_json, lattice_to_json
from .numeric import QuadraticSurd


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def coord_to_json(c):
    if isinstance(c, QuadraticSurd):
        if c.b == 0:
            return frac_str(c.a)
        return {"a": frac_str(c.a), "b": frac_str(c.b), "d": c.d}
    return frac_str(c)


def coord_from_json(obj):
    if isinstance(obj, dict):
        return QuadraticSurd(parse_frac(obj["a"]), parse_frac(obj["b"]), int(obj["d"]))
    return parse_frac(obj)


def wall_to_json(w: Wall) -> dict:
    return {
        "lambda": list(w.lam),
        "norm": frac_str(w.lambda_norm),
        "beta_lambda": [frac_str(x) for x in w.beta_lambda],
        "source": w.source,
        "realizability": w.realizability,
        "ray": list(w.trace_ray) if w.trace_ray is not None else None,
        "witness": list(w.witness) if w.witness is not None else None,
    }


def wall_from_json(l: Lattice, obj) -> Wall:
    w = Wall(
        l,
        tuple(int(x) for x in obj["lambda"]),
        parse_frac(obj["norm"]),
        tuple(parse_frac(x) for x in obj["beta_lambda"]),
        obj["source"],
        obj.get("realizability", "assumed"),
        tuple(int(x) for x in obj["witness"]) if obj.get("witness") else None,
        tuple(int(x) for x in obj["ray"]) if obj.get("ray") else None,
    )
    return w


def fan_to_json(fan: SmallConeFan) -> dict:
    return {
        "lattice": lattice_to_json(fan.lattice),
        "region": [list(r) for r in fan.region] if fan.region else None,
        "rays": [
            {"coords": [coord_to_json(c) for c in r["coords"]],
             "kind": r["kind"], "norm": frac_str(r["norm"])}
            for r in fan.rays()
        ],
        "walls": [wall_to_json(w) for w in fan.walls],
        "cones": fan.cone_count,
    }


def fan_from_json(obj) -> SmallConeFan:
    l = lattice_from_json(obj["lattice"])
    region = None
    if obj.get("region"):
        region = tuple(tuple(int(x) for x in r) for r in obj["region"])
    walls = []
    w0 = positive_cone_vector(l)
    for wj in obj.get("walls", ()):
        lam = tuple(int(x) for x in wj["lambda"])
        w = classify_normal(l, lam)
        if w is None:
            raise ConeError(f"serialized wall lambda={lam} fails the wall conditions")
        w = _with_trace(l, w, w0)
        stored = wall_from_json(l, wj)
        if (w.lam, w.lambda_norm, w.source) != (stored.lam, stored.lambda_norm, stored.source):
            raise ConeError(f"serialized wall lambda={lam} is inconsistent")
        walls.append(Wall(l, w.lam, w.lambda_norm, w.beta_lambda, w.source,
                          stored.realizability, stored.witness, w.trace_ray))
    return SmallConeFan(l, null_boundary_rays(l), sort_walls(l, walls), region)


def irrational_to_json(h: IrrationalVector) -> dict:
    return {
        "columns": [[frac_str(x) for x in col] for col in h.columns],
        "omega_tags": list(h.omega_tags),
        "omega_values": (
            None if h.omega_values is None
            else [coord_to_json(v) for v in h.omega_values]),
    }


def irrational_from_json(l: Lattice, obj) -> IrrationalVector:
    cols = tuple(tuple(parse_frac(x) for x in col) for col in obj["columns"])
    tags = tuple(obj.get("omega_tags") or ())
    vals = obj.get("omega_values")
    if vals is not None:
        vals = tuple(coord_from_json(v) for v in vals)
        for v in vals:
            if not isinstance(v, QuadraticSurd):
                raise ConeError("omega values must be surd objects")
    return IrrationalVector(l, cols, tags or (), vals)


def comparison_to_json(rep: ChamberComparison) -> dict:
    return {
        "chambers": rep.chamber_count,
        "small_cones": rep.small_cone_count,
        "external_by_chamber": [
            [wall_to_json(w) for w in group] for group in rep.external_by_chamber
        ],
    }


def dumps_canonical(obj) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
