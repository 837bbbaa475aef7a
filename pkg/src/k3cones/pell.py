"""Pell units, the induced infinite-order lattice isometries, and counting
wall/small-cone orbits of anisotropic rank-2 lattices modulo isometries."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cones import (
    ConeError,
    Wall,
    cross2,
    exact_sign,
    classify_normal,
    positive_cone_vector,
    sort_walls,
    trace_ray_of_normal,
    wall_candidates_abstract,
    _with_trace,
)
from .lattices import Lattice, LatticeError, is_hyperbolic
from .numeric import IntMat, IntVec, mat_mul, mat_vec, transpose, vec_primitive


class IsometryError(LatticeError):
    """Supplied matrix is not a cone-preserving isometry."""


@dataclass(frozen=True)
class PellUnit:
    """A solution of x^2 - d y^2 = 1."""

    d: int
    x: int
    y: int

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != 1:
            raise ConeError(f"({self.x},{self.y}) does not solve x^2-{self.d}y^2=1")
        if self.x < 1 or self.y < 0:
            raise ConeError("expected the nonnegative solution representative")


def pell_fundamental(d: int) -> PellUnit:
    """Least positive solution of x^2 - d y^2 = 1 via the continued fraction
    of sqrt(d)."""
    if not isinstance(d, int) or d < 2:
        raise ConeError("Pell equation needs an integer d >= 2")
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ConeError(f"d = {d} is a perfect square")
    # convergents h/k of sqrt(d) = [a0; a1, a2, ...]
    m, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - d * k * k != 1:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellUnit(d, h, k)


def _pell_shape(l: Lattice) -> tuple[int, int]:
    g = l.gram
    if (l.rank != 2 or g[0][1] != 0 or g[0][0] <= 0 or g[0][0] % 2
            or g[1][1] >= 0 or g[1][1] % g[0][0]):
        raise ConeError("lattice is not of the diag(2n, -2nd) Pell shape")
    n = g[0][0] // 2
    d = -g[1][1] // g[0][0]
    if -2 * n * d != g[1][1]:
        raise ConeError("lattice is not of the diag(2n, -2nd) Pell shape")
    return n, d


def pell_isometry(l: Lattice, u: PellUnit) -> IntMat:
    """Matrix of multiplication by x + y*sqrt(d) on the basis identifying the
    lattice with Z[sqrt(d)]: [[x, d y], [y, x]]. Gram-preserving, determinant
    one, and preserving the positive cone component."""
    n, d = _pell_shape(l)
    if d != u.d:
        raise ConeError(f"unit is over sqrt({u.d}); lattice uses sqrt({d})")
    m = ((u.x, d * u.y), (u.y, u.x))
    rep = isometry_report(l, m)
    assert rep["gram_preserving"] and rep["cone_preserving"]
    return m


def isometry_report(l: Lattice, m: IntMat) -> dict:
    """Exact checks reported for a candidate isometry matrix."""
    g = l.gram
    gram_ok = mat_mul(transpose(m), mat_mul(g, m)) == g
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0] if l.rank == 2 else None
    cone_ok = None
    if gram_ok and l.rank == 2 and is_hyperbolic(l):
        w0 = positive_cone_vector(l)
        cone_ok = l.inner(mat_vec(m, w0), w0) > 0
    trace = sum(m[i][i] for i in range(len(m)))
    return {
        "gram_preserving": gram_ok,
        "determinant": det,
        "cone_preserving": cone_ok,
        "infinite_order": abs(trace) > 2 if l.rank == 2 else None,
    }


def _inverse_unimodular_2x2(m: IntMat) -> IntMat:
    a, b = m[0]
    c, d = m[1]
    det = a * d - b * c
    if det not in (1, -1):
        raise IsometryError("matrix is not unimodular")
    return ((det * d, -det * b), (-det * c, det * a))


def _apply(m: IntMat, v: IntVec) -> IntVec:
    return mat_vec(m, v)


@dataclass(frozen=True)
class OrbitCount:
    """Wall and small-cone orbit counts in the fundamental stretch of the
    translation subgroup, after identification by the residual generators."""

    wall_orbits: int
    cone_orbits: int
    interval_walls: tuple[Wall, ...]
    base_ray: IntVec
    translated_base: IntVec


def orbit_count_rank2(l: Lattice, generators, base_ray=None) -> OrbitCount:
    """Count wall orbits and small-cone orbits modulo the group generated by
    the given cone-preserving isometries.

    At least one generator must be of infinite order (a Pell translation u);
    walls are enumerated once in the compact closure of the fundamental
    interval [rho, u rho) and reduced there, so completeness is certified.
    Counts are upper bounds for orbits under the full isometry group when the
    generators span a proper subgroup.
    """
    if l.rank != 2 or not is_hyperbolic(l):
        raise ConeError("orbit counting needs a rank-2 hyperbolic lattice")
    gens = [tuple(tuple(int(x) for x in row) for row in g) for g in generators]
    for g in gens:
        rep = isometry_report(l, g)
        if not rep["gram_preserving"]:
            raise IsometryError(f"generator {g} does not preserve the Gram matrix")
        if not rep["cone_preserving"]:
            raise IsometryError(f"generator {g} swaps the positive cone components")
    trans = next((g for g in gens if abs(g[0][0] + g[1][1]) > 2), None)
    if trans is None:
        raise IsometryError("need at least one infinite-order (Pell) generator")
    w0 = positive_cone_vector(l)
    rho = vec_primitive(base_ray if base_ray is not None else w0)
    if l.norm(rho) <= 0 or l.inner(rho, w0) <= 0:
        raise ConeError("base ray must lie in the open positive cone")
    u = trans
    if exact_sign(cross2(rho, _apply(u, rho))) < 0:
        u = _inverse_unimodular_2x2(u)
    u_inv = _inverse_unimodular_2x2(u)
    u_rho = vec_primitive(_apply(u, rho))

    def canon(w: IntVec) -> IntVec:
        w = vec_primitive(w)
        if l.inner(w, w0) < 0:
            w = tuple(-x for x in w)
        return w

    def in_interval(w: IntVec) -> bool:
        return cross2(rho, w) >= 0 and cross2(w, u_rho) > 0

    def reduce_ray(w: IntVec) -> IntVec:
        w = canon(w)
        guard = 0
        while not in_interval(w):
            w = canon(_apply(u, w) if cross2(rho, w) < 0 else _apply(u_inv, w))
            guard += 1
            if guard > 10_000:
                raise IsometryError("translation reduction did not converge")
        return w

    walls = wall_candidates_abstract(l, region=(rho, u_rho))
    interval_walls = tuple(w for w in walls
                           if cross2(w.trace_ray, u_rho) != 0)  # half-open
    traces = [w.trace_ray for w in interval_walls]

    residual = []
    for g in gens:
        residual.append(g)
        residual.append(_inverse_unimodular_2x2(g))

    def orbit_partition(items, act):
        index = {it: i for i, it in enumerate(items)}
        seen: set = set()
        orbits = 0
        for it in items:
            if it in seen:
                continue
            orbits += 1
            stack = [it]
            while stack:
                cur = stack.pop()
                if cur in seen:
                    continue
                seen.add(cur)
                for g in residual:
                    img = act(g, cur)
                    if img not in index:
                        raise IsometryError(
                            "generator image left the certified wall set")
                    if img not in seen:
                        stack.append(img)
        return orbits

    wall_orbits = orbit_partition(traces, lambda g, w: reduce_ray(_apply(g, w)))

    if not traces:
        return OrbitCount(0, 1, interval_walls, rho, u_rho)

    # cones keyed by ordered adjacent trace pairs; the cone above the last
    # interval wall is bounded by the translate of the first one
    next_trace = {traces[i]: traces[i + 1] for i in range(len(traces) - 1)}
    next_trace[traces[-1]] = canon(_apply(u, traces[0]))

    def cone_key(pair):
        lo, hi = (canon(pair[0]), canon(pair[1]))
        if exact_sign(cross2(lo, hi)) < 0:
            lo, hi = hi, lo
        # translate the pair together so its lower ray lands in the interval
        steps = 0
        while not in_interval(lo):
            step = u if cross2(rho, lo) < 0 else u_inv
            lo = canon(_apply(step, lo))
            hi = canon(_apply(step, hi))
            steps += 1
            if steps > 10_000:
                raise IsometryError("translation reduction did not converge")
        return (lo, hi)

    cones = [cone_key((t, next_trace[t])) for t in traces]

    def cone_act(g, pair):
        return cone_key((_apply(g, pair[0]), _apply(g, pair[1])))

    cone_orbits = orbit_partition(cones, cone_act)
    return OrbitCount(wall_orbits, cone_orbits, interval_walls, rho, u_rho)


def translate_wall(l: Lattice, wall: Wall, m: IntMat) -> Wall:
    """Image of a wall under a Gram-preserving, cone-preserving isometry."""
    rep = isometry_report(l, m)
    if not rep["gram_preserving"]:
        raise IsometryError("matrix does not preserve the Gram matrix")
    minv_t = transpose(_inverse_unimodular_2x2(m)) if l.rank == 2 else None
    if minv_t is None:
        raise ConeError("wall translation implemented for rank 2")
    new_lam = vec_primitive(mat_vec(minv_t, wall.lam))
    out = classify_normal(l, new_lam)
    if out is None:
        raise IsometryError("isometry image failed the wall conditions")
    return _with_trace(l, out, positive_cone_vector(l))
