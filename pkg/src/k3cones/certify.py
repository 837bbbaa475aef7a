"""Embedded-mode wall certification: search a fixed ambient lattice for a
norm -2 vector projecting onto a wall's normal representative.

This is the ground-truth oracle for abstract wall enumeration. Negative
definite residual lattices are searched completely (so "refuted" is a
theorem); indefinite residuals are searched inside an explicit coordinate
box and exhaustion raises an inconclusive error rather than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import replace
from fractions import Fraction
from math import gcd, isqrt

from .cones import ConeError, Wall, _dual_vector
from .embeddings import Embedding, is_primitive, orthogonal_complement
from .numeric import (
    clear_denominators,
    kernel_int,
    mat_mul,
    mat_vec,
    solve_diophantine,
    solve_rational,
    symmetric_diagonalize,
    transpose,
)
from .roots import shifted_norm_solutions


class InconclusiveSearchError(ConeError):
    """The bounded residual search ended without witness or refutation."""


def _quad_value(gram, v) -> Fraction:
    n = len(gram)
    return sum(Fraction(v[i]) * gram[i][j] * Fraction(v[j])
               for i in range(n) for j in range(n))


def _signed_box(bound: int, dims: int):
    """Integer tuples ordered by max-norm then lexicographically, so small
    witnesses are found first and the order is deterministic."""
    ladder = [0]
    for k in range(1, bound + 1):
        ladder.extend((k, -k))
    for tup in sorted(itertools.product(ladder, repeat=dims),
                      key=lambda t: (max((abs(x) for x in t), default=0), t)):
        yield tup


def _indefinite_norm_witness(gram, shift, target, pos_bound):
    """One integer y with q(y + shift) == target for an indefinite Gram
    matrix, or None if the bounded slice search is exhausted.

    Each slice fixes the integer pairings with an integral positive-definite
    splitting; the residual per slice is negative definite and searched
    completely, so only the slice box is a bound.
    """
    d, t = symmetric_diagonalize(gram)
    ps = []
    for i, di in enumerate(d):
        if di > 0:
            ints, _ = clear_denominators(tuple(row[i] for row in t))
            ps.append(ints)
    gps = tuple(mat_vec(gram, p) for p in ps)       # integer functionals y . G p
    steps = [gcd(*(abs(x) for x in gp)) or 1 for gp in gps]
    shift = tuple(Fraction(x) for x in shift)
    w = kernel_int(gps)                             # negative definite residual
    wt = transpose(w)                               # columns = kernel basis
    gw = mat_mul(w, mat_mul(gram, wt)) if w else ()
    for ms in _signed_box(pos_bound, len(ps)):
        b = tuple(steps[i] * ms[i] for i in range(len(ps)))
        y0 = solve_diophantine(gps, b)
        if y0 is None:
            continue
        z0 = tuple(Fraction(a) + s for a, s in zip(y0, shift))
        if not w:
            if _quad_value(gram, z0) == target:
                return tuple(y0)
            continue
        cw = mat_vec(w, mat_vec(gram, z0))
        sigma = solve_rational(gw, cw)
        # q(z0 + W u) = q_W(u + sigma) + q(z0) - q_W(sigma)
        tau = Fraction(target) - _quad_value(gram, z0) + _quad_value(gw, sigma)
        sols = shifted_norm_solutions(gw, sigma, tau)
        if sols:
            wy = mat_vec(wt, sols[0])
            return tuple(a + b for a, b in zip(y0, wy))
    return None


def _norm_target_solutions(gram, shift, target, pos_bound):
    """(complete, solutions): definite residuals are searched completely."""
    d, _ = symmetric_diagonalize(gram)
    if all(x < 0 for x in d):
        return True, shifted_norm_solutions(gram, shift, target)
    if all(x > 0 for x in d):
        neg = tuple(tuple(-v for v in row) for row in gram)
        return True, shifted_norm_solutions(neg, shift, -Fraction(target))
    y = _indefinite_norm_witness(gram, shift, target, pos_bound)
    return False, ([] if y is None else [y])


def _representatives(wall: Wall):
    """Dual vectors on the wall's normal ray whose norm is admissible,
    the stored representative first."""
    l = wall.lattice
    mu = _dual_vector(l, wall.lam)
    mu_norm = _quad_value(l.gram, mu)
    kmax = isqrt(int(Fraction(2) / -mu_norm)) if mu_norm else 0
    reps = []
    for k in range(1, max(kmax, 1) + 1):
        nrm = k * k * mu_norm
        if nrm < -2:
            break
        reps.append((tuple(k * x for x in mu), nrm))
    stored = (tuple(wall.beta_lambda), wall.lambda_norm)
    reps.sort(key=lambda r: r != stored)
    return reps


def wall_realizability_embedded(e: Embedding, wall: Wall, pos_bound: int = 6) -> Wall:
    """Certify or refute a wall through an explicit primitive embedding.

    Searches the ambient lattice for a vector beta of norm -2 whose
    orthogonal projection to the embedded sublattice equals an admissible
    representative on the wall's normal ray. Returns the wall marked
    ``certified`` (with the witness, in ambient coordinates) or ``refuted``.
    Raises InconclusiveSearchError if an indefinite residual search exhausts
    its ``pos_bound`` box without an answer.
    """
    if not is_primitive(e):
        raise ConeError("embedded certification needs a primitive embedding")
    if e.ambient.is_degenerate():
        raise ConeError("ambient lattice must be nondegenerate")
    if wall.lattice.gram != e.domain.gram:
        raise ConeError("wall and embedding domains differ")
    dom, amb, m = e.domain, e.ambient, e.matrix
    pairing_rows = mat_mul(transpose(m), amb.gram)  # r x m integer
    comp = orthogonal_complement(e)
    n_cols = comp.columns()
    inconclusive = False
    for beta_lambda, nrm in _representatives(wall):
        if nrm == -2:
            # the perpendicular part would be a null vector of a definite
            # space, so the witness must be the (integral) vector itself
            if all(Fraction(x).denominator == 1 for x in beta_lambda):
                witness = e.image(tuple(int(x) for x in beta_lambda))
                return replace(wall, realizability="certified", witness=witness)
            continue
        target_vals = mat_vec(dom.gram, beta_lambda)
        if any(v.denominator != 1 for v in target_vals):
            continue
        x0 = solve_diophantine(pairing_rows, tuple(int(v) for v in target_vals))
        if x0 is None:
            continue
        if not n_cols:
            if amb.norm(x0) == -2:
                return replace(wall, realizability="certified", witness=tuple(x0))
            continue
        nmat = transpose(n_cols)  # ambient-rank x comp-rank
        gk = comp.domain.gram
        c = mat_vec(transpose(nmat), mat_vec(amb.gram, x0))
        s = solve_rational(gk, c)  # completion shift in residual coords
        tau = Fraction(-2) - Fraction(amb.norm(x0)) + _quad_value(gk, s)
        complete, sols = _norm_target_solutions(gk, s, tau, pos_bound)
        if sols:
            y = sols[0]
            witness = tuple(a + b for a, b in zip(x0, mat_vec(nmat, y)))
            assert amb.norm(witness) == -2
            return replace(wall, realizability="certified", witness=witness)
        if not complete:
            inconclusive = True
    if inconclusive:
        raise InconclusiveSearchError(
            f"no witness for wall lambda={wall.lam} within the bound "
            f"{pos_bound}; enlarge pos_bound for a definite answer")
    return replace(wall, realizability="refuted", witness=None)
