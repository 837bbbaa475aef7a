"""Even integral lattices as Gram matrices, standard constructors, invariants.

A lattice is its Gram matrix in a fixed basis; vectors are integer tuples in
that basis. Degenerate Gram matrices are representable (they occur transiently
when classifying spans) but operations that need nondegeneracy reject them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .numeric import (
    ExactError,
    IntMat,
    IntVec,
    RatVec,
    det_int,
    mat,
    mat_vec,
    snf,
    solve_rational,
    symmetric_diagonalize,
)


class LatticeError(ValueError):
    """Violated lattice-domain contract."""


class DegenerateLatticeError(LatticeError):
    """Operation requires a nondegenerate Gram matrix."""


@dataclass(frozen=True)
class Lattice:
    """Even integral lattice given by a symmetric Gram matrix.

    Diagonal entries must be even. Immutable; vectors are plain integer
    tuples of length ``rank``.
    """

    gram: IntMat
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = mat(self.gram)
        n = len(g)
        if any(len(r) != n for r in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            if any(not isinstance(x, int) for x in g[i]):
                raise LatticeError("Gram entries must be integers")
            if g[i][i] % 2:
                raise LatticeError("odd diagonal entry: lattice is not even")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def check_vector(self, v) -> IntVec:
        v = tuple(v)
        if len(v) != self.rank or any(not isinstance(x, int) for x in v):
            raise LatticeError(f"expected an integer vector of length {self.rank}")
        return v

    def inner(self, v, w):
        """Bilinear pairing of two vectors (integer for integer vectors)."""
        v, w = tuple(v), tuple(w)
        if len(v) != self.rank or len(w) != self.rank:
            raise LatticeError(f"vectors must have length {self.rank}")
        return sum(v[i] * self.gram[i][j] * w[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v):
        return self.inner(v, v)

    def is_degenerate(self) -> bool:
        return self.rank > 0 and det_int(self.gram) == 0

    def __repr__(self):
        name = self.label or f"rank-{self.rank} lattice"
        return f"Lattice({name})"


def inner(l: Lattice, v, w):
    return l.inner(v, w)


def norm(l: Lattice, v):
    return l.norm(v)


# ---------------------------------------------------------------------------
# constructors

# Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def make_U() -> Lattice:
    """The hyperbolic plane: Gram [[0,1],[1,0]]."""
    return Lattice(((0, 1), (1, 0)), label="U")


def make_U_scaled(n: int) -> Lattice:
    """U(n): two isotropic generators e, f with e.f = n."""
    if not isinstance(n, int) or n < 1:
        raise LatticeError("U(n) needs a positive integer n")
    return Lattice(((0, n), (n, 0)), label=f"U({n})")


def _negated_cartan(family: str, n: int) -> list[list[int]]:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j):
        g[i][j] = g[j][i] = 1

    if family == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif family == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif family == "E":
        for a, b in _E8_EDGES:
            if a <= n and b <= n:
                join(a - 1, b - 1)
    return g


def make_E8() -> Lattice:
    """Negative-definite E8: the negated Cartan matrix, Bourbaki numbering."""
    return Lattice(tuple(tuple(r) for r in _negated_cartan("E", 8)), label="E8")


def make_ADE(symbols) -> Lattice:
    """Direct sum of negated ADE Cartan lattices.

    ``symbols`` is an iterable of strings like "A1", "D4", "E7", or a single
    string joined by "+" ("A1+A2").
    """
    if isinstance(symbols, str):
        symbols = [s.strip() for s in symbols.split("+") if s.strip()]
    parsed = []
    for s in symbols:
        s = str(s).strip()
        fam, rank_txt = s[:1].upper(), s[1:]
        if fam not in "ADE" or not rank_txt.isdigit():
            raise LatticeError(f"malformed ADE symbol {s!r}")
        n = int(rank_txt)
        if fam == "A" and n < 1:
            raise LatticeError(f"A_n needs n >= 1, got {s!r}")
        if fam == "D" and n < 4:
            raise LatticeError(f"D_n needs n >= 4, got {s!r}")
        if fam == "E" and n not in (6, 7, 8):
            raise LatticeError(f"E_n needs n in 6,7,8, got {s!r}")
        parsed.append((fam, n))
    out = Lattice((), label="+".join(f"{f}{n}" for f, n in parsed) or "0")
    for fam, n in parsed:
        out = direct_sum(out, Lattice(tuple(tuple(r) for r in _negated_cartan(fam, n))))
    return Lattice(out.gram, label="+".join(f"{f}{n}" for f, n in parsed) or "0")


def make_K3() -> Lattice:
    """The K3 lattice: U + U + U + E8 + E8, even unimodular of signature (3,19)."""
    l = make_U()
    l = direct_sum(direct_sum(l, make_U()), make_U())
    l = direct_sum(direct_sum(l, make_E8()), make_E8())
    return Lattice(l.gram, label="K3")


def make_pell(n: int, d: int) -> Lattice:
    """The form 2n(x^2 - d y^2): Gram diag(2n, -2nd), d a non-square."""
    if not isinstance(n, int) or n < 1:
        raise LatticeError("make_pell needs a positive integer n")
    if not isinstance(d, int) or d < 2:
        raise LatticeError("make_pell needs an integer d >= 2")
    r = math.isqrt(d)
    if r * r == d:
        raise LatticeError(f"d = {d} is a perfect square")
    return Lattice(((2 * n, 0), (0, -2 * n * d)), label=f"Pell({n},{d})")


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    ra, rb = a.rank, b.rank
    g = [[0] * (ra + rb) for _ in range(ra + rb)]
    for i in range(ra):
        for j in range(ra):
            g[i][j] = a.gram[i][j]
    for i in range(rb):
        for j in range(rb):
            g[ra + i][ra + j] = b.gram[i][j]
    label = None
    if a.label and b.label:
        label = f"{a.label}+{b.label}"
    return Lattice(tuple(tuple(r) for r in g), label=label)


def adjoin_vector_gram(l: Lattice, pairings, nrm: int) -> Lattice:
    """Gram of the span of ``l`` and one extra vector given by its pairings
    with the basis and its self-intersection. May be degenerate."""
    p = tuple(int(x) for x in pairings)
    if len(p) != l.rank:
        raise LatticeError("pairings length must equal the rank")
    rows = [tuple(l.gram[i]) + (p[i],) for i in range(l.rank)]
    rows.append(p + (int(nrm),))
    return Lattice(tuple(rows))


# ---------------------------------------------------------------------------
# invariants


def signature(l: Lattice) -> tuple[int, int]:
    """(p, q) counts of positive/negative diagonal entries after exact
    congruence diagonalization; p + q < rank exactly when degenerate."""
    d, _ = symmetric_diagonalize(l.gram)
    p = sum(1 for x in d if x > 0)
    q = sum(1 for x in d if x < 0)
    return p, q


def determinant(l: Lattice) -> int:
    return det_int(l.gram)


def is_unimodular(l: Lattice) -> bool:
    return abs(determinant(l)) == 1


def is_negative_definite(l: Lattice) -> bool:
    p, q = signature(l)
    return p == 0 and q == l.rank


def is_hyperbolic(l: Lattice) -> bool:
    """Signature (1, rank-1), nondegenerate."""
    p, q = signature(l)
    return l.rank >= 1 and p == 1 and q == l.rank - 1


def discriminant_group(l: Lattice) -> tuple[int, ...]:
    """Invariant factors (> 1) of the discriminant group dual/lattice."""
    if l.rank == 0:
        return ()
    if l.is_degenerate():
        raise DegenerateLatticeError("discriminant group needs a nondegenerate lattice")
    divisors, _, _ = snf(l.gram)
    return tuple(d for d in divisors if d > 1)


def dual_coords(l: Lattice, values) -> RatVec:
    """The unique rational vector pairing to the given integers against the
    basis; the coordinates of an element of the dual lattice."""
    if l.rank == 0:
        return ()
    if l.is_degenerate():
        raise DegenerateLatticeError("dual coordinates need a nondegenerate lattice")
    vals = tuple(values)
    if len(vals) != l.rank:
        raise LatticeError("functional values must match the rank")
    return solve_rational(l.gram, vals)


def gram_values(l: Lattice, v) -> IntVec:
    """Pairing functional of v: the integer vector (v . basis_i)."""
    return mat_vec(l.gram, tuple(v))


# ---------------------------------------------------------------------------
# JSON format: {"label": str|null, "gram": [[int,...],...]}


def lattice_to_json(l: Lattice) -> dict:
    return {"label": l.label, "gram": [list(r) for r in l.gram]}


def lattice_from_json(obj) -> Lattice:
    if not isinstance(obj, dict) or "gram" not in obj:
        raise LatticeError("lattice JSON needs a 'gram' key")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise LatticeError("lattice label must be a string or null")
    gram = obj["gram"]
    if not isinstance(gram, list) or any(not isinstance(r, list) for r in gram):
        raise LatticeError("lattice gram must be a list of lists")
    return Lattice(tuple(tuple(int(x) for x in r) for r in gram), label=label)
