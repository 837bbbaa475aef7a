"""Embeddings between lattices: primitivity, saturation, orthogonal
complements, spans with an extra vector, and rational projections."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattices import DegenerateLatticeError, Lattice, LatticeError
from .numeric import (
    IntMat,
    IntVec,
    RatVec,
    hnf,
    kernel_int,
    mat,
    mat_mul,
    mat_vec,
    rank_rational,
    snf,
    solve_rational,
    transpose,
    vec_dot,
)


class EmbeddingError(LatticeError):
    """Matrix does not realize the claimed embedding."""


class SpanContainsVectorError(LatticeError):
    """The adjoined vector already lies in the rational span of the image."""


@dataclass(frozen=True)
class Embedding:
    """An isometric embedding domain -> ambient.

    ``matrix`` has ambient-rank rows and domain-rank columns; column j is the
    image of the j-th domain basis vector. Gram compatibility and full column
    rank are checked eagerly: invalid embeddings cannot be constructed.
    """

    domain: Lattice
    ambient: Lattice
    matrix: IntMat

    def __post_init__(self):
        m = mat(self.matrix)
        if len(m) != self.ambient.rank or (m and len(m[0]) != self.domain.rank):
            raise EmbeddingError(
                f"matrix must be {self.ambient.rank}x{self.domain.rank}")
        if self.domain.rank and len(m) == 0:
            raise EmbeddingError("ambient rank 0 cannot contain a positive-rank lattice")
        induced = mat_mul(transpose(m), mat_mul(self.ambient.gram, m))
        if induced != self.domain.gram:
            raise EmbeddingError("matrix does not intertwine the Gram matrices")
        if self.domain.rank and rank_rational(m) != self.domain.rank:
            raise EmbeddingError("embedding matrix must have full column rank")
        object.__setattr__(self, "matrix", m)

    def image(self, v) -> IntVec:
        """Ambient coordinates of a domain vector."""
        self.domain.check_vector(v)
        return mat_vec(self.matrix, v)

    def columns(self) -> tuple[IntVec, ...]:
        return transpose(self.matrix)


def identity_embedding(l: Lattice) -> Embedding:
    from .numeric import identity

    return Embedding(l, l, identity(l.rank))


def sublattice_embedding(ambient: Lattice, basis_vectors) -> Embedding:
    """Embedding of the sublattice spanned by the given ambient vectors,
    with the induced Gram matrix as domain."""
    cols = tuple(ambient.check_vector(v) for v in basis_vectors)
    if cols:
        m = transpose(cols)
    else:
        m = tuple(() for _ in range(ambient.rank))  # rank-0 sublattice
    gram = tuple(tuple(ambient.inner(u, v) for v in cols) for u in cols)
    return Embedding(Lattice(gram), ambient, m)


def is_primitive(e: Embedding) -> bool:
    """True iff the cokernel of the embedding matrix is torsion-free
    (all Smith divisors equal 1)."""
    if e.domain.rank == 0:
        return True
    divisors, _, _ = snf(e.matrix)
    return all(d == 1 for d in divisors)


def saturate(e: Embedding) -> Embedding:
    """Embedding of the primitive closure: rational span of the image
    intersected with the ambient lattice. Canonical (HNF) basis."""
    if e.domain.rank == 0:
        return e
    k = e.domain.rank
    _, u, _ = snf(e.matrix)
    # image span = columns of U^-1 scaled by the divisors, so the saturation
    # is spanned by the first k columns of U^-1
    uinv_cols = _unimodular_inverse_columns(u)
    basis = hnf([uinv_cols[j] for j in range(k)])
    return sublattice_embedding(e.ambient, basis)


def _unimodular_inverse_columns(u: IntMat) -> tuple[IntVec, ...]:
    n = len(u)
    cols = []
    for j in range(n):
        rhs = tuple(1 if i == j else 0 for i in range(n))
        col = solve_rational(u, rhs)
        cols.append(tuple(int(x) for x in col))
    return tuple(cols)


def orthogonal_complement(e: Embedding) -> Embedding:
    """The full sublattice of ambient vectors pairing to zero with the image.
    Primitive by construction; basis rows in HNF for determinism."""
    if e.domain.rank and e.domain.is_degenerate():
        raise DegenerateLatticeError("orthogonal complement needs a nondegenerate domain")
    pairing = mat_mul(transpose(e.matrix), e.ambient.gram)  # k x m
    if e.domain.rank == 0:
        basis = tuple(tuple(r) for r in hnf(_identity_rows(e.ambient.rank)))
    else:
        basis = kernel_int(pairing)
    return sublattice_embedding(e.ambient, basis)


def _identity_rows(n: int) -> tuple[IntVec, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def span_with_vector(e: Embedding, beta) -> Lattice:
    """Gram of the lattice generated by the image and one extra ambient
    vector. Possibly degenerate; the caller classifies."""
    beta = e.ambient.check_vector(beta)
    if _in_rational_span(e.matrix, beta):
        raise SpanContainsVectorError("vector already lies in the rational span of the image")
    cols = e.columns() + (beta,)
    gram = tuple(tuple(e.ambient.inner(u, v) for v in cols) for u in cols)
    return Lattice(gram)


def _in_rational_span(m: IntMat, v: IntVec) -> bool:
    cols = transpose(m)
    if not cols:
        return all(x == 0 for x in v)
    return rank_rational(cols + (v,)) == rank_rational(cols)


def project_to_domain(e: Embedding, beta) -> RatVec:
    """Rational domain coordinates of the orthogonal projection of an
    ambient vector; an element of the dual of the domain."""
    if e.domain.rank == 0:
        return ()
    if e.domain.is_degenerate():
        raise DegenerateLatticeError("projection needs a nondegenerate domain")
    beta = e.ambient.check_vector(beta)
    rhs = tuple(vec_dot(col, mat_vec(e.ambient.gram, beta)) for col in e.columns())
    return solve_rational(e.domain.gram, rhs)


def perp_part_norm(e: Embedding, beta) -> Fraction:
    """Norm of beta minus its projection into the domain (exact rational)."""
    lam = project_to_domain(e, beta)
    lam_norm = sum(lam[i] * e.domain.gram[i][j] * lam[j]
                   for i in range(e.domain.rank) for j in range(e.domain.rank))
    return Fraction(e.ambient.norm(beta)) - lam_norm


# ---------------------------------------------------------------------------
# JSON: {"domain": <lattice>, "ambient": <lattice>, "matrix": [[int,...],...]}


def embedding_to_json(e: Embedding) -> dict:
    from .lattices import lattice_to_json

    return {
        "domain": lattice_to_json(e.domain),
        "ambient": lattice_to_json(e.ambient),
        "matrix": [list(r) for r in e.matrix],
    }


def embedding_from_json(obj) -> Embedding:
    from .lattices import lattice_from_json

    if not isinstance(obj, dict) or not {"domain", "ambient", "matrix"} <= set(obj):
        raise LatticeError("embedding JSON needs domain, ambient and matrix")
    return Embedding(
        lattice_from_json(obj["domain"]),
        lattice_from_json(obj["ambient"]),
        tuple(tuple(int(x) for x in r) for r in obj["matrix"]),
    )
